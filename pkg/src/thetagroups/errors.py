"""Exception hierarchy shared by every module of the package."""


class ThetaError(Exception):
    """Base class for all errors raised by thetagroups."""


class MalformedElement(ThetaError, ValueError):
    pass


class InvalidArgument(ThetaError, ValueError):
    pass


class DegenerateForm(ThetaError):
    """Raised when a construction needs a nondegenerate form.

    The radical (as a list of group elements) is attached so callers can
    report it or quotient by it.
    """

    def __init__(self, message, radical=None):
        super().__init__(message)
        self.radical = radical


class Obstruction(ThetaError):
    """A subgroup is not isotropic, so no level subgroup lies over it."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ContractViolation(ThetaError, AssertionError):
    """An internal consistency check failed."""


class InvalidCharacter(ThetaError, ValueError):
    pass


class NotHomogeneous(ThetaError, ValueError):
    """A module mixes several weights where one weight was required."""


class InvalidModule(ThetaError, ValueError):
    pass


class InvalidForm(ThetaError, ValueError):
    pass


class ExcludedLevel(ThetaError, ValueError):
    """A level or denominator is divisible by the excluded prime."""


class InvalidInput(ThetaError, ValueError):
    pass


class SizeError(ThetaError):
    """A computation would exceed a configured size cap."""
