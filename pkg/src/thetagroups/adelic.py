"""Lattice model of torsion points, supports and the adelic commutator pairing.

An abelian variety of dimension g is modelled by the lattice Z^{2g}; a class
in NS is an alternating integer matrix E on it.  A compatible system of
torsion points is represented by a rational vector v, its level-n component
being x_n = v/n mod Z^{2g}.  At level n the theta group of n*L has base
{u : n^2 E u integral} / Z^{2g} with commutator pairing n^2 E(u, u') mod 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .abelian import FinAbGroup, smith_normal_form
from .errors import ContractViolation, ExcludedLevel, InvalidArgument, InvalidForm, InvalidInput
from .roots import QmodZ, lcm
from .skew import SkewForm, is_nondegenerate


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


def _den(vec) -> int:
    d = 1
    for c in vec:
        d = lcm(d, Fraction(c).denominator)
    return d


def _is_integral(vec) -> bool:
    return all(Fraction(c).denominator == 1 for c in vec)


class TorsionModel:
    """Torsion of order in I = {n >= 1 : p does not divide n}; p = 0 means no exclusion."""

    def __init__(self, g: int, excluded_prime: int = 0):
        if g < 1:
            raise InvalidArgument("dimension must be positive")
        if excluded_prime < 0 or excluded_prime == 1:
            raise InvalidArgument("excluded prime must be 0 or a prime")
        self.g = g
        self.excluded_prime = excluded_prime

    def in_levels(self, n: int) -> bool:
        p = self.excluded_prime
        return n >= 1 and (p == 0 or n % p != 0)

    def check_point(self, x: "AdelePoint"):
        if len(x.v) != 2 * self.g:
            raise InvalidArgument(f"point has {len(x.v)} coordinates, expected {2 * self.g}")
        if not self.in_levels(x.order):
            raise ExcludedLevel(f"denominator {x.order} is divisible by {self.excluded_prime}")
        return x


@dataclass(frozen=True)
class AdelePoint:
    """The compatible system x_n = v/n mod Z^{2g}."""

    v: tuple

    def __init__(self, v):
        object.__setattr__(self, "v", tuple(_frac(c) for c in v))

    @property
    def order(self) -> int:
        """Order of x_1 = v mod Z^{2g}."""
        return _den(self.v)

    def component(self, n: int) -> tuple:
        """x_n with coordinates reduced into [0, 1)."""
        return tuple((c / n) % 1 for c in self.v)

    def in_T(self) -> bool:
        return _is_integral(self.v)

    def __add__(self, other):
        return AdelePoint(a + b for a, b in zip(self.v, other.v))

    def __neg__(self):
        return AdelePoint(-a for a in self.v)

    def scale(self, k) -> "AdelePoint":
        return AdelePoint(k * a for a in self.v)

    def to_json(self) -> dict:
        return {"v": [str(c) for c in self.v]}

    @classmethod
    def from_json(cls, data) -> "AdelePoint":
        return cls(data["v"] if isinstance(data, dict) else data)


class NSForm:
    """Alternating integer matrix E on Z^{2g}."""

    def __init__(self, E, excluded_prime: int = 0):
        E = tuple(tuple(int(c) for c in row) for row in E)
        m = len(E)
        if m == 0 or m % 2 or any(len(row) != m for row in E):
            raise InvalidForm("NS form must be a square matrix of even size")
        for i in range(m):
            if E[i][i]:
                raise InvalidForm(f"diagonal entry {i} is nonzero")
            for j in range(i):
                if E[i][j] != -E[j][i]:
                    raise InvalidForm(f"entries ({i},{j}) and ({j},{i}) are not negatives")
        self.E = E
        self.model = TorsionModel(m // 2, excluded_prime)

    @property
    def g(self) -> int:
        return self.model.g

    @property
    def size(self) -> int:
        return len(self.E)

    def __eq__(self, other):
        return isinstance(other, NSForm) and self.E == other.E

    def __hash__(self):
        return hash(self.E)

    def __add__(self, other: "NSForm") -> "NSForm":
        return NSForm([[a + b for a, b in zip(r, s)] for r, s in zip(self.E, other.E)], self.model.excluded_prime)

    def scale(self, k: int) -> "NSForm":
        return NSForm([[k * a for a in r] for r in self.E], self.model.excluded_prime)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.E)

    def apply(self, v) -> tuple:
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.E)

    def value(self, v, w) -> Fraction:
        """E(v, w) = v^T E w as an exact rational."""
        return sum((a * b for a, b in zip(v, self.apply(w))), Fraction(0))

    def determinant(self) -> int:
        return _det([list(r) for r in self.E])

    def to_json(self) -> dict:
        return {"g": self.g, "E": [list(r) for r in self.E], "excluded_prime": self.model.excluded_prime}

    @classmethod
    def from_json(cls, data) -> "NSForm":
        form = cls(data["E"], int(data.get("excluded_prime", 0)))
        if "g" in data and int(data["g"]) != form.g:
            raise InvalidForm(f"g = {data['g']} does not match a {form.size}x{form.size} matrix")
        return form

    def __repr__(self):
        return f"NSForm({[list(r) for r in self.E]})"


def principal_form(g: int) -> NSForm:
    """The standard unimodular form with blocks [[0, 1], [-1, 0]]."""
    E = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        E[2 * i][2 * i + 1] = 1
        E[2 * i + 1][2 * i] = -1
    return NSForm(E)


def _det(M) -> int:
    """Integer determinant by fraction-free elimination (Bareiss)."""
    n = len(M)
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1] if n else 1


# -- support and pairing -------------------------------------------------------------


def _dens(vec) -> list:
    return [Fraction(c).denominator for c in vec]


def supp(E: NSForm, x: AdelePoint, bound: int) -> list:
    """Levels n <= bound in I with x_n in K(n*L), i.e. n * E v integral."""
    if bound < 1:
        raise InvalidArgument("bound must be at least 1")
    dens = _dens(E.apply(x.v))
    return [n for n in range(1, bound + 1) if E.model.in_levels(n) and all(n % d == 0 for d in dens)]


def support_step(E: NSForm, x: AdelePoint) -> int:
    """Least n with n * E v integral; supp is the set of its multiples in I."""
    return _den(E.apply(x.v))


def joint_levels(E: NSForm, x: AdelePoint, y: AdelePoint, count: int = 2) -> list:
    """The ``count`` smallest members of supp(x) and supp(y) together."""
    m = lcm(support_step(E, x), support_step(E, y))
    out = []
    k = 1
    while len(out) < count:
        if E.model.in_levels(k * m):
            out.append(k * m)
        k += 1
    # confirm against the definition, level by level
    dens = _dens(E.apply(x.v)) + _dens(E.apply(y.v))
    both = [n for n in range(1, out[-1] + 1) if E.model.in_levels(n) and all(n % d == 0 for d in dens)]
    if both[:count] != out:
        raise ContractViolation("joint support differs from multiples of the support step")
    return out


def level_value(E: NSForm, x: AdelePoint, y: AdelePoint, p: int) -> QmodZ:
    """p^2 E(x_p, y_p) mod 1 with reduced lifts of the level-p components."""
    v = E.value(x.component(p), y.component(p)) * p * p
    return QmodZ(v)


@dataclass(frozen=True)
class PairingValue:
    value: QmodZ
    levels: tuple


def adelic_pairing_levels(E: NSForm, x: AdelePoint, y: AdelePoint) -> PairingValue:
    """Pairing evaluated at the two smallest joint levels, checked to agree."""
    for pt in (x, y):
        E.model.check_point(pt)
    levels = joint_levels(E, x, y, 2)
    vals = [level_value(E, x, y, p) for p in levels]
    if vals[0] != vals[1]:
        raise ContractViolation(f"levels {levels} give different values {vals}")
    if vals[0] != QmodZ(E.value(x.v, y.v)):
        raise ContractViolation("level value differs from E(v, w)")
    return PairingValue(vals[0], tuple(levels))


def adelic_pairing(E: NSForm, x: AdelePoint, y: AdelePoint) -> QmodZ:
    return adelic_pairing_levels(E, x, y).value


# -- classes in H^2 --------------------------------------------------------------------


class PairingClass:
    """The class of an NS form in H^2(V; mu), represented by its pairing."""

    def __init__(self, E: NSForm):
        self.form = E

    def pairing(self, x: AdelePoint, y: AdelePoint) -> QmodZ:
        return adelic_pairing(self.form, x, y)

    def probes(self):
        """Points (e_i / q, e_j): their pairings E_ij / q pin down E when q > 2 max |E|."""
        m = self.form.size
        q = 2 * max((abs(c) for r in self.form.E for c in r), default=0) + 1
        basis = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
        for i in range(m):
            for j in range(m):
                yield AdelePoint([c / q for c in basis[i]]), AdelePoint(basis[j])

    def __eq__(self, other):
        if not isinstance(other, PairingClass) or other.form.size != self.form.size:
            return NotImplemented
        q_self = 2 * max((abs(c) for r in self.form.E for c in r), default=0) + 1
        q_other = 2 * max((abs(c) for r in other.form.E for c in r), default=0) + 1
        probe_class = self if q_self >= q_other else other
        return all(self.pairing(x, y) == other.pairing(x, y) for x, y in probe_class.probes())

    __hash__ = None

    def __add__(self, other: "PairingClass") -> "PairingClass":
        return PairingClass(self.form + other.form)

    def is_trivial(self) -> bool:
        return all(not self.pairing(x, y) for x, y in self.probes())


def ns_to_h2(E: NSForm) -> PairingClass:
    if not isinstance(E, NSForm):
        E = NSForm(E)
    return PairingClass(E)


def injectivity_witness(E: NSForm, max_den: int = 64):
    """Basis points (e_i/n, e_j/n) with nonzero pairing, or None when E = 0."""
    if E.is_zero():
        return None
    m = E.size
    for n in range(2, max_den + 1):
        if not E.model.in_levels(n):
            continue
        for i in range(m):
            for j in range(i + 1, m):
                if E.E[i][j] % (n * n) == 0:
                    continue
                x = AdelePoint([Fraction(int(k == i), n) for k in range(m)])
                y = AdelePoint([Fraction(int(k == j), n) for k in range(m)])
                if adelic_pairing(E, x, y):
                    return x, y
    raise ContractViolation("nonzero form without a witness below the search bound")


def pullback(F, E: NSForm) -> NSForm:
    """F^T E F for an integral 2g x 2g' matrix F."""
    F = [[int(c) for c in row] for row in F]
    if len(F) != E.size or not F or any(len(r) != len(F[0]) for r in F) or len(F[0]) % 2:
        raise InvalidArgument(f"expected an integral {E.size} x 2g' matrix")
    cols = len(F[0])
    EF = [[sum(E.E[i][k] * F[k][j] for k in range(E.size)) for j in range(cols)] for i in range(E.size)]
    out = [[sum(F[k][i] * EF[k][j] for k in range(E.size)) for j in range(cols)] for i in range(cols)]
    return NSForm(out, E.model.excluded_prime)


def push_point(F, x: AdelePoint) -> AdelePoint:
    """Image of a point under the homomorphism given by F (v -> F v)."""
    return AdelePoint(sum((int(a) * b for a, b in zip(row, x.v)), Fraction(0)) for row in F)


# -- Weil relation -------------------------------------------------------------------


@dataclass(frozen=True)
class WeilRelation:
    weil_route: QmodZ  # n E(x, y): the n-Weil pairing of x with phi_L(y)
    commutator_route: QmodZ  # n^2 E(x, z) with n z = y: commutator at level n

    @property
    def holds(self) -> bool:
        return self.weil_route == self.commutator_route


def weil_relation_check(E: NSForm, n: int, x, y, z=None) -> WeilRelation:
    """Compare e_n(x, phi_L(y)) with the level-n commutator [x, z], n z = y."""
    x = x if isinstance(x, AdelePoint) else AdelePoint(x)
    y = y if isinstance(y, AdelePoint) else AdelePoint(y)
    if n < 1 or not E.model.in_levels(n):
        raise ExcludedLevel(f"level {n} is not in I")
    if not _is_integral(n * c for c in x.v):
        raise InvalidInput("x is not n-torsion")
    if not _is_integral(n * c for c in E.apply(y.v)):
        raise InvalidInput("phi_L(y) is not n-torsion")
    if z is None:
        z = y.scale(Fraction(1, n))
    else:
        z = z if isinstance(z, AdelePoint) else AdelePoint(z)
        if not _is_integral(n * a - b for a, b in zip(z.v, y.v)):
            raise InvalidInput("n z is not y")
    a = QmodZ(n * E.value(x.v, y.v))
    b = QmodZ(n * n * E.value(x.v, z.v))
    return WeilRelation(a, b)


# -- finite levels -------------------------------------------------------------------


def _rational_inverse(M) -> list:
    n = len(M)
    A = [[Fraction(c) for c in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c])
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [a / piv for a in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [row[n:] for row in A]


@dataclass
class LevelTheta:
    """Base of the level-n theta group with its commutator form."""

    ns: NSForm
    n: int
    group: FinAbGroup
    form: SkewForm
    generators: list  # rational vectors u_i = R e_i / D_i
    _rinv: list
    _divs: list

    def coords(self, u) -> tuple:
        """Group element of the class of a rational vector u with n^2 E u integral."""
        u = [_frac(c) for c in u]
        t = [sum((a * b for a, b in zip(row, u)), Fraction(0)) for row in self._rinv]
        out = []
        for i, d in enumerate(self._divs):
            k = t[i] * d
            if k.denominator != 1:
                raise InvalidInput(f"{u} is not in the level-{self.n} group")
            if d > 1:
                out.append(int(k) % d)
        return tuple(out)


def level_theta_group(E: NSForm, n: int) -> LevelTheta:
    if not E.model.in_levels(n):
        raise ExcludedLevel(f"level {n} is not in I")
    M = [[n * n * c for c in row] for row in E.E]
    det = _det(M)
    if det == 0:
        raise InvalidForm("degenerate NS form has an infinite level group")
    D, _, _, R = smith_normal_form(M)
    size = len(M)
    keep = [i for i in range(size) if D[i] > 1]
    gens = [[Fraction(R[r][i], D[i]) for r in range(size)] for i in keep]
    group = FinAbGroup([D[i] for i in keep])
    gram = [[QmodZ(n * n * E.value(a, b)) for b in gens] for a in gens]
    form = SkewForm(group, gram)
    if group.order != abs(det):
        raise ContractViolation(f"level group has order {group.order}, expected |det| = {abs(det)}")
    if group.order <= 4096 and not is_nondegenerate(form):
        raise ContractViolation("level form is degenerate")
    return LevelTheta(E, n, group, form, gens, _rational_inverse(R), list(D))


# -- random inputs ----------------------------------------------------------------------


def random_ns_form(rng: random.Random, g: int, bound: int = 5, excluded_prime: int = 0) -> NSForm:
    m = 2 * g
    E = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            c = rng.randint(-bound, bound)
            E[i][j], E[j][i] = c, -c
    return NSForm(E, excluded_prime)


def random_point(rng: random.Random, g: int, max_den: int = 12, excluded_prime: int = 0) -> AdelePoint:
    model = TorsionModel(g, excluded_prime)
    out = []
    for _ in range(2 * g):
        while True:
            d = rng.randint(1, max_den)
            if model.in_levels(d):
                break
        out.append(Fraction(rng.randint(-2 * d, 2 * d), d))
    return AdelePoint(out)


def random_integral_matrix(rng: random.Random, rows: int, cols: int, bound: int = 3) -> list:
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


__all__ = [
    "AdelePoint",
    "LevelTheta",
    "NSForm",
    "PairingClass",
    "PairingValue",
    "TorsionModel",
    "WeilRelation",
    "adelic_pairing",
    "adelic_pairing_levels",
    "injectivity_witness",
    "joint_levels",
    "level_theta_group",
    "level_value",
    "ns_to_h2",
    "principal_form",
    "pullback",
    "push_point",
    "random_integral_matrix",
    "random_ns_form",
    "random_point",
    "supp",
    "support_step",
    "weil_relation_check",
]
