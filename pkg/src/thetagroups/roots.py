"""Exact roots of unity and cyclotomic numbers.

Roots of unity are written additively as elements of Q/Z: the class of
``a/b`` stands for ``exp(2*pi*i*a/b)``.  Cyclotomic numbers live in
Q(zeta_N) and are stored as integer numerators over a common positive
denominator, reduced modulo the N-th cyclotomic polynomial, so equality is
plain coefficient equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import InvalidArgument


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


class QmodZ:
    """A rational number modulo 1, kept as a reduced fraction in [0, 1)."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den: int = 1):
        if type(num) is not int:
            if isinstance(num, QmodZ):
                num, den = num.num, num.den
            elif isinstance(num, Fraction):
                num, den = num.numerator, num.denominator * den
        if den == 0:
            raise InvalidArgument("zero denominator")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        if num == 0:
            den = 1
        elif g > 1:
            num //= g
            den //= g
        self.num = num
        self.den = den

    @classmethod
    def parse(cls, text) -> "QmodZ":
        if isinstance(text, QmodZ):
            return text
        if isinstance(text, int):
            return cls(text)
        return cls(Fraction(str(text)))

    def __add__(self, other):
        if isinstance(other, int):
            return self
        return QmodZ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return QmodZ(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return QmodZ(-self.num, self.den)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return QmodZ(self.num * n, self.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return other == 0 and self.num == 0
        if not isinstance(other, QmodZ):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __lt__(self, other):
        return (self.num * other.den) < (other.num * self.den)

    def __bool__(self):
        return self.num != 0

    @property
    def order(self) -> int:
        """Multiplicative order of the corresponding root of unity."""
        return self.den

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self):
        return "0" if self.num == 0 else f"{self.num}/{self.den}"

    def __repr__(self):
        return f"QmodZ({self.num}, {self.den})"


ZERO = QmodZ(0)


def qmz_add(x: QmodZ, y: QmodZ) -> QmodZ:
    return x + y


def nth_root(x: QmodZ, n: int) -> QmodZ:
    """Canonical y with n*y == x: the representative a/(n*b)."""
    if n < 1:
        raise InvalidArgument(f"nth_root needs n >= 1, got {n}")
    return QmodZ(x.num, x.den * n)


# -- cyclotomic fields ------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients (constant term first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise InvalidArgument("cyclotomic level must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_exact_div(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    assert not any(a), "inexact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def _field(n: int):
    """(phi, power table) where table[k] is x^k reduced mod Phi_n, k < n."""
    phi_poly = cyclotomic_poly(n)
    phi = len(phi_poly) - 1
    table = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(n):
        table.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi_poly[:-1])]
    return phi, tuple(table)


def euler_phi(n: int) -> int:
    return _field(n)[0]


class CycNumber:
    """Element of the N-th cyclotomic field Q(zeta_N)."""

    __slots__ = ("level", "nums", "den")

    def __init__(self, level: int, nums, den: int = 1, _reduced=False):
        self.level = level
        if not _reduced:
            nums = list(nums)
            phi = _field(level)[0]
            if len(nums) != phi:
                raise InvalidArgument(f"need {phi} coefficients at level {level}")
            if den < 0:
                nums, den = [-c for c in nums], -den
            g = den
            for c in nums:
                g = gcd(g, c)
            if g > 1:
                nums = [c // g for c in nums]
                den //= g
            if not any(nums):
                den = 1
            nums = tuple(nums)
        self.level = level
        self.nums = nums
        self.den = den

    # constructors
    @classmethod
    def zero(cls, level: int) -> "CycNumber":
        return cls(level, (0,) * _field(level)[0], 1, True)

    @classmethod
    def one(cls, level: int) -> "CycNumber":
        return cls.root(0, level)

    @classmethod
    def rational(cls, value, level: int) -> "CycNumber":
        value = Fraction(value)
        phi = _field(level)[0]
        return cls(level, (value.numerator,) + (0,) * (phi - 1), value.denominator)

    @classmethod
    def root(cls, k: int, level: int) -> "CycNumber":
        """zeta_level ** k."""
        return cls(level, _field(level)[1][k % level], 1, True)

    @classmethod
    def from_qmodz(cls, q: QmodZ, level: int) -> "CycNumber":
        if level % q.den:
            raise InvalidArgument(f"{q} is not a root of unity of order dividing {level}")
        return cls.root(q.num * (level // q.den), level)

    @classmethod
    def from_roots(cls, phases, level: int) -> "CycNumber":
        """Sum of the roots of unity named by an iterable of QmodZ."""
        phi, table = _field(level)
        acc = [0] * phi
        for q in phases:
            if level % q.den:
                raise InvalidArgument(f"{q} has order not dividing {level}")
            row = table[q.num * (level // q.den)]
            for i, c in enumerate(row):
                if c:
                    acc[i] += c
        return cls(level, tuple(acc), 1)

    # arithmetic
    def relevel(self, level: int) -> "CycNumber":
        if level == self.level:
            return self
        if level % self.level:
            raise InvalidArgument(f"cannot move level {self.level} into level {level}")
        step = level // self.level
        phi, table = _field(level)
        acc = [0] * phi
        for i, c in enumerate(self.nums):
            if c:
                for j, t in enumerate(table[i * step]):
                    if t:
                        acc[j] += c * t
        return CycNumber(level, acc, self.den)

    def _common(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNumber.rational(other, self.level)
        if other.level != self.level:
            m = lcm(self.level, other.level)
            return self.relevel(m), other.relevel(m)
        return self, other

    def __add__(self, other):
        a, b = self._common(other)
        if a.den == b.den:
            return CycNumber(a.level, [x + y for x, y in zip(a.nums, b.nums)], a.den)
        return CycNumber(a.level, [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.level, tuple(-c for c in self.nums), self.den, True)

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycNumber) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CycNumber(self.level, [c * other.numerator for c in self.nums], self.den * other.denominator)
        a, b = self._common(other)
        n = a.level
        phi, table = _field(n)
        raw = [0] * n
        bn = [(j, y) for j, y in enumerate(b.nums) if y]
        for i, x in enumerate(a.nums):
            if x:
                for j, y in bn:
                    raw[(i + j) % n] += x * y
        acc = raw[:phi]
        for k in range(phi, n):
            c = raw[k]
            if c:
                for j, t in enumerate(table[k]):
                    if t:
                        acc[j] += c * t
        return CycNumber(n, acc, a.den * b.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "CycNumber":
        """Image under zeta -> zeta**k (k coprime to the level)."""
        n = self.level
        phi, table = _field(n)
        acc = [0] * phi
        for i, c in enumerate(self.nums):
            if c:
                for j, t in enumerate(table[(i * k) % n]):
                    if t:
                        acc[j] += c * t
        return CycNumber(n, acc, self.den)

    def conjugate(self) -> "CycNumber":
        return self.galois(-1)

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        n = self.level
        prod = CycNumber.one(n)
        for k in range(2, n):
            if gcd(k, n) == 1:
                prod = prod * self.galois(k)
        norm = (self * prod).as_rational()
        return prod * (1 / norm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def is_zero(self) -> bool:
        return not any(self.nums)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.as_rational() == other
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.den == b.den and a.nums == b.nums

    def __hash__(self):
        return hash((self.level, self.nums, self.den))

    def coeffs(self) -> list:
        return [Fraction(c, self.den) for c in self.nums]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs()):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return f"Cyc{self.level}(" + (" + ".join(terms) or "0") + ")"

    def to_json(self) -> dict:
        return {"level": self.level, "coeffs": [str(c) for c in self.coeffs()]}

    @classmethod
    def from_json(cls, data) -> "CycNumber":
        coeffs = [Fraction(str(c)) for c in data["coeffs"]]
        den = 1
        for c in coeffs:
            den = lcm(den, c.denominator)
        return cls(int(data["level"]), [int(c * den) for c in coeffs], den)


def cyc_inner_step(acc: CycNumber, a: CycNumber, b: CycNumber) -> CycNumber:
    """acc + a * conj(b)."""
    return acc + a * b.conjugate()
