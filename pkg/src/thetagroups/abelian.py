"""Finite abelian groups in elementary-divisor form.

Elements are plain tuples of ints, coordinate ``i`` reduced mod ``d_i``.
Subgroups are explicit sorted element lists; everything here is desk-scale
(a few thousand elements at most), so enumeration is the default tool.
Subquotients are put back into elementary-divisor form with a Smith normal
form of the relation lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import gcd, prod

from .errors import InvalidArgument, MalformedElement
from .roots import QmodZ, lcm


class FinAbGroup:
    """Z/d_1 + ... + Z/d_p with d_i >= 2 and d_i | d_{i+1}.

    The empty divisor list is the trivial group.

    >>> K = FinAbGroup([2, 4])
    >>> K.order, K.add((1, 3), (1, 2))
    (8, (0, 1))
    """

    __slots__ = ("divisors", "_elements")

    def __init__(self, divisors):
        divisors = tuple(int(d) for d in divisors)
        for i, d in enumerate(divisors):
            if d < 2:
                raise InvalidArgument(f"elementary divisors must be >= 2, got {divisors}")
            if i and d % divisors[i - 1]:
                raise InvalidArgument(f"divisors must form a chain d_i | d_(i+1), got {divisors}")
        self.divisors = divisors
        self._elements = None

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def order(self) -> int:
        return prod(self.divisors)

    @property
    def exponent(self) -> int:
        return self.divisors[-1] if self.divisors else 1

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.divisors == other.divisors

    def __hash__(self):
        return hash(self.divisors)

    def __repr__(self):
        return f"FinAbGroup({list(self.divisors)})"

    def __len__(self):
        return self.order

    def zero(self):
        return (0,) * self.rank

    def basis(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def elements(self) -> list:
        """All elements in coordinate order (first coordinate varies fastest)."""
        if self._elements is None:
            rev = product(*(range(d) for d in reversed(self.divisors)))
            self._elements = [tuple(reversed(e)) for e in rev]
        return self._elements

    def index(self, g) -> int:
        """Position of g in :meth:`elements`."""
        i, step = 0, 1
        for c, d in zip(g, self.divisors):
            i += c * step
            step *= d
        return i

    def check(self, g):
        if len(g) != self.rank or any(not 0 <= c < d for c, d in zip(g, self.divisors)):
            raise MalformedElement(f"{g} is not a reduced element of {self}")
        return tuple(g)

    def element(self, coords):
        """Reduce an arbitrary integer vector into the group."""
        if len(coords) != self.rank:
            raise MalformedElement(f"{coords} has wrong length for {self}")
        return tuple(int(c) % d for c, d in zip(coords, self.divisors))

    def add(self, g, h):
        return tuple((a + b) % d for a, b, d in zip(g, h, self.divisors))

    def sub(self, g, h):
        return tuple((a - b) % d for a, b, d in zip(g, h, self.divisors))

    def neg(self, g):
        return tuple(-a % d for a, d in zip(g, self.divisors))

    def scale(self, n: int, g):
        return tuple(n * a % d for a, d in zip(g, self.divisors))

    def to_json(self):
        return {"divisors": list(self.divisors)}

    @classmethod
    def from_json(cls, data):
        return cls(data["divisors"])


def element_order(K: FinAbGroup, g) -> int:
    K.check(g)
    return reduce(lcm, (d // gcd(c, d) for c, d in zip(g, K.divisors)), 1)


@dataclass(frozen=True)
class MulByN:
    n: int
    domain: FinAbGroup
    kernel: tuple
    image: tuple

    def __post_init__(self):
        assert len(self.kernel) * len(self.image) == self.domain.order


def image_order(divisors, n: int) -> int:
    """D_n = prod d_i / gcd(n, d_i)."""
    return prod(d // gcd(n, d) for d in divisors)


def mul_by_n(K: FinAbGroup, n: int) -> MulByN:
    if n < 0:
        raise InvalidArgument("mul_by_n expects n >= 0")
    kernel = sorted(g for g in K.elements() if not any(K.scale(n, g)))
    image = sorted({K.scale(n, g) for g in K.elements()})
    return MulByN(n, K, tuple(kernel), tuple(image))


def dual_character(K: FinAbGroup, y, x) -> QmodZ:
    """<x, y> = sum x_i y_i / d_i mod 1, identifying K with its dual."""
    K.check(x)
    K.check(y)
    return pairing_value(K.divisors, x, y)


def pairing_value(divisors, x, y) -> QmodZ:
    e = divisors[-1] if divisors else 1
    return QmodZ(sum(a * b * (e // d) for a, b, d in zip(x, y, divisors)), e)


def span(K: FinAbGroup, gens) -> list:
    """Sorted element list of the subgroup generated by gens."""
    seen = {K.zero()}
    frontier = [K.zero()]
    gens = [K.check(tuple(g)) for g in gens]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                s = K.add(h, g)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(seen)


# -- Smith normal form --------------------------------------------------------


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M):
    """Smith normal form with transforms.

    Returns ``(diag, L, Linv, R)`` with ``L @ M @ R`` diagonal, entries
    ``diag`` nonnegative with each dividing the next, and ``L``/``R``
    unimodular.  ``Linv`` is the inverse of ``L``.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    L, Linv, R = _identity(m), _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]
        for row in Linv:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):  # row_i += c * row_j
        A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        L[i] = [a + c * b for a, b in zip(L[i], L[j])]
        for row in Linv:
            row[j] -= c * row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_col(i, j, c):  # col_i += c * col_j
        for row in A:
            row[i] += c * row[j]
        for row in R:
            row[i] += c * row[j]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return _diag(A, m, n), L, Linv, R
            if pivot[0] != t:
                swap_rows(t, pivot[0])
            if pivot[1] != t:
                swap_cols(t, pivot[1])
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            L[t] = [-a for a in L[t]]
            for row in Linv:
                row[t] = -row[t]
    return _diag(A, m, n), L, Linv, R


def _diag(A, m, n):
    return [A[i][i] for i in range(min(m, n))]


def _matvec(M, v):
    return [sum(a * b for a, b in zip(row, v)) for row in M]


class Subquotient:
    """H/S for subgroups S <= H <= K, in elementary-divisor form.

    ``coords`` sends an element of H to its coordinates in ``group``;
    ``lift`` sends coordinates back to a fixed representative in H.
    With ``S`` trivial this is the canonical decomposition of H into an
    internal direct sum of cyclic subgroups (``generators``).
    """

    def __init__(self, K: FinAbGroup, h_gens, s_gens=()):
        self.ambient = K
        p = K.rank
        torsion = [[K.divisors[i] * int(i == j) for i in range(p)] for j in range(p)]
        h_cols = [list(g) for g in h_gens] + torsion
        s_cols = [list(g) for g in s_gens] + torsion
        if p == 0:
            self.group = FinAbGroup([])
            self.generators = []
            self._L = self._L2 = []
            self._D = self._D2 = []
            self._keep = []
            return
        MH = [[col[i] for col in h_cols] for i in range(p)]
        D, L, Linv, _ = smith_normal_form(MH)
        self._D, self._L = D, L
        # coordinates of the S lattice in the basis Linv * diag(D) of the H lattice
        C = [[0] * len(s_cols) for _ in range(p)]
        for j, col in enumerate(s_cols):
            c = _matvec(L, col)
            for i in range(p):
                if c[i] % D[i]:
                    raise InvalidArgument("second subgroup is not contained in the first")
                C[i][j] = c[i] // D[i]
        D2, L2, L2inv, _ = smith_normal_form(C)
        self._L2 = L2
        self._D2 = D2
        self._keep = [i for i in range(p) if D2[i] > 1]
        self.group = FinAbGroup([D2[i] for i in self._keep])
        gens = []
        for i in self._keep:
            col = [L2inv[r][i] * D[r] for r in range(p)]
            gens.append(K.element(_matvec(Linv, col)))
        self.generators = gens

    def coords(self, h):
        if not self._keep:
            return ()
        c = _matvec(self._L, h)
        for i, d in enumerate(self._D):
            if c[i] % d:
                raise InvalidArgument(f"{h} does not lie in the subgroup")
            c[i] //= d
        c2 = _matvec(self._L2, c)
        return tuple(c2[i] % self._D2[i] for i in self._keep)

    def lift(self, q):
        K = self.ambient
        out = K.zero()
        for c, g in zip(q, self.generators):
            out = K.add(out, K.scale(c, g))
        return out
