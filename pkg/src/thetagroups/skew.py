"""Alternating biadditive forms K x K -> Q/Z.

A form is stored through its Gram matrix on the standard generators of K.
Internally the Gram matrix is scaled to integers over the exponent of K, so
evaluation is integer arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from math import gcd

import numpy as np

from .abelian import FinAbGroup, Subquotient, element_order, span
from .errors import DegenerateForm, InvalidArgument, InvalidForm
from .roots import QmodZ


class SkewForm:
    """Alternating form given by ``gram[i][j] = [e_i, e_j]``."""

    def __init__(self, base: FinAbGroup, gram):
        p = base.rank
        gram = [[QmodZ.parse(v) for v in row] for row in gram]
        if len(gram) != p or any(len(row) != p for row in gram):
            raise InvalidForm(f"Gram matrix must be {p}x{p}")
        e = base.exponent
        B = [[0] * p for _ in range(p)]
        for i in range(p):
            if gram[i][i]:
                raise InvalidForm(f"diagonal entry {i} is {gram[i][i]}, form is not alternating")
            for j in range(p):
                if gram[i][j] != -gram[j][i]:
                    raise InvalidForm(f"entries ({i},{j}) and ({j},{i}) are not negatives")
                g = gcd(base.divisors[i], base.divisors[j])
                if g % gram[i][j].order:
                    raise InvalidForm(f"entry ({i},{j}) = {gram[i][j]} has order not dividing {g}")
                B[i][j] = gram[i][j].num * (e // gram[i][j].den)
        self.base = base
        self.gram = gram
        self._B = B
        self._e = e

    def eval(self, x, y) -> QmodZ:
        return QmodZ(self.raw(x, y), self._e)

    __call__ = eval

    def raw(self, x, y) -> int:
        """Numerator of eval(x, y) over the exponent of the base group."""
        s = 0
        for i, xi in enumerate(x):
            if xi:
                row = self._B[i]
                for j, yj in enumerate(y):
                    if yj:
                        s += xi * yj * row[j]
        return s % self._e

    def functional(self, x) -> tuple:
        """Coefficients of [x, -] on the standard generators (over the exponent)."""
        p = self.base.rank
        return tuple(sum(x[i] * self._B[i][j] for i in range(p)) % self._e for j in range(p))

    def integer_gram(self) -> np.ndarray:
        return np.array(self._B, dtype=np.int64).reshape(self.base.rank, self.base.rank)

    def __eq__(self, other):
        return isinstance(other, SkewForm) and self.base == other.base and self.gram == other.gram

    __hash__ = None

    def __repr__(self):
        return f"SkewForm({list(self.base.divisors)}, {[[str(v) for v in r] for r in self.gram]})"

    def to_json(self) -> dict:
        p = self.base.rank
        gram = [[str(self.gram[i][j]) if i < j else ("0" if i == j else str(-self.gram[j][i]))
                 for j in range(p)] for i in range(p)]
        return {"divisors": list(self.base.divisors), "gram": gram}

    @classmethod
    def from_json(cls, data) -> "SkewForm":
        """Parse a form; a Gram matrix whose strict lower triangle is all zero is completed."""
        base = FinAbGroup(data["divisors"])
        gram = [[QmodZ.parse(v) for v in row] for row in data["gram"]]
        p = base.rank
        if len(gram) == p and all(len(r) == p for r in gram):
            lower_zero = all(not gram[i][j] for i in range(p) for j in range(i))
            if lower_zero:
                for i in range(p):
                    for j in range(i):
                        gram[i][j] = -gram[j][i]
        return cls(base, gram)


def standard_form(type_) -> SkewForm:
    """Hyperbolic form of the given type on Z/d_1 + Z/d_1 + ... + Z/d_p + Z/d_p.

    Coordinates 2i and 2i+1 form the i-th hyperbolic pair with value 1/d_i.
    """
    type_ = list(type_)
    base = FinAbGroup([d for d in type_ for _ in range(2)])
    p = base.rank
    gram = [[QmodZ(0)] * p for _ in range(p)]
    for i, d in enumerate(type_):
        gram[2 * i][2 * i + 1] = QmodZ(1, d)
        gram[2 * i + 1][2 * i] = QmodZ(-1, d)
    return SkewForm(base, gram)


def zero_form(base: FinAbGroup) -> SkewForm:
    return SkewForm(base, [[0] * base.rank for _ in range(base.rank)])


def radical(form: SkewForm) -> list:
    """Elements x with [x, y] = 0 for all y, using the generator criterion."""
    return [x for x in form.base.elements() if not any(form.functional(x))]


def radical_by_enumeration(form: SkewForm) -> list:
    """Same set as :func:`radical`, computed from all pairs (test oracle)."""
    elems = form.base.elements()
    return [x for x in elems if all(form.raw(x, y) == 0 for y in elems)]


def is_nondegenerate(form: SkewForm) -> bool:
    return len(radical(form)) == 1


def orthogonal(form: SkewForm, subset) -> list:
    """Elements pairing trivially with every element of ``subset``."""
    subset = list(subset)
    return [z for z in form.base.elements() if all(form.raw(s, z) == 0 for s in subset)]


def is_isotropic(form: SkewForm, subset) -> bool:
    subset = list(subset)
    return all(form.raw(a, b) == 0 for a in subset for b in subset)


def quotient_by_radical(form: SkewForm):
    """Induced form on K/K0, together with the Subquotient used to build it."""
    K = form.base
    rad = radical(form)
    sq = Subquotient(K, K.basis(), rad)
    Q = sq.group
    lifts = [sq.lift(g) for g in Q.basis()]
    gram = [[form.eval(a, b) for b in lifts] for a in lifts]
    return SkewForm(Q, gram), sq


@dataclass
class SymplecticDecomposition:
    """K = K1 + K2 with [x_i, y_j] = delta_ij / type[i] and K1, K2 isotropic."""

    form: SkewForm
    k1_gens: list
    k2_gens: list
    type: tuple
    _table: dict = field(default=None, repr=False)

    @property
    def base(self) -> FinAbGroup:
        return self.form.base

    def element(self, a, b):
        """sum a_i x_i + sum b_i y_i."""
        K = self.base
        out = K.zero()
        for c, g in zip(a, self.k1_gens):
            out = K.add(out, K.scale(c, g))
        for c, g in zip(b, self.k2_gens):
            out = K.add(out, K.scale(c, g))
        return out

    def coordinate_table(self) -> dict:
        """element -> (a, b) coordinates in the symplectic basis."""
        if self._table is None:
            ranges = [range(d) for d in self.type]
            table = {}
            for a in product(*ranges):
                xa = self.element(a, ())
                for b in product(*ranges):
                    table[self.base.add(xa, self.element((), b))] = (a, b)
            self._table = table
        return self._table

    def coords(self, u):
        return self.coordinate_table()[tuple(u)]

    def pairing(self, a, b) -> QmodZ:
        """<x1, y2> for K1-coordinates a and K2-coordinates b."""
        e = max(self.type) if self.type else 1
        return QmodZ(sum(x * y * (e // d) for x, y, d in zip(a, b, self.type)), e)

    def k1(self) -> list:
        return span(self.base, self.k1_gens)

    def k2(self) -> list:
        return span(self.base, self.k2_gens)

    def verify(self):
        """Check the decomposition invariants; raise AssertionError on failure."""
        K, f = self.base, self.form
        t = self.type
        assert list(t) == sorted(t) and all(t[i + 1] % t[i] == 0 for i in range(len(t) - 1))
        for i, (x, y) in enumerate(zip(self.k1_gens, self.k2_gens)):
            assert element_order(K, x) == t[i] and element_order(K, y) == t[i]
        for i, x in enumerate(self.k1_gens):
            for j, y in enumerate(self.k2_gens):
                want = QmodZ(1, t[i]) if i == j else QmodZ(0)
                assert f.eval(x, y) == want, (i, j)
            for j, x2 in enumerate(self.k1_gens):
                assert not f.eval(x, x2)
        for i, y in enumerate(self.k2_gens):
            for y2 in self.k2_gens:
                assert not f.eval(y, y2)
        n = 1
        for d in t:
            n *= d
        assert n * n == K.order
        assert len(self.coordinate_table()) == K.order


def symplectic_decompose(form: SkewForm, quotient_radical: bool = False) -> SymplecticDecomposition:
    """Split a nondegenerate form into hyperbolic pairs, largest order first.

    With ``quotient_radical`` a degenerate form is first replaced by the
    induced form on K/K0 (the returned decomposition then lives on K/K0).
    """
    rad = radical(form)
    if len(rad) > 1:
        if not quotient_radical:
            raise DegenerateForm(f"form has radical of order {len(rad)}", rad)
        form, _ = quotient_by_radical(form)
    K = form.base
    current = list(K.elements())
    pairs = []
    while len(current) > 1:
        orders = {z: element_order(K, z) for z in current}
        d = max(orders.values())
        x = next(z for z in current if orders[z] == d)
        cyclic_x = set(span(K, [x]))
        y = None
        for z in current:
            if orders[z] == d and z not in cyclic_x and form.eval(x, z).order == d:
                y = z
                break
        if y is None:
            raise DegenerateForm("no symplectic partner found", [x])
        u = form.eval(x, y).num  # [x, y] = u/d with u a unit mod d
        y = K.scale(pow(u, -1, d), y)
        pairs.append((x, y, d))
        current = [z for z in current if form.raw(x, z) == 0 and form.raw(y, z) == 0]
    pairs.reverse()
    dec = SymplecticDecomposition(
        form,
        [p[0] for p in pairs],
        [p[1] for p in pairs],
        tuple(p[2] for p in pairs),
    )
    return dec


def form_type(form: SkewForm) -> tuple:
    return symplectic_decompose(form).type


def maximal_isotropic(form: SkewForm, allow_degenerate: bool = False) -> list:
    """K1 of the symplectic decomposition (plus the radical when degenerate)."""
    rad = radical(form)
    if len(rad) > 1:
        if not allow_degenerate:
            raise DegenerateForm(f"form has radical of order {len(rad)}", rad)
        qform, sq = quotient_by_radical(form)
        dec = symplectic_decompose(qform)
        k1 = set(dec.k1())
        return [z for z in form.base.elements() if sq.coords(z) in k1]
    return symplectic_decompose(form).k1()


def is_maximal_isotropic(form: SkewForm, H) -> bool:
    """Isotropic and not contained in a strictly larger isotropic subgroup.

    For isotropic H every z in H-perp outside H would extend it, because
    [z, z] = 0; so maximality is H-perp == H.
    """
    H = list(H)
    if not is_isotropic(form, H):
        return False
    return set(orthogonal(form, H)) == set(H)


def all_maximal_isotropic(form: SkewForm, limit: int = 200000) -> list:
    """Every maximal isotropic subgroup, by breadth-first extension (oracle)."""
    K = form.base
    elems = K.elements()
    n = len(elems)
    idx = {g: i for i, g in enumerate(elems)}
    add = [[idx[K.add(a, b)] for b in elems] for a in elems]
    pair = [[form.raw(a, b) for b in elems] for a in elems]
    start = frozenset([0])
    seen = {start}
    frontier = [(start, ())]
    maximal = []
    while frontier:
        nxt = []
        for H, gens in frontier:
            perp = [z for z in range(n) if all(pair[g][z] == 0 for g in gens)]
            extended = False
            for z in perp:
                if z in H:
                    continue
                extended = True
                new = set(H)
                cur = z
                multiples = []
                while cur not in H:
                    multiples.append(cur)
                    cur = add[cur][z]
                for m in multiples:
                    for h in H:
                        new.add(add[h][m])
                new = frozenset(new)
                if new not in seen:
                    seen.add(new)
                    if len(seen) > limit:
                        raise RuntimeError("too many isotropic subgroups")
                    nxt.append((new, gens + (z,)))
            if not extended:
                maximal.append(sorted(elems[i] for i in H))
        frontier = nxt
    return maximal


def random_nondegenerate_form(rng: random.Random, max_order: int = 4096, type_=None, tries: int = 200) -> SkewForm:
    """Random nondegenerate form on a doubled group Z/t_1^2 + ... (rejection sampling)."""
    for _ in range(tries):
        t = list(type_) if type_ is not None else _random_type(rng, max_order)
        base = FinAbGroup([d for d in t for _ in range(2)])
        p = base.rank
        gram = [[QmodZ(0)] * p for _ in range(p)]
        for i in range(p):
            for j in range(i + 1, p):
                g = gcd(base.divisors[i], base.divisors[j])
                v = QmodZ(rng.randrange(g), g)
                gram[i][j], gram[j][i] = v, -v
        form = SkewForm(base, gram)
        if is_nondegenerate(form):
            return form
    raise InvalidArgument("could not sample a nondegenerate form")


def _random_type(rng: random.Random, max_order: int) -> list:
    while True:
        length = rng.randint(1, 3)
        t = [rng.choice([2, 3, 4, 5, 6, 8])]
        for _ in range(length - 1):
            t.append(t[-1] * rng.choice([1, 1, 2, 3]))
        n = 1
        for d in t:
            n *= d * d
        if n <= max_order:
            return t


def reconstruction_check(dec: SymplecticDecomposition, chunk: int = 512) -> bool:
    """Compare the form with the one rebuilt from the decomposition on every pair."""
    K = dec.base
    e = K.exponent
    elems = K.elements()
    C = np.array(elems, dtype=np.int64).reshape(len(elems), K.rank)
    B = dec.form.integer_gram()
    t = dec.type
    table = dec.coordinate_table()
    A = np.array([table[g][0] for g in elems], dtype=np.int64).reshape(len(elems), len(t))
    Bc = np.array([table[g][1] for g in elems], dtype=np.int64).reshape(len(elems), len(t))
    w = np.array([e // d for d in t], dtype=np.int64)
    for start in range(0, len(elems), chunk):
        sl = slice(start, start + chunk)
        lhs = (C[sl] @ B @ C.T) % e
        rhs = ((A[sl] * w) @ Bc.T - (Bc[sl] * w) @ A.T) % e
        if not np.array_equal(lhs, rhs):
            return False
    return True
