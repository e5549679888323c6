"""Central extensions of Q/Z (roots of unity) by a finite abelian group.

An extension is given by a normalized 2-cocycle f on the base group K; its
elements are pairs (alpha, x) with

    (alpha, x) * (beta, y) = (alpha + beta + f(x, y), x + y).

Coboundaries follow the convention d(c)(x, y) = c(x) + c(y) - c(x + y), so
two cocycles define equivalent extensions when f - g = d(c) for some
1-cochain c.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from math import gcd

from .abelian import FinAbGroup, Subquotient, element_order, span
from .errors import ContractViolation, InvalidArgument, Obstruction
from .roots import QmodZ, nth_root
from .skew import SkewForm, SymplecticDecomposition, orthogonal, symplectic_decompose

TABLE_LIMIT = 1024


class Cocycle:
    """Normalized 2-cocycle K x K -> Q/Z.

    Backed either by a full table (indexed by element positions in
    ``base.elements()``) or by a formula; both are called the same way.
    """

    def __init__(self, base: FinAbGroup, func=None, table=None, label=None):
        if (func is None) == (table is None):
            raise InvalidArgument("give exactly one of func or table")
        self.base = base
        self._func = func
        self._table = table
        self.label = label

    @classmethod
    def from_table(cls, base: FinAbGroup, table) -> "Cocycle":
        n = base.order
        table = [[QmodZ.parse(v) for v in row] for row in table]
        if len(table) != n or any(len(r) != n for r in table):
            raise InvalidArgument(f"cocycle table must be {n}x{n}")
        return cls(base, table=table)

    @classmethod
    def from_function(cls, base: FinAbGroup, func, label=None) -> "Cocycle":
        return cls(base, func=func, label=label)

    @classmethod
    def trivial(cls, base: FinAbGroup) -> "Cocycle":
        return cls(base, func=lambda x, y: QmodZ(0), label="trivial")

    @classmethod
    def bilinear(cls, base: FinAbGroup, coeffs) -> "Cocycle":
        """f(x, y) = sum_ij x_i y_j coeffs[i][j] for a bilinear pairing."""
        coeffs = [[QmodZ.parse(v) for v in row] for row in coeffs]
        p = base.rank
        for i in range(p):
            for j in range(p):
                if base.divisors[i] * coeffs[i][j] or base.divisors[j] * coeffs[i][j]:
                    raise InvalidArgument(f"coefficient ({i},{j}) is not well defined on {base}")

        def f(x, y):
            s = QmodZ(0)
            for i in range(p):
                if x[i]:
                    for j in range(p):
                        if y[j]:
                            s = s + coeffs[i][j] * (x[i] * y[j])
            return s

        return cls(base, func=f, label="bilinear")

    def __call__(self, x, y) -> QmodZ:
        if self._table is not None:
            K = self.base
            return self._table[K.index(x)][K.index(y)]
        return self._func(x, y)

    def tabulate(self) -> "Cocycle":
        if self._table is not None:
            return self
        elems = self.base.elements()
        return Cocycle(self.base, table=[[self._func(x, y) for y in elems] for x in elems])

    @property
    def is_tabulated(self) -> bool:
        return self._table is not None

    def __add__(self, other: "Cocycle") -> "Cocycle":
        _same_base(self, other)
        return Cocycle(self.base, func=lambda x, y: self(x, y) + other(x, y))

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        _same_base(self, other)
        return Cocycle(self.base, func=lambda x, y: self(x, y) - other(x, y))

    def check(self):
        """Exhaustive normalization and cocycle-identity check."""
        K = self.base
        elems = K.elements()
        for x in elems:
            if self(K.zero(), x) or self(x, K.zero()):
                raise ContractViolation(f"cocycle is not normalized at {x}")
        for x in elems:
            for y in elems:
                fxy = self(x, y)
                xy = K.add(x, y)
                for z in elems:
                    if fxy + self(xy, z) != self(y, z) + self(x, K.add(y, z)):
                        raise ContractViolation(f"cocycle identity fails at {(x, y, z)}")
        return True

    def to_json(self) -> dict:
        t = self.tabulate()._table
        return {"divisors": list(self.base.divisors), "table": [[str(v) for v in row] for row in t]}

    @classmethod
    def from_json(cls, data) -> "Cocycle":
        base = FinAbGroup(data["divisors"])
        if "table" in data:
            return cls.from_table(base, data["table"])
        if "standard" in data:
            k1 = [base.check(tuple(g)) for g in data["standard"]["k1"]]
            k2 = [base.check(tuple(g)) for g in data["standard"]["k2"]]
            return standard_heisenberg(decomposition_from_pairs(base, k1, k2)).cocycle
        raise InvalidArgument("cocycle JSON needs 'table' or 'standard'")


def decomposition_from_pairs(base: FinAbGroup, k1, k2) -> SymplecticDecomposition:
    """Decomposition whose form is defined by declaring [x_i, y_i] = 1/ord(x_i)."""
    if len(k1) != len(k2):
        raise InvalidArgument("k1 and k2 need the same number of generators")
    type_ = tuple(element_order(base, g) for g in k1)
    if tuple(element_order(base, g) for g in k2) != type_:
        raise InvalidArgument("paired generators must have equal orders")
    e = type_[-1] if type_ else 1
    coords = {}
    for a in product(*(range(d) for d in type_)):
        for b in product(*(range(d) for d in type_)):
            coords[_combine(base, k1, k2, a, b)] = (a, b)
    if len(coords) != base.order:
        raise InvalidArgument("k1/k2 generators do not form a basis of the group")

    def value(u, v):
        (a1, b1), (a2, b2) = coords[u], coords[v]
        return QmodZ(sum((x * w - y * z) * (e // d) for x, y, z, w, d in zip(a1, b1, a2, b2, type_)), e)

    gens = base.basis()
    form = SkewForm(base, [[value(u, v) for v in gens] for u in gens])
    dec = SymplecticDecomposition(form, list(k1), list(k2), type_)
    dec.verify()
    return dec


def _combine(base, k1, k2, a, b):
    out = base.zero()
    for c, g in zip(list(a) + list(b), list(k1) + list(k2)):
        out = base.add(out, base.scale(c, g))
    return out


def _same_base(f, g):
    if f.base != g.base:
        raise InvalidArgument(f"cocycles live on different groups {f.base} and {g.base}")


def coboundary(base: FinAbGroup, c) -> Cocycle:
    """d(c)(x, y) = c(x) + c(y) - c(x + y) for a cochain given as dict or callable."""
    get = c.__getitem__ if isinstance(c, dict) else c
    return Cocycle(base, func=lambda x, y: get(x) + get(y) - get(base.add(x, y)), label="coboundary")


def random_cochain(base: FinAbGroup, rng: random.Random, max_den: int = 12) -> dict:
    c = {}
    for g in base.elements():
        den = rng.randint(1, max_den)
        c[g] = QmodZ(rng.randrange(den), den)
    c[base.zero()] = QmodZ(0)
    return c


def random_bilinear(base: FinAbGroup, rng: random.Random) -> list:
    p = base.rank
    return [[QmodZ(rng.randrange(gcd(base.divisors[i], base.divisors[j])), gcd(base.divisors[i], base.divisors[j]))
             for j in range(p)] for i in range(p)]


class ThetaGroup:
    """Central extension of Q/Z by ``cocycle.base``."""

    def __init__(self, cocycle: Cocycle):
        self.cocycle = cocycle

    @property
    def base(self) -> FinAbGroup:
        return self.cocycle.base

    def element(self, alpha, x):
        return (QmodZ.parse(alpha), self.base.check(tuple(x)))

    def lift(self, x, alpha=0):
        return (QmodZ.parse(alpha), tuple(x))

    def identity(self):
        return (QmodZ(0), self.base.zero())

    def mul(self, a, b):
        (al, x), (be, y) = a, b
        return (al + be + self.cocycle(x, y), self.base.add(x, y))

    def inv(self, a):
        al, x = a
        mx = self.base.neg(x)
        return (-al - self.cocycle(x, mx), mx)

    def power(self, a, n: int):
        if n < 0:
            return self.power(self.inv(a), -n)
        out = self.identity()
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def commutator(self, a, b):
        """a b a^-1 b^-1, an element over 0."""
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def commutes(self, a, b) -> bool:
        return self.mul(a, b) == self.mul(b, a)


def commutator_value(G: ThetaGroup, a, b) -> QmodZ:
    c = G.commutator(a, b)
    assert not any(c[1])
    return c[0]


def commutator_form(G: ThetaGroup) -> SkewForm:
    K = G.base
    gens = K.basis()
    gram = [[commutator_value(G, G.lift(x), G.lift(y)) for y in gens] for x in gens]
    return SkewForm(K, gram)


def standard_heisenberg(dec: SymplecticDecomposition) -> ThetaGroup:
    """f(u, v) = <u1, v2> in the coordinates of a symplectic decomposition."""
    table = dec.coordinate_table()

    def f(u, v):
        return dec.pairing(table[u][0], table[v][1])

    return ThetaGroup(Cocycle(dec.base, func=f, label="standard"))


def heisenberg_of_type(type_) -> ThetaGroup:
    from .skew import standard_form
    return standard_heisenberg(symplectic_decompose(standard_form(type_)))


# -- level subgroups ---------------------------------------------------------


@dataclass
class LevelSubgroup:
    """A homomorphic section over an isotropic subgroup of the base."""

    group: ThetaGroup
    subgroup: list
    section: dict
    generators: list

    def elements(self) -> list:
        return [self.section[k] for k in self.subgroup]

    def verify(self):
        G = self.group
        K = G.base
        for k in self.subgroup:
            if self.section[k][1] != k:
                raise ContractViolation("section does not lie over its argument")
        for a in self.subgroup:
            for b in self.subgroup:
                if G.mul(self.section[a], self.section[b]) != self.section[K.add(a, b)]:
                    raise ContractViolation(f"section is not a homomorphism at {(a, b)}")
        return True


def lift_level_subgroup(G: ThetaGroup, gens) -> LevelSubgroup:
    """Level subgroup over the subgroup generated by ``gens``.

    The subgroup is split as an internal direct sum of cyclic groups <g_i>;
    each lift h_i of g_i has h_i^(d_i) = alpha_i central, and
    z_i = h_i * beta_i^-1 with d_i * beta_i = alpha_i has order d_i.
    """
    K = G.base
    gens = [K.check(tuple(g)) for g in gens]
    for a in gens:
        for b in gens:
            if commutator_value(G, G.lift(a), G.lift(b)):
                raise Obstruction(f"subgroup is not isotropic: [{a}, {b}] != 0", (a, b))
    sq = Subquotient(K, gens)
    zs = []
    for g in sq.generators:
        d = element_order(K, g)
        h = G.lift(g)
        alpha, top = G.power(h, d)
        assert not any(top)
        beta = nth_root(alpha, d)
        z = G.mul((-beta, K.zero()), h)
        if G.power(z, d) != G.identity():
            raise ContractViolation("lifted generator has the wrong order")
        zs.append(z)
    subgroup = span(K, gens)
    section = {}
    for k in subgroup:
        out = G.identity()
        for c, z in zip(sq.coords(k), zs):
            out = G.mul(out, G.power(z, c))
        section[k] = out
    return LevelSubgroup(G, subgroup, section, zs)


# -- equivalence and normal form ---------------------------------------------


def coboundary_witness(f: Cocycle, g: Cocycle, verify: bool = True):
    """A cochain c with f - g = d(c), or None when no such cochain exists.

    h = f - g is a coboundary exactly when it is symmetric: then the
    extension it defines is abelian, and because Q/Z is divisible each
    generator lifts to an element of the same order, giving a splitting.
    """
    _same_base(f, g)
    K = f.base
    elems = K.elements()
    h = (f - g).tabulate() if K.order <= TABLE_LIMIT else f - g
    for i, x in enumerate(elems):
        for y in elems[i + 1:]:
            if h(x, y) != h(y, x):
                return None
    E = ThetaGroup(h)
    split = []
    for e in K.basis():
        d = element_order(K, e)
        alpha, _ = E.power(E.lift(e), d)
        split.append(E.mul((-nth_root(alpha, d), K.zero()), E.lift(e)))
    c = {}
    for x in elems:
        s = E.identity()
        for k, z in zip(x, split):
            s = E.mul(s, E.power(z, k))
        c[x] = -s[0]
    if verify:
        for x in elems:
            for y in elems:
                if h(x, y) != c[x] + c[y] - c[K.add(x, y)]:
                    raise ContractViolation("difference is not a cocycle")
    return c


def extensions_equivalent(f: Cocycle, g: Cocycle) -> bool:
    return coboundary_witness(f, g) is not None


@dataclass
class NormalForm:
    decomposition: SymplecticDecomposition
    cochain: dict
    section: dict
    standard: ThetaGroup


def factor_set(G: ThetaGroup, section: dict):
    """(x, y) -> scalar of section(x) section(y) section(x + y)^-1."""
    K = G.base

    def fs(x, y):
        val = G.mul(G.mul(section[x], section[y]), G.inv(section[K.add(x, y)]))
        assert not any(val[1])
        return val[0]

    return fs


def normal_form(G: ThetaGroup, verify: bool = True) -> NormalForm:
    """Equivalence of G with the standard extension of its commutator form.

    Returns the symplectic decomposition used together with a cochain c such
    that f_G - f_standard = d(c).
    """
    form = commutator_form(G)
    dec = symplectic_decompose(form)
    K = G.base
    L1 = lift_level_subgroup(G, dec.k1_gens)
    L2 = lift_level_subgroup(G, dec.k2_gens)
    table = dec.coordinate_table()
    section = {}
    for u, (a, b) in table.items():
        x1 = dec.element(a, ())
        x2 = dec.element((), b)
        section[u] = G.mul(L2.section[x2], L1.section[x1])
    cochain = {u: -s[0] for u, s in section.items()}
    std = standard_heisenberg(dec)
    if verify:
        fs = factor_set(G, section)
        for x in K.elements():
            for y in K.elements():
                if fs(x, y) != std.cocycle(x, y):
                    raise ContractViolation(f"factor set differs from <x1, y2> at {(x, y)}")
                if G.cocycle(x, y) - std.cocycle(x, y) != cochain[x] + cochain[y] - cochain[K.add(x, y)]:
                    raise ContractViolation("cochain does not realize the equivalence")
    return NormalForm(dec, cochain, section, std)


# -- descent ---------------------------------------------------------------


@dataclass
class Descent:
    """C(level)/level presented as an extension over K'-perp/K'."""

    group: ThetaGroup
    level: LevelSubgroup
    centralizer_base: list
    perp: list
    quotient: Subquotient

    def project(self, g):
        """Image in the quotient of an element of the centralizer."""
        return _normalize(self.level, self.quotient, g)


def _normalize(L: LevelSubgroup, sq: Subquotient, g):
    G = L.group
    K = G.base
    alpha, u = g
    q = sq.coords(u)
    k = K.sub(u, sq.lift(q))
    t = L.section[k][0]
    return (alpha - t - G.cocycle(sq.lift(q), k), q)


def descent(G: ThetaGroup, L: LevelSubgroup) -> Descent:
    K = G.base
    L.verify()
    lvl = L.elements()
    # central scalars commute with everything, so testing alpha = 0 lifts suffices
    centralizer = [u for u in K.elements() if all(G.commutes(G.lift(u), z) for z in lvl)]
    normalizer = []
    members = set(lvl)
    for u in K.elements():
        a = G.lift(u)
        ai = G.inv(a)
        if all(G.mul(G.mul(a, z), ai) in members for z in lvl):
            normalizer.append(u)
    if centralizer != normalizer:
        raise ContractViolation("centralizer and normalizer of the level subgroup differ")
    form = commutator_form(G)
    perp = orthogonal(form, L.subgroup)
    if sorted(perp) != sorted(centralizer):
        raise ContractViolation("centralizer does not lie over the orthogonal of K'")
    sq = Subquotient(K, perp, L.subgroup)
    Q = sq.group

    def fq(q1, q2):
        l1, l2 = sq.lift(q1), sq.lift(q2)
        return _normalize(L, sq, (G.cocycle(l1, l2), K.add(l1, l2)))[0]

    cocycle = Cocycle(Q, func=fq, label="descended")
    if Q.order <= TABLE_LIMIT:
        cocycle = cocycle.tabulate()
    return Descent(ThetaGroup(cocycle), L, centralizer, perp, sq)


def descend(G: ThetaGroup, L: LevelSubgroup) -> ThetaGroup:
    return descent(G, L).group
