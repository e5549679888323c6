"""Weight-n representations of the standard Heisenberg group of type d.

The group is modelled in coordinates: elements are triples (alpha, x, w)
with alpha in Q/Z and x, w in K = Z/d_1 + ... + Z/d_p, and

    (alpha, a, b) * (beta, c, d) = (alpha + beta + <a, d>, a + c, b + d),

where <x, w> = sum x_i w_i / d_i.  Any nondegenerate theta group is carried
onto this model by :meth:`Heisenberg.from_theta`.

Irreducibles of weight n are the monomial modules W_{y,chi}: basis vectors
e_{y+z} for z in image(pi_n), with

    (alpha, x, w) e_{y+z} = [n alpha + <x, y+z> + chi(w + s(z) - s(nw + z))] e_{y+z+nw}

for a set-theoretic section s of pi_n onto its image.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod

from .abelian import FinAbGroup, mul_by_n, pairing_value
from .errors import (
    ContractViolation,
    InvalidArgument,
    InvalidCharacter,
    InvalidModule,
    NotHomogeneous,
    SizeError,
)
from .linalg import Matrix, Span, nullspace, restrict, vec_add, vec_scale
from .roots import CycNumber, QmodZ, cyc_inner_step


class Heisenberg:
    """Standard Heisenberg group of type d in (alpha, x, w) coordinates."""

    def __init__(self, type_):
        self.type = tuple(int(d) for d in type_)
        self.K = FinAbGroup(self.type)
        self.exponent = self.K.exponent
        self.normal_form = None

    @classmethod
    def of(cls, G) -> "Heisenberg":
        if isinstance(G, Heisenberg):
            return G
        from .theta import ThetaGroup
        if isinstance(G, ThetaGroup):
            return cls.from_theta(G)
        return cls(G)

    @classmethod
    def from_theta(cls, G) -> "Heisenberg":
        """Standard model of a nondegenerate theta group, remembering the equivalence."""
        from .theta import normal_form
        nf = normal_form(G)
        H = cls(nf.decomposition.type)
        H.normal_form = nf
        return H

    def to_standard(self, g):
        """Image of a theta-group element (alpha, u) in coordinates (via the normal form)."""
        if self.normal_form is None:
            raise InvalidArgument("this model was not built from a theta group")
        alpha, u = g
        a, b = self.normal_form.decomposition.coords(u)
        return (alpha + self.normal_form.cochain[tuple(u)], tuple(a), tuple(b))

    def __eq__(self, other):
        return isinstance(other, Heisenberg) and self.type == other.type

    def __hash__(self):
        return hash(self.type)

    def __repr__(self):
        return f"Heisenberg({list(self.type)})"

    def pair(self, x, w) -> QmodZ:
        return pairing_value(self.type, x, w)

    def mul(self, g, h):
        (al, a, b), (be, c, d) = g, h
        K = self.K
        return (al + be + self.pair(a, d), K.add(a, c), K.add(b, d))

    def inv(self, g):
        al, x, w = g
        K = self.K
        return (-al + self.pair(x, w), K.neg(x), K.neg(w))

    def identity(self):
        z = self.K.zero()
        return (QmodZ(0), z, z)

    def generators(self):
        """Scalar 1/e, then the K1 basis, then the K2 basis; these generate G'."""
        z = self.K.zero()
        gens = [(QmodZ(1, self.exponent), z, z)]
        gens += [(QmodZ(0), e, z) for e in self.K.basis()]
        gens += [(QmodZ(0), z, e) for e in self.K.basis()]
        return gens


# -- G' ------------------------------------------------------------------------


class GPrime:
    """The finite subgroup mu_e x K1 x K2, e the exponent of the type.

    Closure needs the scalars <x, w>, which range over (1/e)Z/Z.
    """

    def __init__(self, H: Heisenberg):
        self.heis = H
        self.scalars = [QmodZ(a, H.exponent) for a in range(H.exponent)]

    @property
    def order(self) -> int:
        return self.heis.exponent * self.heis.K.order ** 2

    def elements(self):
        K = self.heis.K.elements()
        for x in K:
            for w in K:
                for a in self.scalars:
                    yield (a, x, w)

    def class_formula(self) -> int:
        """sum over r < e of prod gcd(r, d_i)^2."""
        return sum(prod(gcd(r, d) ** 2 for d in self.heis.type) for r in range(self.heis.exponent))


def gprime_class_count(type_, cap: int = 1024) -> int:
    """Number of conjugacy classes of G', by brute force."""
    H = Heisenberg.of(type_)
    Gp = GPrime(H)
    if Gp.order > cap:
        raise SizeError(f"|G'| = {Gp.order} exceeds the cap {cap}")
    elems = list(Gp.elements())
    inverses = [H.inv(h) for h in elems]
    seen = set()
    classes = 0
    for g in elems:
        if g in seen:
            continue
        classes += 1
        for h, hi in zip(elems, inverses):
            seen.add(H.mul(H.mul(h, g), hi))
    return classes


# -- multiplication by n on K2 ---------------------------------------------------


@dataclass
class WeightData:
    """ker and image of pi_n on K, characters of the kernel and a section."""

    heis: Heisenberg
    n: int
    kernel: tuple
    image: tuple
    kernel_group: FinAbGroup
    kernel_steps: tuple  # kernel generator i is steps[i] * e_{slots[i]}
    kernel_slots: tuple
    section: dict = field(repr=False)

    @property
    def D(self) -> int:
        return len(self.image)

    def section_is_valid(self, section) -> bool:
        K = self.heis.K
        return set(section) == set(self.image) and all(K.scale(self.n, s) == z for z, s in section.items())

    def kernel_coords(self, w):
        out = []
        for step, i in zip(self.kernel_steps, self.kernel_slots):
            if w[i] % step:
                raise InvalidArgument(f"{w} is not in ker pi_{self.n}")
            out.append(w[i] // step)
        return tuple(out)

    def characters(self) -> list:
        return [KernelCharacter(self, c) for c in self.kernel_group.elements()]

    def coset_rep(self, y):
        """Smallest element of y + image(pi_n)."""
        K = self.heis.K
        return min(K.add(y, z) for z in self.image)

    def random_section(self, rng: random.Random) -> dict:
        K = self.heis.K
        pre = {}
        for g in K.elements():
            pre.setdefault(K.scale(self.n, g), []).append(g)
        return {z: rng.choice(pre[z]) for z in self.image}


def weight_data(G, n: int, section=None) -> WeightData:
    H = Heisenberg.of(G)
    K = H.K
    m = mul_by_n(K, n % H.exponent)
    steps, slots, divs = [], [], []
    for i, d in enumerate(K.divisors):
        g = gcd(n, d)
        if g > 1:
            steps.append(d // g)
            slots.append(i)
            divs.append(g)
    if section is None:
        section = {}
        for g in K.elements():
            z = K.scale(n, g)
            if z not in section or g < section[z]:
                section[z] = g
    data = WeightData(H, n, m.kernel, m.image, FinAbGroup(divs), tuple(steps), tuple(slots), dict(section))
    if not data.section_is_valid(data.section):
        raise InvalidArgument(f"not a section of pi_{n} onto its image")
    return data


class KernelCharacter:
    """Character of ker pi_n; coefficient c_j sends the j-th kernel generator to c_j / g_j."""

    def __init__(self, data: WeightData, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != data.kernel_group.rank:
            raise InvalidCharacter(f"character of ker pi_{data.n} needs {data.kernel_group.rank} coefficients")
        self.data = data
        self.coeffs = data.kernel_group.element(coeffs)

    @classmethod
    def from_values(cls, data: WeightData, values: dict) -> "KernelCharacter":
        """Validate a table w -> QmodZ as a homomorphism on ker pi_n."""
        K = data.heis.K
        values = {tuple(k): QmodZ.parse(v) for k, v in values.items()}
        if set(values) != set(data.kernel):
            raise InvalidCharacter("character table must cover exactly ker pi_n")
        for a in data.kernel:
            for b in data.kernel:
                if values[K.add(a, b)] != values[a] + values[b]:
                    raise InvalidCharacter(f"not a homomorphism at {(a, b)}")
        coeffs = []
        for j, (step, i) in enumerate(zip(data.kernel_steps, data.kernel_slots)):
            gen = tuple(step if t == i else 0 for t in range(K.rank))
            v = values[gen]
            coeffs.append(v.num * (data.kernel_group.divisors[j] // v.den))
        return cls(data, coeffs)

    def __call__(self, w) -> QmodZ:
        ks = self.data.kernel_coords(w)
        divs = self.data.kernel_group.divisors
        e = divs[-1] if divs else 1
        return QmodZ(sum(c * k * (e // g) for c, k, g in zip(self.coeffs, ks, divs)), e)

    def __eq__(self, other):
        return isinstance(other, KernelCharacter) and self.data.n == other.data.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"chi{list(self.coeffs)}"


# -- monomial irreducibles -----------------------------------------------------------


class MonomialRep:
    """The module W_{y,chi} in its monomial basis e_{y+z}, z in image(pi_n)."""

    def __init__(self, data: WeightData, y, chi: KernelCharacter):
        self.data = data
        self.heis = data.heis
        self.n = data.n
        self.y = self.heis.K.check(tuple(y))
        self.chi = chi
        K = self.heis.K
        self.zs = sorted(data.image)
        self.labels = [K.add(self.y, z) for z in self.zs]
        self._z_index = {z: i for i, z in enumerate(self.zs)}
        self._character_vector = None

    @property
    def dim(self) -> int:
        return len(self.zs)

    @property
    def level(self) -> int:
        return self.heis.exponent

    def label_class(self):
        return (self.data.coset_rep(self.y), self.chi.coeffs)

    def action(self, g):
        """(perm, phases): basis vector i goes to phases[i] * basis vector perm[i]."""
        alpha, x, w = g
        K = self.heis.K
        n = self.n
        sec = self.data.section
        nw = K.scale(n, w)
        base = alpha * n
        perm, phases = [], []
        for z, lab in zip(self.zs, self.labels):
            z2 = K.add(nw, z)
            kern = K.sub(K.add(w, sec[z]), sec[z2])
            phases.append(base + self.heis.pair(x, lab) + self.chi(kern))
            perm.append(self._z_index[z2])
        return perm, phases

    def matrix(self, g) -> Matrix:
        perm, phases = self.action(g)
        return Matrix.monomial(perm, phases, self.level)

    def character(self, g) -> CycNumber:
        perm, phases = self.action(g)
        return CycNumber.from_roots((q for i, (j, q) in enumerate(zip(perm, phases)) if i == j), self.level)

    def check_homomorphism(self, pairs=None):
        """rho(g) rho(h) == rho(gh) on the given pairs (default: generator pairs)."""
        H = self.heis
        if pairs is None:
            gens = H.generators()
            pairs = [(g, h) for g in gens for h in gens]
        for g, h in pairs:
            pg, fg = self.action(g)
            ph, fh = self.action(h)
            pgh, fgh = self.action(H.mul(g, h))
            for i in range(self.dim):
                if pg[ph[i]] != pgh[i] or fh[i] + fg[ph[i]] != fgh[i]:
                    raise ContractViolation(f"action is not multiplicative at {(g, h)}")
        return True

    def to_dense(self) -> "DenseRep":
        H = self.heis
        z = H.K.zero()
        X = [self.matrix((QmodZ(0), e, z)) for e in H.K.basis()]
        Y = [self.matrix((QmodZ(0), z, e)) for e in H.K.basis()]
        return DenseRep(H, self.level, X, Y, {self.n: Matrix.identity(self.dim, self.level)})

    def to_json(self) -> dict:
        H = self.heis
        gens = {}
        for g in H.generators():
            perm, phases = self.action(g)
            gens[_gen_name(H, g)] = {"perm": perm, "phase": [str(q) for q in phases]}
        return {
            "type": list(H.type),
            "weight": self.n,
            "y": list(self.y),
            "chi": list(self.chi.coeffs),
            "basis": [list(b) for b in self.labels],
            "generators": gens,
        }

    def __repr__(self):
        return f"W(y={self.y}, {self.chi}, n={self.n})"


def _gen_name(H: Heisenberg, g) -> str:
    alpha, x, w = g
    if alpha:
        return "scalar"
    if any(x):
        return f"x{x.index(1)}"
    return f"w{w.index(1)}"


def build_irrep(G, n: int, y, chi=None, section=None) -> MonomialRep:
    """W_{y,chi} of weight n; chi defaults to the trivial character."""
    data = weight_data(G, n, section)
    if chi is None:
        chi = KernelCharacter(data, (0,) * data.kernel_group.rank)
    elif isinstance(chi, dict):
        chi = KernelCharacter.from_values(data, chi)
    elif not isinstance(chi, KernelCharacter):
        chi = KernelCharacter(data, chi)
    elif chi.data.n != n or chi.data.heis != data.heis:
        raise InvalidCharacter("character belongs to a different weight or group")
    return MonomialRep(data, y, chi)


def all_irreps(G, n: int, section=None) -> list:
    """W_{y,chi} for every label (y, chi), in label order."""
    data = weight_data(G, n, section)
    return [MonomialRep(data, y, chi) for y in data.heis.K.elements() for chi in data.characters()]


def count_irreps(type_, n: int):
    """(number of isomorphism classes, common dimension) from the closed formulas."""
    type_ = tuple(type_)
    return prod(gcd(n, d) ** 2 for d in type_), prod(d // gcd(n, d) for d in type_)


# -- dense modules -----------------------------------------------------------------


class DenseRep:
    """A module given by generator matrices and a Laurent scalar action.

    ``X[i]`` and ``Y[i]`` are the matrices of (0, e_i, 0) and (0, 0, e_i);
    the scalar alpha acts by sum_n alpha^n P_n for the projectors in
    ``projectors``.  Then rho(alpha, x, w) = S(alpha) Y^w X^x.
    """

    def __init__(self, heis: Heisenberg, level: int, X, Y, projectors: dict, check: bool = True):
        self.heis = heis
        self.level = level
        self.X = list(X)
        self.Y = list(Y)
        self.projectors = dict(projectors)
        self.dim = self.X[0].nrows if self.X else next(iter(self.projectors.values())).nrows
        if level % heis.exponent:
            raise InvalidArgument("matrix level must be a multiple of the group exponent")
        self._xpow = {}
        self._character_vector = None
        self._ypow = {}
        if check:
            self.validate()

    @property
    def weights(self) -> list:
        return sorted(self.projectors)

    def is_homogeneous(self) -> bool:
        return len(self.projectors) == 1

    @property
    def weight(self) -> int:
        if not self.is_homogeneous():
            raise NotHomogeneous(f"module has weights {self.weights}")
        return next(iter(self.projectors))

    def validate(self):
        """Laurent condition on the scalars and the defining relations of the group."""
        I = Matrix.identity(self.dim, self.level)
        total = Matrix.zeros(self.dim, self.dim, self.level)
        for n, P in self.projectors.items():
            if P @ P != P:
                raise InvalidModule(f"scalar projector for weight {n} is not idempotent")
            for m, Q in self.projectors.items():
                if m != n and not (P @ Q == Matrix.zeros(self.dim, self.dim, self.level)):
                    raise InvalidModule(f"projectors for weights {n} and {m} are not orthogonal")
            for A in self.X + self.Y:
                if A @ P != P @ A:
                    raise InvalidModule(f"weight-{n} projector is not central")
            total = total + P
        if total != I:
            raise InvalidModule("scalar projectors do not sum to the identity")
        d = self.heis.type
        for i, (Xi, Yi) in enumerate(zip(self.X, self.Y)):
            if not _power(Xi, d[i]).is_identity() or not _power(Yi, d[i]).is_identity():
                raise InvalidModule(f"generator {i} has the wrong order")
        for i, Xi in enumerate(self.X):
            for j, Yj in enumerate(self.Y):
                lhs = Xi @ Yj
                rhs = self.scalar(QmodZ(1, d[i]) if i == j else QmodZ(0)) @ Yj @ Xi
                if lhs != rhs:
                    raise InvalidModule(f"commutation relation fails for x{i}, w{j}")
            for Xj in self.X[i + 1:]:
                if Xi @ Xj != Xj @ Xi:
                    raise InvalidModule("K1 generators do not commute")
        for i, Yi in enumerate(self.Y):
            for Yj in self.Y[i + 1:]:
                if Yi @ Yj != Yj @ Yi:
                    raise InvalidModule("K2 generators do not commute")
        return True

    def scalar(self, alpha: QmodZ) -> Matrix:
        if self.level % alpha.den:
            raise InvalidArgument(f"scalar {alpha} needs a larger cyclotomic level")
        out = Matrix.zeros(self.dim, self.dim, self.level)
        for n, P in self.projectors.items():
            out = out + P.scale(CycNumber.from_qmodz(alpha * n, self.level))
        return out

    def x_matrix(self, x) -> Matrix:
        if x not in self._xpow:
            self._xpow[x] = _word(self.X, x, self.dim, self.level)
        return self._xpow[x]

    def w_matrix(self, w) -> Matrix:
        if w not in self._ypow:
            self._ypow[w] = _word(self.Y, w, self.dim, self.level)
        return self._ypow[w]

    def matrix(self, g) -> Matrix:
        alpha, x, w = g
        M = self.w_matrix(tuple(w)) @ self.x_matrix(tuple(x))
        if not alpha:
            return M
        return self.scalar(alpha) @ M

    def character(self, g) -> CycNumber:
        alpha, x, w = g
        if self.is_homogeneous():
            t = _trace_product(self.w_matrix(tuple(w)), self.x_matrix(tuple(x)), self.level)
            return t * CycNumber.from_qmodz(alpha * self.weight, self.level)
        return self.matrix(g).trace()

    def check_homomorphism(self, pairs=None):
        H = self.heis
        if pairs is None:
            gens = H.generators()
            pairs = [(g, h) for g in gens for h in gens]
        for g, h in pairs:
            if self.matrix(g) @ self.matrix(h) != self.matrix(H.mul(g, h)):
                raise ContractViolation(f"not multiplicative at {(g, h)}")
        return True

    def conjugate(self, Q: Matrix, Qinv: Matrix) -> "DenseRep":
        """The module transported along the basis change v -> Q v."""
        def c(A):
            return Q @ A @ Qinv
        return DenseRep(self.heis, self.level, [c(A) for A in self.X], [c(A) for A in self.Y],
                        {n: c(P) for n, P in self.projectors.items()}, check=False)

    def restrict(self, span: Span) -> "DenseRep":
        """Submodule on an invariant subspace, in the span's basis."""
        try:
            X = [restrict(A, span) for A in self.X]
            Y = [restrict(A, span) for A in self.Y]
            P = {n: restrict(A, span) for n, A in self.projectors.items()}
        except ValueError as exc:
            raise InvalidModule("subspace is not invariant") from exc
        P = {n: A for n, A in P.items() if any(A.rows)}
        return DenseRep(self.heis, self.level, X, Y, P, check=False)

    def to_json(self) -> dict:
        return {
            "type": list(self.heis.type),
            "level": self.level,
            "X": [A.to_json() for A in self.X],
            "Y": [A.to_json() for A in self.Y],
            "projectors": {str(n): P.to_json() for n, P in self.projectors.items()},
        }

    @classmethod
    def from_json(cls, data) -> "DenseRep":
        H = Heisenberg(data["type"])
        level = int(data["level"])

        def mat(rows):
            M = Matrix(len(rows), len(rows), level)
            for i, row in enumerate(rows):
                for j, v in enumerate(row):
                    x = CycNumber.from_json(v).relevel(level)
                    if not x.is_zero():
                        M.rows[i][j] = x
            return M

        return cls(H, level, [mat(A) for A in data["X"]], [mat(A) for A in data["Y"]],
                   {int(n): mat(P) for n, P in data["projectors"].items()})

    def __repr__(self):
        return f"DenseRep(dim={self.dim}, weights={self.weights}, type={list(self.heis.type)})"


def _power(A: Matrix, k: int) -> Matrix:
    out = Matrix.identity(A.nrows, A.level)
    for _ in range(k):
        out = out @ A
    return out


def _word(gens, exps, dim, level) -> Matrix:
    out = Matrix.identity(dim, level)
    for A, k in zip(gens, exps):
        for _ in range(k):
            out = out @ A
    return out


def _trace_product(A: Matrix, B: Matrix, level: int) -> CycNumber:
    acc = CycNumber.zero(level)
    for i, row in enumerate(A.rows):
        for k, a in row.items():
            b = B.rows[k].get(i)
            if b is not None:
                acc = acc + a * b
    return acc


def direct_sum(reps) -> DenseRep:
    reps = [r.to_dense() if isinstance(r, MonomialRep) else r for r in reps]
    H = reps[0].heis
    if any(r.heis != H for r in reps):
        raise InvalidArgument("direct sum of modules over different groups")
    level = reps[0].level
    for r in reps[1:]:
        level = level * r.level // gcd(level, r.level)
    reps = [_relevel(r, level) for r in reps]
    p = H.K.rank
    X = [Matrix.block_diag([r.X[i] for r in reps], level) for i in range(p)]
    Y = [Matrix.block_diag([r.Y[i] for r in reps], level) for i in range(p)]
    weights = sorted({n for r in reps for n in r.projectors})
    P = {}
    for n in weights:
        P[n] = Matrix.block_diag([r.projectors.get(n, Matrix.zeros(r.dim, r.dim, level)) for r in reps], level)
    return DenseRep(H, level, X, Y, P, check=False)


def _relevel(r: DenseRep, level: int) -> DenseRep:
    if r.level == level:
        return r

    def up(A):
        return Matrix(A.nrows, A.ncols, level, [{j: x.relevel(level) for j, x in row.items()} for row in A.rows])

    return DenseRep(r.heis, level, [up(A) for A in r.X], [up(A) for A in r.Y],
                    {n: up(P) for n, P in r.projectors.items()}, check=False)


def random_monomial(dim: int, level: int, rng: random.Random):
    """Random monomial matrix with root-of-unity entries, and its inverse."""
    perm = list(range(dim))
    rng.shuffle(perm)
    phases = [QmodZ(rng.randrange(level), level) for _ in range(dim)]
    Q = Matrix.monomial(perm, phases, level)
    inv_perm = [0] * dim
    inv_phases = [None] * dim
    for i, (j, q) in enumerate(zip(perm, phases)):
        inv_perm[j] = i
        inv_phases[j] = -q
    return Q, Matrix.monomial(inv_perm, inv_phases, level)


# -- characters over G' --------------------------------------------------------------


def character_vector(V) -> tuple:
    """Character values on G' in the order of :meth:`GPrime.elements` (cached on V)."""
    cached = getattr(V, "_character_vector", None)
    if cached is None:
        cached = tuple(V.character(g) for g in GPrime(V.heis).elements())
        V._character_vector = cached
    return cached


def _weight_of(V) -> int:
    return V.n if isinstance(V, MonomialRep) else V.weight


def inner_product(A, B) -> Fraction:
    """(1/|G'|) sum over G' of chi_A(g) * conj(chi_B(g)), exactly."""
    if A.heis != B.heis:
        raise InvalidArgument("modules over different groups")
    level = A.level * B.level // gcd(A.level, B.level)
    acc = CycNumber.zero(level)
    for a, b in zip(character_vector(A), character_vector(B)):
        if not a.is_zero() and not b.is_zero():
            acc = cyc_inner_step(acc, a, b)
    return acc.as_rational() / GPrime(A.heis).order


def character_norm(V) -> Fraction:
    return inner_product(V, V)


def is_irreducible(V) -> bool:
    """Exact character norm over G' equals 1; cross-checked with dim == D_n."""
    n = _weight_of(V)
    norm = character_norm(V)
    by_dim = V.dim == count_irreps(V.heis.type, n)[1]
    if (norm == 1) != by_dim:
        raise ContractViolation(f"norm {norm} and dimension {V.dim} disagree about irreducibility")
    return norm == 1


def isomorphic(A, B) -> bool:
    """Label criterion for irreducibles, cross-checked by character equality over G'."""
    if _weight_of(A) != _weight_of(B):
        raise InvalidArgument(f"cannot compare weights {_weight_of(A)} and {_weight_of(B)}")
    by_char = character_vector(A) == character_vector(B)
    if isinstance(A, MonomialRep) and isinstance(B, MonomialRep):
        by_label = A.label_class() == B.label_class()
        if by_label != by_char:
            raise ContractViolation(f"label test and character test disagree for {A} and {B}")
        return by_label
    return by_char


@dataclass
class Classification:
    type: tuple
    n: int
    classes: list  # one representative per isomorphism class
    dims: set
    labels_tested: int


def classify_irreps(type_, n: int, section=None) -> Classification:
    """Build every W_{y,chi} and sort them into isomorphism classes pairwise."""
    reps = all_irreps(type_, n, section)
    chars = [_char_key(r) for r in reps]
    classes = []
    for r, ch in zip(reps, chars):
        found = None
        for idx, (c, cch) in enumerate(classes):
            same_label = r.label_class() == c.label_class()
            if same_label != (ch == cch):
                raise ContractViolation(f"label and character tests disagree for {r} and {c}")
            if same_label:
                found = idx
                break
        if found is None:
            classes.append((r, ch))
    return Classification(tuple(type_), n, [c for c, _ in classes], {r.dim for r in reps}, len(reps))


def _char_key(V) -> tuple:
    return tuple((c.level, c.nums, c.den) for c in character_vector(V))


# -- weight spaces and decomposition -----------------------------------------------------


def weight_decompose(V: DenseRep) -> dict:
    """{n: V_n}, the splitting by the Laurent scalar action."""
    if V.is_homogeneous():
        return {V.weight: V}
    out = {}
    for n, P in V.projectors.items():
        out[n] = V.restrict(Span([c for c in P.columns() if c]))
    if sum(W.dim for W in out.values()) != V.dim:
        raise InvalidModule("weight components do not add up to the module")
    return out


def _eigenspace(mats, eigs, dim, level) -> list:
    """Common eigenvectors: nullspace of the stacked (A_i - lambda_i I)."""
    if not mats:
        one = CycNumber.one(level)
        return [{i: one} for i in range(dim)]
    rows = []
    for A, lam in zip(mats, eigs):
        c = CycNumber.from_qmodz(lam, level)
        for i, row in enumerate(A.rows):
            rows.append(vec_add(row, {i: c}, CycNumber.rational(-1, level)))
    return nullspace(Matrix(len(rows), dim, level, rows))


def _require_weight(V: DenseRep, n):
    if not V.is_homogeneous():
        raise NotHomogeneous(f"module has weights {V.weights}")
    if n is not None and V.weight != n:
        raise NotHomogeneous(f"module has weight {V.weight}, not {n}")
    return V.weight


def k1_weight_spaces(V: DenseRep, n=None) -> dict:
    """y -> basis of V_y, the subspace where (0, x, 0) acts by <x, y>."""
    n = _require_weight(V, n)
    H = V.heis
    K = H.K
    spaces = {}
    for y in K.elements():
        eigs = [QmodZ(y[i], d) for i, d in enumerate(K.divisors)]
        vecs = _eigenspace(V.X, eigs, V.dim, V.level)
        if vecs:
            spaces[y] = vecs
    if sum(len(v) for v in spaces.values()) != V.dim:
        raise ContractViolation("K1 does not act diagonalizably")
    # rho(alpha, x, w) carries V_y into V_{y + n w}; X preserves each space, so Y is what matters
    for y, vecs in spaces.items():
        for j, Yj in enumerate(V.Y):
            target = K.add(y, K.scale(n, K.basis()[j]))
            span = Span(spaces.get(target, []))
            for v in vecs:
                if not span.contains(Yj.apply(v)):
                    raise ContractViolation(f"w{j} does not carry V_{y} into V_{target}")
    return spaces


@dataclass
class Isotypic:
    y: tuple
    chi: tuple
    copies: list  # each copy: list of basis vectors (dicts), indexed like the irrep's basis

    @property
    def multiplicity(self) -> int:
        return len(self.copies)


def decompose_weight_module(V: DenseRep, n=None, method: str = "weights") -> list:
    """Split a weight-n module into irreducible copies of the W_{y,chi}.

    ``method="weights"`` builds each copy from a vector of V_{y,chi} as in
    the classification proof; ``method="averaging"`` builds intertwiners
    W_{y,chi} -> V by averaging matrix units over G'.  Each copy is checked
    to be an image of W_{y,chi} under an explicit intertwiner, and the copies
    together must span V.
    """
    n = _require_weight(V, n)
    if method == "weights":
        result = _decompose_by_weights(V, n)
    elif method == "averaging":
        result = _decompose_by_averaging(V, n)
    else:
        raise InvalidArgument(f"unknown method {method!r}")
    total = Span()
    for iso in result:
        for copy in iso.copies:
            for v in copy:
                total.add(v)
    if total.dim != V.dim:
        raise ContractViolation(f"copies span {total.dim} of {V.dim} dimensions")
    return result


def _check_copy(V: DenseRep, W: MonomialRep, basis):
    """basis[i] = image of W's i-th basis vector; verify equivariance on generators."""
    level = V.level
    for g in V.heis.generators():
        perm, phases = W.action(g)
        M = V.matrix(g)
        for i, v in enumerate(basis):
            want = vec_scale(basis[perm[i]], CycNumber.from_qmodz(phases[i], level))
            if M.apply(v) != want:
                raise ContractViolation(f"copy of {W} is not equivariant at {g}")


def _decompose_by_weights(V: DenseRep, n: int) -> list:
    H = V.heis
    K = H.K
    data = weight_data(H, n)
    spaces = k1_weight_spaces(V, n)
    reps = sorted({data.coset_rep(y) for y in spaces})
    kgens = []
    for step, i in zip(data.kernel_steps, data.kernel_slots):
        kgens.append(tuple(step if t == i else 0 for t in range(K.rank)))
    out = []
    for y in reps:
        if y not in spaces:
            continue
        Vy = spaces[y]
        # coordinates of V_y, so the kernel action can be diagonalized inside it
        span_y = Span(Vy)
        ker_mats = [restrict_to(V.w_matrix(k), span_y, V.level) for k in kgens]
        for chi in data.characters():
            eigs = [QmodZ(c, g) for c, g in zip(chi.coeffs, data.kernel_group.divisors)]
            local = _eigenspace(ker_mats, eigs, len(Vy), V.level)
            if not local:
                continue
            W = MonomialRep(data, y, chi)
            copies = []
            for coeffs in local:
                s = {}
                for k, c in coeffs.items():
                    s = vec_add(s, Vy[k], c)
                basis = [V.w_matrix(data.section[z]).apply(s) for z in W.zs]
                _check_copy(V, W, basis)
                copies.append(basis)
            out.append(Isotypic(y, chi.coeffs, copies))
    return out


def restrict_to(A: Matrix, span: Span, level: int) -> Matrix:
    try:
        return restrict(A, span)
    except ValueError as exc:
        raise ContractViolation("kernel of pi_n does not preserve a K1 weight space") from exc


def _decompose_by_averaging(V: DenseRep, n: int) -> list:
    H = V.heis
    K = H.K
    data = weight_data(H, n)
    zero = QmodZ(0)
    group = [(zero, x, w) for x in K.elements() for w in K.elements()]
    mats = [V.matrix(g) for g in group]
    out = []
    classes = sorted({(data.coset_rep(y), chi.coeffs) for y in K.elements() for chi in data.characters()})
    remaining = V.dim
    for y, coeffs in classes:
        if remaining == 0:
            break
        W = MonomialRep(data, y, KernelCharacter(data, coeffs))
        D = W.dim
        acts = []
        for g in group:
            # row 0 of rho_W(g^-1) has a single entry, in column j with perm[j] == 0
            perm, phases = W.action(H.inv(g))
            j = perm.index(0)
            acts.append((j, CycNumber.from_qmodz(phases[j], V.level)))
        found = Span()
        copies = []
        for a in range(V.dim):
            cols = [{} for _ in range(D)]
            for M, (j, ph) in zip(mats, acts):
                col = M.column(a)
                if col:
                    cols[j] = vec_add(cols[j], col, ph)
            flat = {}
            for j, col in enumerate(cols):
                for i, x in col.items():
                    flat[j * V.dim + i] = x
            if flat and found.add(flat):
                _check_copy(V, W, cols)
                copies.append(cols)
        if copies:
            remaining -= D * len(copies)
            out.append(Isotypic(y, coeffs, copies))
    return out


# -- induction -------------------------------------------------------------------


@dataclass
class Induction:
    rep: DenseRep
    irrep: MonomialRep
    intertwiner: Matrix  # sends the coset basis to W's basis


def induce_with_intertwiner(G, n: int, y, chi=None) -> Induction:
    """Ind from G(ker pi_n) of the character n*alpha + <x, y> + chi(w).

    Coset representatives are t_z = (0, 0, s(z)) for z in image(pi_n).  The
    map t_z (x) 1 -> rho_W(t_z) e_y is checked to intertwine on every element
    of G', and the characters are compared.
    """
    W = build_irrep(G, n, y, chi)
    H = W.heis
    K = H.K
    data = W.data
    sec = data.section
    level = W.level
    reps = {z: (QmodZ(0), K.zero(), sec[z]) for z in W.zs}
    index = {z: i for i, z in enumerate(W.zs)}

    def lam(h):
        alpha, x, w = h
        if any(K.scale(n, w)):
            raise ContractViolation("coset computation left the inducing subgroup")
        return alpha * n + H.pair(x, W.y) + W.chi(w)

    def action(g):
        perm, phases = [], []
        for z in W.zs:
            gt = H.mul(g, reps[z])
            z2 = K.scale(n, gt[2])
            h = H.mul(H.inv(reps[z2]), gt)
            perm.append(index[z2])
            phases.append(lam(h))
        return perm, phases

    z0 = K.zero()
    X = [Matrix.monomial(*action((QmodZ(0), e, z0)), level) for e in K.basis()]
    Y = [Matrix.monomial(*action((QmodZ(0), z0, e)), level) for e in K.basis()]
    rep = DenseRep(H, level, X, Y, {n: Matrix.identity(W.dim, level)})
    # Psi(t_z (x) 1) = rho_W(t_z) e_y
    cols = []
    start = index[z0]
    for z in W.zs:
        perm, phases = W.action(reps[z])
        cols.append({perm[start]: CycNumber.from_qmodz(phases[start], level)})
    Psi = Matrix.from_columns(cols, W.dim, level)
    for g in GPrime(H).elements():
        if Psi @ rep.matrix(g) != W.matrix(g) @ Psi:
            raise ContractViolation(f"induction intertwiner fails at {g}")
    if character_vector(rep) != character_vector(W):
        raise ContractViolation("induced character differs from W_{y,chi}")
    return Induction(rep, W, Psi)


def induce(G, n: int, y, chi=None) -> DenseRep:
    return induce_with_intertwiner(G, n, y, chi).rep
