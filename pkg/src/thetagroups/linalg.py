"""Sparse exact linear algebra over a cyclotomic field.

Matrices hold one dict per row mapping column -> nonzero CycNumber; vectors
are dicts index -> CycNumber.  Most matrices met in practice are monomial or
close to it, so skipping zeros matters far more than anything clever.
"""

from __future__ import annotations

from .roots import CycNumber


def vec_add(u: dict, v: dict, c=None) -> dict:
    """u + c*v (c defaults to 1), dropping zeros."""
    out = dict(u)
    for k, x in v.items():
        if c is not None:
            x = c * x
        if k in out:
            s = out[k] + x
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
        elif not x.is_zero():
            out[k] = x
    return out


def vec_scale(v: dict, c) -> dict:
    return {k: c * x for k, x in v.items()} if not _is_zero(c) else {}


def _is_zero(c):
    return c.is_zero() if isinstance(c, CycNumber) else c == 0


class Matrix:
    __slots__ = ("nrows", "ncols", "level", "rows")

    def __init__(self, nrows: int, ncols: int, level: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.level = level
        self.rows = rows if rows is not None else [{} for _ in range(nrows)]

    @classmethod
    def identity(cls, n: int, level: int) -> "Matrix":
        one = CycNumber.one(level)
        return cls(n, n, level, [{i: one} for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int, level: int) -> "Matrix":
        return cls(nrows, ncols, level)

    @classmethod
    def monomial(cls, perm, phases, level: int) -> "Matrix":
        """Matrix sending basis vector i to zeta(phases[i]) * basis vector perm[i]."""
        n = len(perm)
        M = cls(n, n, level)
        for i, (j, q) in enumerate(zip(perm, phases)):
            M.rows[j][i] = CycNumber.from_qmodz(q, level)
        return M

    @classmethod
    def from_columns(cls, cols, nrows: int, level: int) -> "Matrix":
        M = cls(nrows, len(cols), level)
        for j, col in enumerate(cols):
            for i, x in col.items():
                M.rows[i][j] = x
        return M

    @classmethod
    def block_diag(cls, blocks, level: int) -> "Matrix":
        n = sum(b.nrows for b in blocks)
        M = cls(n, n, level)
        off = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                M.rows[off + i] = {off + j: x for j, x in row.items()}
            off += b.nrows
        return M

    def copy(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols, self.level, [dict(r) for r in self.rows])

    def column(self, j: int) -> dict:
        return {i: row[j] for i, row in enumerate(self.rows) if j in row}

    def columns(self) -> list:
        cols = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, x in row.items():
                cols[j][i] = x
        return cols

    def __matmul__(self, other):
        if isinstance(other, dict):
            return self.apply(other)
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for row in self.rows:
            acc = {}
            for k, a in row.items():
                for j, b in other.rows[k].items():
                    acc[j] = acc[j] + a * b if j in acc else a * b
            out.append({j: x for j, x in acc.items() if not x.is_zero()})
        return Matrix(self.nrows, other.ncols, self.level, out)

    def apply(self, v: dict) -> dict:
        out = {}
        for i, row in enumerate(self.rows):
            acc = None
            for k, a in row.items():
                if k in v:
                    acc = a * v[k] if acc is None else acc + a * v[k]
            if acc is not None and not acc.is_zero():
                out[i] = acc
        return out

    def __add__(self, other):
        return Matrix(self.nrows, self.ncols, self.level,
                      [vec_add(a, b) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "Matrix":
        return Matrix(self.nrows, self.ncols, self.level, [vec_scale(r, c) for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        return all(a == b for a, b in zip(self.rows, other.rows))

    __hash__ = None

    def trace(self) -> CycNumber:
        acc = CycNumber.zero(self.level)
        for i, row in enumerate(self.rows):
            if i in row:
                acc = acc + row[i]
        return acc

    def conjugate_by(self, Q: "Matrix", Qinv: "Matrix") -> "Matrix":
        return Q @ self @ Qinv

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.nrows, self.level)

    def dense(self) -> list:
        zero = CycNumber.zero(self.level)
        return [[row.get(j, zero) for j in range(self.ncols)] for row in self.rows]

    def to_json(self) -> list:
        return [[x.to_json() for x in row] for row in self.dense()]

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, level={self.level})"


class Span:
    """Subspace spanned by a list of vectors, with coordinate recovery.

    Vectors are reduced to echelon form as they are added; each echelon
    vector remembers which combination of the accepted input vectors
    produced it, so :meth:`coords` can express a member of the span in the
    accepted basis.
    """

    def __init__(self, vectors=()):
        self.basis = []  # accepted input vectors, linearly independent
        self._echelon = []  # (pivot index, vector with pivot entry 1, combination dict)
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _reduce(self, v: dict):
        comb = {}
        for pivot, e, c in self._echelon:
            if pivot in v:
                f = v[pivot]
                v = vec_add(v, e, -f)
                comb = vec_add(comb, c, -f)
        return v, comb

    def add(self, v: dict) -> bool:
        """Add v if independent; return whether it was added."""
        r, comb = self._reduce(v)
        if not r:
            return False
        idx = len(self.basis)
        self.basis.append(v)
        pivot = min(r)
        inv = r[pivot].inverse()
        comb = vec_add(comb, {idx: CycNumber.one(r[pivot].level)})
        self._echelon.append((pivot, vec_scale(r, inv), vec_scale(comb, inv)))
        return True

    def contains(self, v: dict) -> bool:
        return not self._reduce(v)[0]

    def coords(self, v: dict) -> dict:
        """Coefficients of v in ``basis``; raises ValueError if v is outside the span."""
        r, comb = self._reduce(v)
        if r:
            raise ValueError("vector not in span")
        return {k: -x for k, x in comb.items()}


def column_space(M: Matrix) -> list:
    s = Span()
    for col in M.columns():
        if col:
            s.add(col)
    return s.basis


def rank(M: Matrix) -> int:
    return len(column_space(M))


def nullspace(M: Matrix) -> list:
    """Basis of {v : M v = 0}."""
    # reduced row echelon form of M
    rows = [dict(r) for r in M.rows if r]
    pivots = []
    done = []
    while rows:
        r = rows.pop()
        for p, e in done:
            if p in r:
                r = vec_add(r, e, -r[p])
        if not r:
            continue
        p = min(r)
        r = vec_scale(r, r[p].inverse())
        done = [(q, vec_add(e, r, -e[p]) if p in e else e) for q, e in done]
        done.append((p, r))
        pivots.append(p)
    pivot_set = {p for p, _ in done}
    one = CycNumber.one(M.level)
    basis = []
    for free in range(M.ncols):
        if free in pivot_set:
            continue
        v = {free: one}
        for p, e in done:
            if free in e:
                v[p] = -e[free]
        basis.append(v)
    return basis


def restrict(M: Matrix, span: Span) -> Matrix:
    """Matrix of M on an invariant subspace, in the span's basis.

    Raises ValueError if the subspace is not M-stable.
    """
    n = span.dim
    cols = [span.coords(M.apply(b)) for b in span.basis]
    return Matrix.from_columns(cols, n, M.level)


def inverse(M: Matrix) -> Matrix:
    """Inverse of a square matrix via coordinates in the column span."""
    n = M.nrows
    s = Span(M.columns())
    if s.dim != n:
        raise ValueError("matrix is singular")
    one = CycNumber.one(M.level)
    cols = [s.coords({i: one}) for i in range(n)]
    return Matrix.from_columns(cols, n, M.level)
