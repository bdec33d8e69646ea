"""Exact vectors and matrices over the working field.

Desk-scale dimensions only (the elimination kernel is shared by rank,
solve, det and inverse; nothing is cached).  Pivoting picks the entry of
minimal valuation, the ultrametric analogue of partial pivoting; results
are exact either way, this only keeps intermediate fractions small.
"""

from __future__ import annotations

from .scalars import FieldConfig, NormValue, Scalar, abs_value


class Vector:
    """Fixed-length tuple of scalars over one field."""

    __slots__ = ("cfg", "entries")

    def __init__(self, cfg: FieldConfig, entries):
        entries = tuple(entries)
        for x in entries:
            if x.cfg != cfg:
                raise ValueError("vector entries from a different field")
        object.__setattr__(self, "cfg", cfg)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    @classmethod
    def from_ints(cls, cfg, values):
        return cls(cfg, [cfg.from_int(v) for v in values])

    @classmethod
    def zero(cls, cfg, m):
        return cls.from_ints(cfg, [0] * m)

    @classmethod
    def unit(cls, cfg, m, i):
        return cls.from_ints(cfg, [1 if j == i else 0 for j in range(m)])

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def is_zero(self):
        return all(x.is_zero() for x in self.entries)

    def __add__(self, other):
        self._compat(other)
        return Vector(self.cfg, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._compat(other)
        return Vector(self.cfg, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Vector(self.cfg, [-a for a in self.entries])

    def scale(self, x: Scalar):
        return Vector(self.cfg, [x * a for a in self.entries])

    def _compat(self, other):
        if not isinstance(other, Vector) or other.cfg != self.cfg or len(other) != len(self):
            raise ValueError("incompatible vectors")

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.cfg == other.cfg and self.entries == other.entries

    def __hash__(self):
        return hash((self.cfg, self.entries))

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.entries) + ")"

    __repr__ = __str__


class Matrix:
    """Rectangular array of scalars, stored by rows."""

    __slots__ = ("cfg", "rows", "nrows", "ncols")

    def __init__(self, cfg: FieldConfig, rows):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for x in r:
                if x.cfg != cfg:
                    raise ValueError("matrix entries from a different field")
        object.__setattr__(self, "cfg", cfg)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, cfg, rows):
        return cls(cfg, rows)

    @classmethod
    def from_cols(cls, cfg, cols):
        cols = [list(c) for c in cols]
        return cls(cfg, [[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))])

    @classmethod
    def from_int_rows(cls, cfg, rows):
        return cls(cfg, [[cfg.from_int(v) for v in r] for r in rows])

    @classmethod
    def identity(cls, cfg, n):
        return cls.from_int_rows(cfg, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def col(self, j) -> Vector:
        return Vector(self.cfg, [r[j] for r in self.rows])

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cfg, [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"dimension mismatch {self.ncols} vs {other.nrows}")
        zero = self.cfg.zero()
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(self.cfg, out)

    def mat_vec(self, v: Vector) -> Vector:
        if self.ncols != len(v):
            raise ValueError("dimension mismatch")
        zero = self.cfg.zero()
        out = []
        for i in range(self.nrows):
            acc = zero
            for k in range(self.ncols):
                acc = acc + self.rows[i][k] * v[k]
            out.append(acc)
        return Vector(self.cfg, out)

    def scale(self, x: Scalar) -> "Matrix":
        return Matrix(self.cfg, [[x * e for e in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.cfg == other.cfg and self.rows == other.rows

    def __hash__(self):
        return hash((self.cfg, self.rows))

    def __str__(self):
        return "\n".join("  ".join(str(x) for x in r) for r in self.rows)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.cfg.kind} p={self.cfg.p})"


def dot(x: Vector, y: Vector) -> Scalar:
    x._compat(y)
    acc = x.cfg.zero()
    for a, b in zip(x, y):
        acc = acc + a * b
    return acc


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def transpose(a: Matrix) -> Matrix:
    return a.transpose()


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return a.mat_vec(v)


def _eliminate(rows, main_cols):
    """Forward elimination in place over the first `main_cols` columns.

    Returns (pivot positions, number of row swaps).  Pivot choice:
    minimal valuation in the current column.
    """
    nrows = len(rows)
    pivots = []
    swaps = 0
    r = 0
    for c in range(main_cols):
        best = None
        best_val = None
        for i in range(r, nrows):
            x = rows[i][c]
            if x.is_zero():
                continue
            v = x.valuation()
            if best is None or v < best_val:
                best, best_val = i, v
        if best is None:
            continue
        if best != r:
            rows[r], rows[best] = rows[best], rows[r]
            swaps += 1
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            x = rows[i][c]
            if x.is_zero():
                continue
            f = x / piv
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    return pivots, swaps


def det(a: Matrix) -> Scalar:
    """Exact determinant; raises on non-square input."""
    if a.nrows != a.ncols:
        raise ValueError("determinant of a non-square matrix")
    rows = [list(r) for r in a.rows]
    pivots, swaps = _eliminate(rows, a.ncols)
    if len(pivots) < a.ncols:
        return a.cfg.zero()
    out = a.cfg.one()
    for r, c in pivots:
        out = out * rows[r][c]
    if swaps % 2:
        out = -out
    return out


def rank(a: Matrix) -> int:
    rows = [list(r) for r in a.rows]
    pivots, _ = _eliminate(rows, a.ncols)
    return len(pivots)


def solve(a: Matrix, b: Vector) -> Vector:
    """Unique c with a @ c = b; needs independent columns and b in their span."""
    if a.nrows != len(b):
        raise ValueError("dimension mismatch")
    rows = [list(r) + [b[i]] for i, r in enumerate(a.rows)]
    pivots, _ = _eliminate(rows, a.ncols)
    if len(pivots) < a.ncols:
        raise ValueError("columns are linearly dependent")
    for i in range(len(pivots), a.nrows):
        if not rows[i][a.ncols].is_zero():
            raise ValueError("vector outside the column span")
    zero = a.cfg.zero()
    sol = [zero] * a.ncols
    for r, c in reversed(pivots):
        acc = rows[r][a.ncols]
        for j in range(c + 1, a.ncols):
            acc = acc - rows[r][j] * sol[j]
        sol[c] = acc / rows[r][c]
    return Vector(a.cfg, sol)


def inverse(a: Matrix) -> Matrix:
    """Exact inverse; raises on singular input."""
    if a.nrows != a.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = a.ncols
    ident = Matrix.identity(a.cfg, n)
    rows = [list(r) + list(ident.rows[i]) for i, r in enumerate(a.rows)]
    pivots, _ = _eliminate(rows, n)
    if len(pivots) < n:
        raise ValueError("singular matrix")
    # back-substitute each augmented column
    zero = a.cfg.zero()
    out = [[zero] * n for _ in range(n)]
    for k in range(n):
        col = [zero] * n
        for r, c in reversed(pivots):
            acc = rows[r][n + k]
            for j in range(c + 1, n):
                acc = acc - rows[r][j] * col[j]
            col[c] = acc / rows[r][c]
        for i in range(n):
            out[i][k] = col[i]
    return Matrix(a.cfg, out)


def is_unimodular(c: Matrix) -> bool:
    """True iff all entries are integral and |det| = 1 (a GL_n(O_k) member)."""
    if c.nrows != c.ncols:
        raise ValueError("unimodularity of a non-square matrix")
    for row in c.rows:
        for x in row:
            if not x.is_zero() and x.valuation() < 0:
                return False
    d = det(c)
    return abs_value(d) == NormValue.one(c.cfg.p)


def gram(b: Matrix) -> Matrix:
    """BᵗB, the pairwise dot products of the columns."""
    return b.transpose() @ b
