"""
Exact scalar fields and dense exact matrices.

Two kinds of fields are supported: the rationals (entries are ``gmpy2.mpq``,
always in lowest terms) and prime fields F_p (entries are Python ints in
``range(p)``).  Everything is exact; there is no floating point anywhere.

Tensor products of spaces use the lexicographic flattening
``e_i (x) e_j -> i * dim(w) + j`` (left factor major).  Every other module
relies on this convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq, is_prime


class LinalgError(ValueError):
    pass


class FieldMismatch(LinalgError):
    pass


class DimensionMismatch(LinalgError):
    pass


@dataclass(frozen=True)
class Field:
    """Either the rationals (``p == 0``) or the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p and not is_prime(self.p):
            raise LinalgError(f"{self.p} is not prime")

    @property
    def is_rational(self):
        return self.p == 0

    @property
    def characteristic(self):
        return self.p

    @property
    def zero(self):
        return mpq(0) if self.p == 0 else 0

    @property
    def one(self):
        return mpq(1) if self.p == 0 else 1

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, mpq or ``"a/b"`` string) into the field."""
        p = self.p
        if isinstance(x, str):
            x = x.strip()
        if p == 0:
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, (Fraction,)) or type(x).__name__ == "mpq":
            num, den = int(x.numerator), int(x.denominator)
            if den % p == 0:
                raise LinalgError(f"denominator {den} vanishes mod {p}")
            return num * pow(den, -1, p) % p
        return int(x) % p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / x
        return pow(int(x), -1, self.p)

    def elements(self):
        """All elements (prime fields only)."""
        if self.p == 0:
            raise LinalgError("the rationals are infinite")
        return range(self.p)

    def to_json(self):
        return "Q" if self.p == 0 else {"Fp": self.p}

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


def GF(p):
    return Field(p)


def scalar_to_json(x):
    if type(x) is int:
        return x
    x = mpq(x)
    if x.denominator == 1:
        return int(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# row reduction core
#
# Rows are dicts {column: nonzero value}.  ``Eliminator`` keeps a fully reduced
# row echelon basis of the row space seen so far; since the RREF of a row space
# is unique, everything derived from it (pivots, kernel basis) does not depend
# on the order in which rows are fed in.


class Eliminator:
    def __init__(self, ncols, field):
        self.ncols = ncols
        self.field = field
        self.pivots = {}  # pivot column -> reduced row (dict), row[pivot] == 1

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        """Reduce a sparse row against the current pivots (returns a new dict)."""
        p = self.field.p
        row = dict(row)
        pivots = self.pivots
        hits = [c for c in row if c in pivots]
        for c in hits:
            a = row.pop(c, 0)
            if not a:
                continue
            for j, v in pivots[c].items():
                if j == c:
                    continue
                w = row.get(j, 0) - a * v
                if p:
                    w %= p
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
        return row

    def add(self, row):
        """Insert a row; returns True iff it enlarged the row space."""
        if len(self.pivots) == self.ncols:
            return False
        row = self.reduce(row)
        if not row:
            return False
        p = self.field.p
        c = min(row)
        inv = self.field.inv(row[c])
        if p:
            row = {j: v * inv % p for j, v in row.items()}
        else:
            row = {j: v * inv for j, v in row.items()}
        for q, prow in self.pivots.items():
            a = prow.get(c)
            if not a:
                continue
            for j, v in row.items():
                w = prow.get(j, 0) - a * v
                if p:
                    w %= p
                if w:
                    prow[j] = w
                else:
                    prow.pop(j, None)
        self.pivots[c] = row
        return True

    def free_columns(self):
        return [j for j in range(self.ncols) if j not in self.pivots]

    def kernel_vectors(self):
        """Kernel basis as dense lists, one per free column (in column order)."""
        field = self.field
        zero, one = field.zero, field.one
        p = field.p
        out = []
        free = self.free_columns()
        # column f of the reduced rows
        col = {f: {} for f in free}
        for c, row in self.pivots.items():
            for j, v in row.items():
                if j != c:
                    col[j][c] = v
        for f in free:
            v = [zero] * self.ncols
            v[f] = one
            for c, a in col[f].items():
                v[c] = (-a) % p if p else -a
            out.append(v)
        return out

    def rref_rows(self):
        zero = self.field.zero
        rows = []
        for c in sorted(self.pivots):
            r = [zero] * self.ncols
            for j, v in self.pivots[c].items():
                r[j] = v
            rows.append(r)
        return rows


def sparse_row(seq):
    return {j: v for j, v in enumerate(seq) if v}


# ---------------------------------------------------------------------------


class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("rows", "cols", "field", "data", "_hash")

    def __init__(self, field, rows, cols, data):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        data = tuple(tuple(field(x) for x in r) for r in rows)
        return cls(field, len(rows), cols, data)

    @classmethod
    def _raw(cls, field, rows):
        """Build from already-normalized nested lists (no coercion)."""
        cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def column(cls, field, values):
        return cls(field, len(values), 1, tuple((field(v),) for v in values))

    @classmethod
    def from_columns(cls, field, columns, rows=None):
        columns = list(columns)
        if not columns:
            return cls.zeros(field, rows or 0, 0)
        n = len(columns[0])
        return cls(field, n, len(columns), tuple(tuple(c[i] for c in columns) for i in range(n)))

    @classmethod
    def diagonal_blocks(cls, field, blocks):
        r = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        out = [[field.zero] * c for _ in range(r)]
        i0 = j0 = 0
        for b in blocks:
            for i in range(b.rows):
                out[i0 + i][j0:j0 + b.cols] = b.data[i]
            i0 += b.rows
            j0 += b.cols
        return cls(field, r, c, tuple(tuple(x) for x in out))

    # basics -------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def tolist(self):
        return [list(r) for r in self.data]

    def to_json(self):
        return [[scalar_to_json(x) for x in r] for r in self.data]

    def col(self, j):
        return [r[j] for r in self.data]

    def columns(self):
        return [list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        if self.rows * self.cols > 64:
            return f"Matrix<{self.rows}x{self.cols} over {self.field!r}>"
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Matrix[{body}]"

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def is_zero(self):
        return not any(any(r) for r in self.data)

    def is_identity(self):
        return self.rows == self.cols and self == Matrix.identity(self.field, self.rows)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        p = self.field.p
        if p:
            data = tuple(tuple((a + b) % p for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        else:
            data = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        return Matrix(self.field, self.rows, self.cols, data)

    def __neg__(self):
        p = self.field.p
        if p:
            data = tuple(tuple((-a) % p for a in r) for r in self.data)
        else:
            data = tuple(tuple(-a for a in r) for r in self.data)
        return Matrix(self.field, self.rows, self.cols, data)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field(c)
        p = self.field.p
        if p:
            data = tuple(tuple(a * c % p for a in r) for r in self.data)
        else:
            data = tuple(tuple(a * c for a in r) for r in self.data)
        return Matrix(self.field, self.rows, self.cols, data)

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        p = self.field.p
        zero = self.field.zero
        n = other.cols
        bdata = other.data
        out = []
        for r in self.data:
            acc = [zero] * n
            for k, a in enumerate(r):
                if not a:
                    continue
                brow = bdata[k]
                for j in range(n):
                    b = brow[j]
                    if b:
                        acc[j] += a * b
            if p:
                acc = [x % p for x in acc]
            out.append(tuple(acc))
        return Matrix(self.field, self.rows, n, tuple(out))

    @property
    def T(self):
        if self.rows == 0:
            return Matrix(self.field, self.cols, 0, tuple(() for _ in range(self.cols)))
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.data)))

    def apply(self, vec):
        """Matrix times a plain list, returning a list."""
        p = self.field.p
        out = []
        for r in self.data:
            s = self.field.zero
            for a, b in zip(r, vec):
                if a and b:
                    s += a * b
            out.append(s % p if p else s)
        return out

    def hstack(self, other):
        self._check(other)
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      tuple(a + b for a, b in zip(self.data, other.data)))

    def vstack(self, other):
        self._check(other)
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column mismatch")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.data + other.data)

    def submatrix(self, rows, cols):
        return Matrix(self.field, len(rows), len(cols),
                      tuple(tuple(self.data[i][j] for j in cols) for i in rows))

    # elimination --------------------------------------------------------

    def _eliminator(self):
        e = Eliminator(self.cols, self.field)
        for r in self.data:
            e.add(sparse_row(r))
        return e

    def rank(self):
        return self._eliminator().rank

    def rref(self):
        """(reduced row echelon form, pivot columns)."""
        e = self._eliminator()
        rows = e.rref_rows()
        pivots = sorted(e.pivots)
        if not rows:
            return Matrix.zeros(self.field, 0, self.cols), pivots
        return Matrix._raw(self.field, rows), pivots

    def inverse(self):
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of non-square matrix")
        n = self.rows
        f = self.field
        aug = self.hstack(Matrix.identity(f, n))
        e = aug._eliminator()
        if any(c not in e.pivots for c in range(n)):
            raise LinalgError("matrix is singular")
        z = f.zero
        rows = []
        for c in range(n):
            row = e.pivots[c]
            rows.append([row.get(n + j, z) for j in range(n)])
        return Matrix._raw(f, rows) if n else Matrix.zeros(f, 0, 0)

    def det(self):
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of non-square matrix")
        f = self.field
        p = f.p
        a = [list(r) for r in self.data]
        n = self.rows
        d = f.one
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                return f.zero
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                d = -d
            pc = a[c][c]
            d = d * pc
            inv = f.inv(pc)
            for i in range(c + 1, n):
                if a[i][c]:
                    m = a[i][c] * inv
                    ri, rc = a[i], a[c]
                    for j in range(c, n):
                        if rc[j]:
                            ri[j] = ri[j] - m * rc[j]
                            if p:
                                ri[j] %= p
        return d % p if p else d

    def is_invertible(self):
        return self.rows == self.cols and bool(self.det())


def _as_matrix(x):
    if not isinstance(x, Matrix):
        raise TypeError(f"expected Matrix, got {type(x).__name__}")
    return x


def kronecker(a, b):
    """Kronecker product with lexicographic flattening: (a(x)b)[(i,j),(k,l)] = a[i,k] b[j,l]."""
    _as_matrix(a)._check(_as_matrix(b))
    p = a.field.p
    z = a.field.zero
    rows = []
    for ra in a.data:
        for rb in b.data:
            if p:
                rows.append(tuple((x * y) % p if x and y else 0 for x in ra for y in rb))
            else:
                rows.append(tuple(x * y if x and y else z for x in ra for y in rb))
    return Matrix(a.field, a.rows * b.rows, a.cols * b.cols, tuple(rows))


def kernel_vectors(rows: Iterable[dict], ncols, field):
    """Kernel basis (dense lists) of the matrix whose sparse rows are given."""
    e = Eliminator(ncols, field)
    for r in rows:
        e.add(r)
    return e.kernel_vectors(), e.free_columns()


def kernel_basis(a):
    """Basis of {x : a x = 0} as column matrices, ordered by free column."""
    vecs = a._eliminator().kernel_vectors()
    return [Matrix(a.field, a.cols, 1, tuple((x,) for x in v)) for v in vecs]


@dataclass(frozen=True)
class Solution:
    particular: Matrix | None
    kernel_basis: list

    @property
    def consistent(self):
        return self.particular is not None


def solve_linear(a, b):
    """Solve a x = b.  Returns one particular solution (free variables set to
    zero) when consistent, and a kernel basis of ``a`` in any case."""
    a._check(b)
    if a.rows != b.rows:
        raise DimensionMismatch(f"a has {a.rows} rows, b has {b.rows}")
    n = a.cols
    f = a.field
    e = Eliminator(n + b.cols, f)
    for ra, rb in zip(a.data, b.data):
        e.add(sparse_row(ra + rb))
    kernel = kernel_basis(a)
    if any(c >= n for c in e.pivots):
        return Solution(None, kernel)
    z = f.zero
    x = [[z] * b.cols for _ in range(n)]
    for c, row in e.pivots.items():
        for j, v in row.items():
            if j >= n:
                x[c][j - n] = v
    return Solution(Matrix._raw(f, x) if n else Matrix.zeros(f, 0, b.cols), kernel)


class Subspace:
    """Span of the columns of an RREF-derived kernel basis.

    ``vectors`` are dense lists; ``free`` are the coordinate positions at which
    the basis is the identity, so coordinates of a vector in the span are just
    its entries at ``free``.
    """

    __slots__ = ("field", "ambient", "vectors", "free")

    def __init__(self, field, ambient, vectors, free):
        self.field = field
        self.ambient = ambient
        self.vectors = vectors
        self.free = free

    @classmethod
    def kernel(cls, rows, ncols, field):
        vecs, free = kernel_vectors(rows, ncols, field)
        return cls(field, ncols, vecs, free)

    @property
    def dim(self):
        return len(self.vectors)

    def coords(self, v):
        return [v[j] for j in self.free]

    def basis_matrix(self):
        return Matrix.from_columns(self.field, self.vectors, self.ambient)

    def combine(self, coeffs):
        p = self.field.p
        out = [self.field.zero] * self.ambient
        for c, v in zip(coeffs, self.vectors):
            if not c:
                continue
            for j, x in enumerate(v):
                if x:
                    out[j] += c * x
        if p:
            out = [x % p for x in out]
        return out

    def contains(self, v):
        return list(v) == self.combine(self.coords(v))


def matrices_equal_all(ms: Sequence[Matrix], ns: Sequence[Matrix]):
    return len(ms) == len(ns) and all(a == b for a, b in zip(ms, ns))
