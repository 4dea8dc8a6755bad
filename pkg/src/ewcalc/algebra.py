"""Finite-dimensional unital associative algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .linalg import QQ, Field, Matrix, Eliminator, LinalgError, sparse_row, FieldMismatch


class AlgebraError(ValueError):
    pass


class Algebra:
    """An algebra with basis e_0..e_{n-1} and e_i e_j = sum_k mult[i][j][k] e_k."""

    def __init__(self, field: Field, mult, unit, label=""):
        n = len(unit)
        if len(mult) != n or any(len(row) != n for row in mult) or any(
                len(c) != n for row in mult for c in row):
            raise AlgebraError(f"structure tensor shape does not match dim {n}")
        self.field = field
        self.dim = n
        self.mult = tuple(tuple(tuple(field(x) for x in c) for c in row) for row in mult)
        self.unit = tuple(field(x) for x in unit)
        self.label = label
        self._hash = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.field == other.field and self.dim == other.dim
                and self.unit == other.unit and self.mult == other.mult)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.unit, self.mult))
        return self._hash

    def __repr__(self):
        return f"Algebra({self.label or '?'}, dim={self.dim}, {self.field!r})"

    @property
    def is_base_field(self):
        return self.dim == 1

    # multiplication -----------------------------------------------------

    def product(self, u, v):
        """Product of two coefficient vectors."""
        f = self.field
        p = f.p
        out = [f.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.mult[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        if p:
            out = [x % p for x in out]
        return out

    def basis_vector(self, i):
        f = self.field
        return [f.one if j == i else f.zero for j in range(self.dim)]

    @cached_property
    def left_mult(self):
        """L[i]: the matrix of x -> e_i x."""
        n = self.dim
        return tuple(Matrix(self.field, n, n, tuple(
            tuple(self.mult[i][j][k] for j in range(n)) for k in range(n))) for i in range(n))

    @cached_property
    def right_mult(self):
        """R[i]: the matrix of x -> x e_i."""
        n = self.dim
        return tuple(Matrix(self.field, n, n, tuple(
            tuple(self.mult[j][i][k] for j in range(n)) for k in range(n))) for i in range(n))

    def left_mult_by(self, vec):
        return _combine(self.field, vec, self.left_mult, self.dim)

    def right_mult_by(self, vec):
        return _combine(self.field, vec, self.right_mult, self.dim)

    @cached_property
    def generators(self):
        """Indices of basis elements generating the algebra (greedy, in basis order).

        Module conditions only need checking on generators; the solution
        spaces, hence every RREF-derived basis, are unchanged.
        """
        gens = []
        span = _SpanTracker(self)
        for i in range(self.dim):
            if span.contains(self.basis_vector(i)):
                continue
            gens.append(i)
            span.close_under(gens)
            if span.full:
                break
        return tuple(gens)

    def is_commutative(self):
        n = self.dim
        return all(self.mult[i][j] == self.mult[j][i] for i in range(n) for j in range(i + 1, n))

    def unit_coords(self):
        return list(self.unit)


def _combine(field, coeffs, mats, n):
    out = Matrix.zeros(field, n, n)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + m.scale(c)
    return out


class _SpanTracker:
    """Subalgebra generated by a set of basis elements."""

    def __init__(self, alg):
        self.alg = alg
        self.elim = Eliminator(alg.dim, alg.field)
        self.vectors = []
        self._add(alg.unit)

    @property
    def full(self):
        return self.elim.rank == self.alg.dim

    def _add(self, v):
        if self.elim.add(sparse_row(v)):
            self.vectors.append(list(v))
            return True
        return False

    def contains(self, v):
        return not self.elim.reduce(sparse_row(v))

    def close_under(self, gens):
        for g in gens:
            self._add(self.alg.basis_vector(g))
        frontier = list(self.vectors)
        while frontier and not self.full:
            new = []
            for v in frontier:
                for g in gens:
                    w = self.alg.product(v, self.alg.basis_vector(g))
                    if self._add(w):
                        new.append(w)
            frontier = new


# ---------------------------------------------------------------------------
# validation


def validate_algebra(a: Algebra):
    """List of violated identities; empty iff ``a`` is unital associative."""
    n = a.dim
    c = a.mult
    f = a.field
    p = f.p
    report = []
    for i in range(n):
        for j in range(n):
            cij = c[i][j]
            for k in range(n):
                lhs = [f.zero] * n  # (e_i e_j) e_k
                rhs = [f.zero] * n  # e_i (e_j e_k)
                for m in range(n):
                    if cij[m]:
                        for l, x in enumerate(c[m][k]):
                            if x:
                                lhs[l] += cij[m] * x
                    y = c[j][k][m]
                    if y:
                        for l, x in enumerate(c[i][m]):
                            if x:
                                rhs[l] += y * x
                if p:
                    lhs = [x % p for x in lhs]
                    rhs = [x % p for x in rhs]
                if lhs != rhs:
                    report.append({"identity": "associativity", "indices": [i, j, k]})
    for j in range(n):
        ej = a.basis_vector(j)
        if a.product(a.unit, ej) != ej:
            report.append({"identity": "left unit", "indices": [j]})
        if a.product(ej, a.unit) != ej:
            report.append({"identity": "right unit", "indices": [j]})
    return report


@dataclass(frozen=True)
class AlgebraMorphism:
    source: Algebra
    target: Algebra
    matrix: Matrix  # dim_target x dim_source

    def __call__(self, vec):
        return self.matrix.apply(vec)

    def image(self, i):
        return self.matrix.col(i)

    def violations(self):
        s, t = self.source, self.target
        if s.field != t.field:
            raise FieldMismatch("algebra morphism between different fields")
        if self.matrix.shape != (t.dim, s.dim):
            raise AlgebraError("morphism matrix has wrong shape")
        out = []
        if self(list(s.unit)) != list(t.unit):
            out.append({"identity": "unit"})
        for i in range(s.dim):
            for j in range(s.dim):
                lhs = self(list(s.mult[i][j]))
                rhs = t.product(self.image(i), self.image(j))
                if lhs != rhs:
                    out.append({"identity": "multiplicativity", "indices": [i, j]})
        return out

    def is_valid(self):
        return not self.violations()

    def is_identity(self):
        return self.source == self.target and self.matrix.is_identity()

    def compose(self, other):
        """self after other."""
        return AlgebraMorphism(other.source, self.target, self.matrix @ other.matrix)


def identity_morphism(a):
    return AlgebraMorphism(a, a, Matrix.identity(a.field, a.dim))


# ---------------------------------------------------------------------------
# constructions


_BASE_FIELDS = {}


def base_field(field=QQ):
    """The field itself as a 1-dimensional algebra (one object per field)."""
    if field not in _BASE_FIELDS:
        _BASE_FIELDS[field] = Algebra(field, [[[1]]], [1], label="k")
    return _BASE_FIELDS[field]


def opposite(a: Algebra):
    n = a.dim
    mult = [[a.mult[j][i] for j in range(n)] for i in range(n)]
    if a.is_base_field:
        return a
    return Algebra(a.field, mult, a.unit, label=f"{a.label}^op")


def tensor_algebra(a: Algebra, b: Algebra):
    """a (x)_k b with basis e_i (x) f_j at index i * dim b + j."""
    if a.field != b.field:
        raise FieldMismatch("tensor_algebra over different fields")
    if a.is_base_field and a == base_field(a.field):
        return b
    if b.is_base_field and b == base_field(b.field):
        return a
    f = a.field
    p = f.p
    na, nb = a.dim, b.dim
    n = na * nb
    mult = []
    for i in range(na):
        for j in range(nb):
            row = []
            for k in range(na):
                for l in range(nb):
                    ca, cb = a.mult[i][k], b.mult[j][l]
                    v = [f.zero] * n
                    for s, x in enumerate(ca):
                        if x:
                            for t, y in enumerate(cb):
                                if y:
                                    v[s * nb + t] = (x * y % p) if p else x * y
                    row.append(v)
            mult.append(row)
    unit = [x * y for x in a.unit for y in b.unit]
    return Algebra(f, mult, unit, label=f"({a.label} (x) {b.label})")


def matrix_algebra(n, field=QQ):
    """M_n(k) with matrix units E_ij at index i*n + j."""
    d = n * n
    mult = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(n):
        for j in range(n):
            for l in range(n):
                mult[i * n + j][j * n + l][i * n + l] = 1
    unit = [1 if (k // n) == (k % n) else 0 for k in range(d)]
    return Algebra(field, mult, unit, label=f"M{n}")


def upper_triangular(n, field=QQ):
    """Upper triangular n x n matrices, basis E_ij (i <= j) in lexicographic order."""
    units = [(i, j) for i in range(n) for j in range(i, n)]
    index = {u: k for k, u in enumerate(units)}
    d = len(units)
    mult = [[[0] * d for _ in range(d)] for _ in range(d)]
    for a, (i, j) in enumerate(units):
        for b, (k, l) in enumerate(units):
            if j == k:
                mult[a][b][index[(i, l)]] = 1
    unit = [1 if i == j else 0 for (i, j) in units]
    return Algebra(field, mult, unit, label=f"UT{n}")


def truncated_polynomial(n, field=QQ):
    """k[x]/(x^n) with basis 1, x, ..., x^{n-1}."""
    mult = [[[1 if (i + j == k) else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    return Algebra(field, mult, [1] + [0] * (n - 1), label=f"k[x]/x^{n}")


def group_algebra(table, field=QQ, label="kG"):
    """Group algebra from a multiplication table ``table[i][j] = index of g_i g_j``.

    The identity element must be one of the group elements; it need not be
    index 0.
    """
    n = len(table)
    for row in table:
        if sorted(row) != list(range(n)):
            raise AlgebraError("group table is not a Latin square")
    if any(sorted(table[i][j] for i in range(n)) != list(range(n)) for j in range(n)):
        raise AlgebraError("group table is not a Latin square")
    ident = [e for e in range(n) if all(table[e][j] == j and table[j][e] == j for j in range(n))]
    if not ident:
        raise AlgebraError("group table has no identity")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise AlgebraError("group table is not associative")
    mult = [[[1 if table[i][j] == k else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    unit = [1 if k == ident[0] else 0 for k in range(n)]
    return Algebra(field, mult, unit, label=label)


def cyclic_group_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def cyclic_group_algebra(n, field=QQ):
    return group_algebra(cyclic_group_table(n), field, label=f"kC{n}")


def algebra_morphism(source, target, images):
    """Morphism given by the images (coefficient vectors) of the basis of ``source``."""
    f = source.field
    cols = [[f(x) for x in v] for v in images]
    m = Matrix.from_columns(f, cols, target.dim)
    return AlgebraMorphism(source, target, m)


def transpose_isomorphism(a: Algebra):
    """For a = M_n(k): the map E_ij -> E_ji, an isomorphism a^op -> a."""
    n = round(a.dim ** 0.5)
    if n * n != a.dim or a != matrix_algebra(n, a.field):
        raise AlgebraError("transpose isomorphism needs a standard matrix algebra")
    images = []
    for k in range(a.dim):
        i, j = divmod(k, n)
        images.append(a.basis_vector(j * n + i))
    return algebra_morphism(opposite(a), a, images)


def check_field(*algs):
    fields = {a.field for a in algs}
    if len(fields) > 1:
        raise FieldMismatch(f"algebras over different fields: {fields}")
    return fields.pop()


__all__ = [
    "Algebra", "AlgebraError", "AlgebraMorphism", "LinalgError", "algebra_morphism",
    "base_field", "cyclic_group_algebra", "group_algebra", "identity_morphism",
    "matrix_algebra", "opposite", "tensor_algebra", "transpose_isomorphism",
    "truncated_polynomial", "upper_triangular", "validate_algebra",
]
