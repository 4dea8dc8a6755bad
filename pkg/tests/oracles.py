"""Independent reference computations, written without the package's linear algebra."""

from fractions import Fraction
from itertools import permutations


def _norm(x, p):
    return Fraction(x) if not p else int(x) % p


def _inv(x, p):
    return 1 / x if not p else pow(x, -1, p)


def naive_rank(rows, p=0):
    """Rank by textbook Gaussian elimination over Q (p = 0) or F_p."""
    m = [[_norm(x, p) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = _inv(m[rank][c], p)
        for r in range(len(m)):
            if r != rank and m[r][c]:
                t = m[r][c] * inv
                m[r] = [_norm(a - t * b, p) for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def leibniz_det(rows, p=0):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= Fraction(rows[i][perm[i]])
        total += term
    return _norm(total, p) if p else total


def matmul(a, b, p=0):
    out = [[sum(Fraction(a[i][k]) * Fraction(b[k][j]) for k in range(len(b)))
            for j in range(len(b[0]))] for i in range(len(a))]
    return [[_norm(x, p) for x in r] for r in out]


def matrix_unit_table(n):
    """e_{(i,j)} e_{(k,l)} = delta_{jk} e_{(i,l)} for M_n, basis index i*n+j."""
    d = n * n
    t = [[[0] * d for _ in range(d)] for _ in range(d)]
    for a in range(d):
        i, j = divmod(a, n)
        for b in range(d):
            k, l = divmod(b, n)
            if j == k:
                t[a][b][i * n + l] = 1
    return t


def intertwiner_dim(acts_m, acts_n, p=0):
    """dim of {X : X m_g = n_g X for all g}, by vectorizing X row-major."""
    dm = len(acts_m[0])
    dn = len(acts_n[0])
    rows = []
    for am, an in zip(acts_m, acts_n):
        # (X am)[r][c] - (an X)[r][c]
        for r in range(dn):
            for c in range(dm):
                row = [Fraction(0)] * (dn * dm)
                for k in range(dm):
                    row[r * dm + k] += Fraction(am[k][c])
                for k in range(dn):
                    row[k * dm + c] -= Fraction(an[r][k])
                rows.append(row)
    if not rows:
        return dn * dm
    return dn * dm - naive_rank(rows, p)
