from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ewcalc.linalg import (
    GF, QQ, DimensionMismatch, FieldMismatch, LinalgError, Matrix, kernel_basis, kronecker,
    solve_linear,
)
from oracles import leibniz_det, matmul, naive_rank

F7 = GF(7)


def mat(field, rows):
    return Matrix.from_rows(field, rows, len(rows[0]) if rows else 0)


def small_matrices(max_rows=5, max_cols=6, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def test_field_coercion():
    assert QQ("3/6") == QQ(Fraction(1, 2))
    assert F7("1/2") == 4
    assert F7(-1) == 6
    with pytest.raises(LinalgError):
        F7(Fraction(1, 7))
    with pytest.raises(LinalgError):
        GF(6)


def test_solve_identity():
    s = solve_linear(Matrix.identity(QQ, 2), mat(QQ, [[3], [-1]]))
    assert s.particular == mat(QQ, [[3], [-1]])
    assert s.kernel_basis == []


def test_solve_one_equation():
    s = solve_linear(mat(QQ, [[1, 1]]), mat(QQ, [[0]]))
    assert s.particular == mat(QQ, [[0], [0]])
    assert s.kernel_basis == [mat(QQ, [[-1], [1]])]


def test_solve_inconsistent():
    s = solve_linear(mat(QQ, [[1, 1], [1, 1]]), mat(QQ, [[0], [1]]))
    assert not s.consistent


def test_solve_rank4_f7():
    # 5x7 of rank 4: last row is a combination of the others
    rows = [[1, 2, 0, 3, 4, 0, 1], [0, 1, 5, 0, 2, 6, 3], [2, 0, 1, 1, 0, 4, 5],
            [3, 3, 3, 0, 1, 1, 2]]
    rows.append([(a + 2 * b) % 7 for a, b in zip(rows[0], rows[3])])
    a = mat(F7, rows)
    assert a.rank() == 4 == naive_rank(rows, 7)
    x0 = mat(F7, [[1], [0], [6], [2], [3], [5], [4]])
    s = solve_linear(a, a @ x0)
    assert a @ s.particular == a @ x0
    # x0 lies in particular + kernel
    diff = x0 - s.particular
    span = Matrix.from_columns(F7, [k.col(0) for k in s.kernel_basis], 7)
    assert solve_linear(span, diff).consistent


def test_solve_errors():
    with pytest.raises(DimensionMismatch):
        solve_linear(Matrix.identity(QQ, 2), mat(QQ, [[1]]))
    with pytest.raises(FieldMismatch):
        solve_linear(Matrix.identity(QQ, 2), mat(F7, [[1], [2]]))


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(QQ, 3)) == []
    assert len(kernel_basis(Matrix.zeros(QQ, 2, 3))) == 3
    (k,) = kernel_basis(mat(QQ, [[1, 2], [2, 4]]))
    assert k.col(0)[0] == -2 * k.col(0)[1]


def test_kronecker_examples():
    assert kronecker(Matrix.identity(QQ, 2), Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 6)
    a = mat(QQ, [[1, 2], [3, 4]])
    assert kronecker(a, mat(QQ, [[1]])) == a
    n = kronecker(mat(QQ, [[0, 1], [0, 0]]), Matrix.identity(QQ, 2))
    ones = {(i, j) for i in range(4) for j in range(4) if n[i, j]}
    assert ones == {(0, 2), (1, 3)}


@given(small_matrices(), st.sampled_from([0, 5, 7]))
def test_rank_nullity_and_kernel(rows, p):
    f = GF(p) if p else QQ
    a = mat(f, rows)
    ks = kernel_basis(a)
    assert a.rank() + len(ks) == a.cols
    assert a.rank() == naive_rank(rows, p)
    for k in ks:
        assert (a @ k).is_zero()


@given(small_matrices(), st.data())
def test_solve_substitution(rows, data):
    a = mat(QQ, rows)
    x0 = [[data.draw(st.integers(-4, 4))] for _ in range(a.cols)]
    b = a @ mat(QQ, x0)
    s = solve_linear(a, b)
    assert s.consistent and a @ s.particular == b


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_and_inverse(rows):
    a = mat(QQ, rows)
    assert a.det() == leibniz_det(rows)
    if a.det():
        assert a @ a.inverse() == Matrix.identity(QQ, 3)
    else:
        assert not a.is_invertible()


@given(small_matrices(3, 3), small_matrices(3, 3), small_matrices(2, 2))
def test_kronecker_associative_and_mixed_product(r1, r2, r3):
    a, b, c = mat(QQ, r1), mat(QQ, r2), mat(QQ, r3)
    assert kronecker(kronecker(a, b), c) == kronecker(a, kronecker(b, c))
    # bilinear in the first slot
    assert kronecker(a + a, b) == kronecker(a, b).scale(2)


@given(small_matrices(3, 4), small_matrices(4, 3))
def test_matmul_against_oracle(r1, r2):
    a, b = mat(QQ, r1), mat(QQ, r2)
    if a.cols == b.rows:
        assert (a @ b).tolist() == matmul(r1, r2)


def test_entry_index_formula():
    a = mat(QQ, [[1, 2], [3, 4]])
    b = mat(QQ, [[0, 5], [6, 7]])
    k = kronecker(a, b)
    for i in range(2):
        for j in range(2):
            for r in range(2):
                for s in range(2):
                    assert k[i * 2 + j, r * 2 + s] == a[i, r] * b[j, s]
