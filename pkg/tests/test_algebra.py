import pytest
from hypothesis import given, strategies as st

from ewcalc.algebra import (
    Algebra, AlgebraError, algebra_morphism, base_field, cyclic_group_algebra, group_algebra,
    matrix_algebra, opposite, tensor_algebra, transpose_isomorphism, truncated_polynomial,
    upper_triangular, validate_algebra,
)
from ewcalc import catalog
from ewcalc.linalg import FieldMismatch, GF, QQ
from oracles import matrix_unit_table

CORPUS = [catalog.algebra(n) for n in catalog.ALGEBRAS]


def test_base_field_validates():
    assert validate_algebra(base_field()) == []


def test_matrix_units_match_oracle():
    for n in (2, 3):
        a = matrix_algebra(n)
        assert validate_algebra(a) == []
        table = matrix_unit_table(n)
        assert [[list(v) for v in row] for row in a.mult] == table


def test_perturbed_table_reports_triple():
    a = matrix_algebra(2)
    mult = [[list(v) for v in row] for row in a.mult]
    mult[1][2][0] += 1
    bad = Algebra(QQ, mult, list(a.unit))
    rep = validate_algebra(bad)
    assert rep
    assert any(r["identity"] == "associativity" and len(r["indices"]) == 3 for r in rep)


def test_opposite():
    d = truncated_polynomial(2)
    assert opposite(d).mult == d.mult
    for a in CORPUS:
        assert opposite(opposite(a)) == a
        assert validate_algebra(opposite(a)) == []


def test_transpose_iso():
    phi = transpose_isomorphism(matrix_algebra(2))
    assert phi.is_valid()
    assert phi.matrix.is_invertible()


def test_tensor_algebra():
    k = base_field()
    a = upper_triangular(2)
    ka = tensor_algebra(k, a)
    assert ka.mult == a.mult and list(ka.unit) == list(a.unit)
    assert tensor_algebra(a, truncated_polynomial(3)).dim == 9
    m = matrix_algebra(2)
    mm = tensor_algebra(m, opposite(m))
    assert mm.dim == 16 and validate_algebra(mm) == []
    with pytest.raises(FieldMismatch):
        tensor_algebra(a, upper_triangular(2, GF(3)))


def test_standard_families():
    d = truncated_polynomial(2)
    assert d.dim == 2 and d.product(d.basis_vector(1), d.basis_vector(1)) == [0, 0]
    c2 = cyclic_group_algebra(2)
    g = c2.basis_vector(1)
    assert c2.product(g, g) == list(c2.unit)
    u = upper_triangular(2)
    assert u.dim == 3 and not u.is_commutative()
    assert validate_algebra(u) == []


def test_bad_group_tables():
    with pytest.raises(AlgebraError):
        group_algebra([[0, 1], [0, 1]])
    # Latin square without associativity
    with pytest.raises(AlgebraError):
        group_algebra([[0, 1, 2], [1, 0, 0], [2, 2, 1]])


def test_bad_morphism_detected():
    u = upper_triangular(2)
    c2 = cyclic_group_algebra(2)
    good = catalog.embedding("UT2>kC2")
    assert good.is_valid()
    bad = algebra_morphism(c2, u, [list(u.unit), [1, 1, 0]])
    assert not bad.is_valid()


@pytest.mark.parametrize("a", CORPUS, ids=lambda a: a.label)
def test_corpus_validates_with_opposite_tensor(a):
    assert validate_algebra(a) == []
    if a.dim <= 4:
        assert validate_algebra(tensor_algebra(a, opposite(a))) == []


@given(st.integers(1, 5))
def test_group_left_mults_are_permutations(n):
    a = cyclic_group_algebra(n)
    for m in a.left_mult:
        rows = m.tolist()
        assert all(sorted(r) == [0] * (n - 1) + [1] for r in rows)
        assert all(sorted(c) == [0] * (n - 1) + [1] for c in zip(*rows))


@given(st.sampled_from(CORPUS), st.data())
def test_associativity_on_random_elements(a, data):
    f = a.field
    vec = st.lists(st.integers(-3, 3), min_size=a.dim, max_size=a.dim).map(
        lambda v: [f(x) for x in v])
    x, y, z = data.draw(vec), data.draw(vec), data.draw(vec)
    assert a.product(a.product(x, y), z) == a.product(x, a.product(y, z))
    assert a.product(list(a.unit), x) == x
