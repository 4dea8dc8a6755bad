import pytest
from hypothesis import given, strategies as st

from ewcalc import catalog
from ewcalc.linalg import GF, Matrix, QQ
from ewcalc.modules import (
    AlgebraMismatch, ModuleMorphism, as_left_over_tensor, coregular_bimodule, direct_sum,
    dual_module, dual_morphism, hom_basis, hom_space, identity_morphism, left_ideal, left_module,
    module_iso_exists, quotient_module, regular_bimodule, regular_left, regular_right,
    right_module, search_invertible, submodule, tensor_over_algebra, tensor_over_field, validate_module,
    vector_space, verify_iso_witness, zero_module,
)
from ewcalc.functors import unitor_left
from oracles import intertwiner_dim

NAMES = catalog.ALGEBRAS
ALL_MODULES = [(n, m) for n in NAMES for m in catalog.test_modules(n)]


def mid(x):
    return f"{x[0]}:{x[1].label}"


@pytest.mark.parametrize("name,m", ALL_MODULES, ids=map(mid, ALL_MODULES))
def test_module_laws_and_free_hom(name, m):
    a = catalog.algebra(name)
    assert validate_module(m) == []
    assert len(hom_basis(regular_left(a), m)) == m.dim
    assert dual_module(m).dim == m.dim
    assert dual_module(dual_module(m)) == m


@pytest.mark.parametrize("name,m", ALL_MODULES, ids=map(mid, ALL_MODULES))
def test_regular_tensor_unit(name, m):
    a = catalog.algebra(name)
    tp = tensor_over_algebra(regular_bimodule(a), m)
    assert tp.dim == m.dim
    w = unitor_left(m)
    assert w.is_module_map() and w.is_invertible()
    tr = tensor_over_algebra(regular_right(a), m)
    assert tr.dim == m.dim


def test_simple_m2_endomorphisms():
    (s,) = catalog.simples("M2")
    assert hom_space(s, s).dim == 1
    assert intertwiner_dim([x.tolist() for x in s.left_action],
                           [x.tolist() for x in s.left_action]) == 1


def test_ut2_projective_homs():
    p0, p1 = catalog.projectives("UT2")
    # Hom(Ae, Af) = eAf: e00 A e11 = span{E01}, e11 A e00 = 0
    assert (p0.dim, p1.dim) == (1, 2)
    assert hom_space(p0, p1).dim == 1
    assert hom_space(p1, p0).dim == 0
    assert hom_space(p1, p1).dim == 1
    for x, y in ((p0, p1), (p1, p0), (p1, p1)):
        assert hom_space(x, y).dim == intertwiner_dim(
            [a.tolist() for a in x.left_action], [a.tolist() for a in y.left_action])


def test_coregular_basics():
    k = catalog.algebra("k")
    assert regular_bimodule(k).dim == coregular_bimodule(k).dim == 1
    assert regular_bimodule(k).left_action == coregular_bimodule(k).left_action
    m2, ut2 = catalog.algebra("M2"), catalog.algebra("UT2")
    assert module_iso_exists(regular_bimodule(m2), coregular_bimodule(m2)).witnessed
    assert module_iso_exists(regular_bimodule(ut2), coregular_bimodule(ut2)).refuted
    # dual of the regular left module is the co-regular right module, actions transposed
    d = dual_module(regular_left(ut2))
    assert d.is_right_module
    assert list(d.right_action) == [x.T for x in ut2.left_mult]


def test_tensor_examples():
    (s,) = catalog.simples("M2")
    assert tensor_over_algebra(dual_module(s), s).dim == 1
    (sd,) = catalog.simples("D2")
    assert tensor_over_algebra(dual_module(sd), sd).dim == 1
    with pytest.raises(AlgebraMismatch):
        tensor_over_algebra(regular_bimodule(catalog.algebra("UT2")), s)


def test_iso_examples():
    m2 = catalog.algebra("M2")
    (s,) = catalog.simples("M2")
    d = module_iso_exists(regular_left(m2), direct_sum(s, s))
    assert d.witnessed and verify_iso_witness(d.witness, d.inverse)
    r = module_iso_exists(s, s)
    assert r.witnessed and r.method == "identity"
    p0, p1 = catalog.projectives("UT2")
    assert module_iso_exists(p0, p1).refuted


@pytest.mark.parametrize("field", [QQ, GF(5)], ids=repr)
def test_search_statuses(field):
    e00 = Matrix.from_rows(field, [[1, 0], [0, 0]], 2)
    e01 = Matrix.from_rows(field, [[0, 1], [0, 0]], 2)
    e11 = Matrix.from_rows(field, [[0, 0], [0, 1]], 2)
    singular = [(e00,), (e01,)]
    assert search_invertible(field, singular, trials=0, budget=1).status == "inconclusive"
    assert search_invertible(field, singular).status == "refuted"
    res = search_invertible(field, [(e00,), (e11,)], trials=0)
    assert res.status == "witnessed"
    assert Matrix.identity(field, 2).scale(0) != e00.scale(res.coeffs[0]) + e11.scale(res.coeffs[1])


def test_direct_sum_and_field_tensor():
    u = catalog.algebra("UT2")
    m = regular_left(u)
    z = zero_module(u, m.right)
    assert direct_sum(m, z) == m or direct_sum(m, z).left_action == m.left_action
    v = vector_space(QQ, 3)
    assert tensor_over_field(m, v).dim == 3 * m.dim
    assert validate_module(tensor_over_field(m, v)) == []


@pytest.mark.parametrize("name", ["UT2", "D2", "kC2", "M2"])
def test_hom_with_multiplicity_spaces(name):
    mods = catalog.test_modules(name)
    v2, v3 = vector_space(QQ, 2), vector_space(QQ, 3)
    for m in mods[:3]:
        for n in mods[:3]:
            lhs = hom_space(tensor_over_field(m, v2), tensor_over_field(n, v3)).dim
            assert lhs == 2 * hom_space(m, n).dim * 3


def test_zero_dimensional_modules():
    u = catalog.algebra("UT2")
    z = left_module(u, [Matrix.zeros(QQ, 0, 0)] * u.dim)
    assert validate_module(z) == []
    assert hom_space(z, regular_left(u)).dim == 0
    assert tensor_over_algebra(dual_module(regular_left(u)), z).dim == 0
    assert module_iso_exists(z, z).witnessed


@pytest.mark.parametrize("name", ["UT2", "D2", "kC2", "H4"])
def test_bimodule_hom_two_paths(name):
    a = catalog.algebra(name)
    for x in (regular_bimodule(a), coregular_bimodule(a)):
        for y in (regular_bimodule(a), coregular_bimodule(a)):
            direct = hom_space(x, y).dim
            flat = hom_space(as_left_over_tensor(x), as_left_over_tensor(y)).dim
            assert direct == flat


def test_bad_module_detected():
    u = catalog.algebra("UT2")
    acts = [Matrix.identity(QQ, 1)] * 3
    rep = validate_module(left_module(u, acts))
    assert rep


def test_right_module_law_is_reversed():
    u = catalog.algebra("UT2")
    r = right_module(u, [x.T for x in u.left_mult])
    assert validate_module(r) == []
    bad = right_module(u, list(u.left_mult))
    assert validate_module(bad)


SMALL = ["UT2", "D2", "P3", "kC2", "H4", "UT3"]


@given(st.sampled_from(SMALL), st.data())
def test_dual_exact_on_morphisms(name, data):
    mods = catalog.test_modules(name)
    m = data.draw(st.sampled_from(mods))
    n = data.draw(st.sampled_from(mods))
    hs = hom_space(m, n)
    if hs.dim == 0:
        return
    coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=hs.dim, max_size=hs.dim))
    f = ModuleMorphism(m, n, hs.combine(coeffs))
    assert f.is_module_map()
    df = dual_morphism(f)
    assert df.is_module_map()
    coker = n.dim - f.matrix.rank()
    # dim ker(f^T) = dim coker(f)
    assert df.source.dim - df.matrix.rank() == coker


@given(st.sampled_from(SMALL), st.data())
def test_quotients_and_submodules(name, data):
    a = catalog.algebra(name)
    m = regular_left(a)
    vec = data.draw(st.lists(st.integers(-2, 2), min_size=a.dim, max_size=a.dim))
    sub, inc = submodule(m, [vec])
    q, proj = quotient_module(m, [vec])
    assert validate_module(sub) == [] and validate_module(q) == []
    assert inc.is_module_map() and proj.is_module_map()
    assert sub.dim + q.dim == m.dim
    assert (proj.matrix @ inc.matrix).is_zero()


@given(st.sampled_from(NAMES), st.data())
def test_every_hom_basis_element_intertwines(name, data):
    mods = catalog.test_modules(name)
    m = data.draw(st.sampled_from(mods))
    n = data.draw(st.sampled_from(mods))
    for f in hom_basis(m, n):
        assert f.is_module_map()
    assert identity_morphism(m).is_module_map()


def test_left_ideal_label():
    u = catalog.algebra("UT2")
    p = left_ideal(u, [1, 0, 0], "P")
    assert p.label == "P" and p.dim == 1
