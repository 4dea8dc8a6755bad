"""
Projectivity and injectivity tests, Frobenius forms, symmetric Frobenius structures
and the Nakayama automorphism.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, AlgebraMorphism
from .linalg import Eliminator, Matrix, solve_linear, sparse_row
from .modules import (
    Bimodule, ModuleMorphism, coregular_bimodule, coregular_left, dual_module,
    forget_right, hom_space, iso_in_space, module_iso_exists, regular_bimodule, regular_left,
    restrict_left, restrict_right, search_invertible, swap_sides, tensor_over_algebra,
    direct_sum, zero_module,
    DEFAULT_BUDGET, DEFAULT_TRIALS,
)


@dataclass
class ProjectivityResult:
    projective: bool
    section: ModuleMorphism | None
    cover: ModuleMorphism
    generators: list

    def __bool__(self):
        return self.projective


def _as_left(m: Bimodule) -> Bimodule:
    if m.is_left_module:
        return m
    if m.is_right_module:
        return swap_sides(m)
    return forget_right(m)


def module_generators(m: Bimodule):
    """Greedy generating set: basis vectors not in the submodule generated so far."""
    f = m.field
    elim = Eliminator(m.dim, f)
    gens = []
    mats = [m.left_action[g] for g in m.left.generators]
    for j in range(m.dim):
        ej = [f.one if i == j else f.zero for i in range(m.dim)]
        if not elim.reduce(sparse_row(ej)):
            continue
        gens.append(j)
        queue = [ej]
        while queue:
            v = queue.pop()
            if elim.add(sparse_row(v)):
                queue.extend(a.apply(v) for a in mats)
        if elim.rank == m.dim:
            break
    return gens


def projectivity(m: Bimodule) -> ProjectivityResult:
    """Is m projective?  Right modules are read as left modules over the opposite
    algebra, bimodules through their left structure.

    The free cover A^n -> m sends the i-th free generator to the i-th element
    of a greedy generating set; m is projective iff this surjection has a
    module-map section, which is a linear condition on Hom_A(m, A)^n.
    """
    m = _as_left(m)
    a = m.left
    f = m.field
    gens = module_generators(m)
    n = len(gens)
    reg = regular_left(a)
    free_dim = n * a.dim
    blocks = [Matrix.from_columns(f, [m.left_action[i].col(g) for i in range(a.dim)], m.dim)
              for g in gens]
    if blocks:
        pm = blocks[0]
        for b in blocks[1:]:
            pm = pm.hstack(b)
    else:
        pm = Matrix.zeros(f, m.dim, 0)
    free = direct_sum(*([reg] * n)) if n else zero_module(a, m.right)
    cover = ModuleMorphism(free, m, pm)
    if m.dim == 0:
        return ProjectivityResult(True, ModuleMorphism(m, free, Matrix.zeros(f, free.dim, 0)), cover, gens)
    hs = hom_space(m, reg)
    k = hs.dim
    # unknown c[j][t]: section block j = sum_t c[j][t] H_t
    cols = []
    for j in range(n):
        for h in hs.matrices:
            prod = blocks[j] @ h
            cols.append([x for r in prod.data for x in r])
    ident = Matrix.identity(f, m.dim)
    rhs = Matrix.column(f, [x for r in ident.data for x in r])
    if not cols:
        return ProjectivityResult(False, None, cover, gens)
    sol = solve_linear(Matrix.from_columns(f, cols, m.dim * m.dim), rhs)
    if not sol.consistent:
        return ProjectivityResult(False, None, cover, gens)
    c = sol.particular.col(0)
    rows = []
    for j in range(n):
        coeffs = c[j * k:(j + 1) * k]
        rows.extend(hs.combine(coeffs).data)
    sec = Matrix(f, free_dim, m.dim, tuple(rows))
    section = ModuleMorphism(m, free, sec)
    if not (section.is_module_map() and pm @ sec == ident):
        raise AssertionError("projectivity section failed verification")
    return ProjectivityResult(True, section, cover, gens)


def injectivity(m: Bimodule) -> ProjectivityResult:
    """m is injective iff its dual (a module on the other side) is projective."""
    m = _as_left(m)
    return projectivity(dual_module(m))


# ---------------------------------------------------------------------------


@dataclass
class FrobeniusClassification:
    algebra: Algebra
    self_injective: bool
    frobenius_status: str
    frobenius_form: ModuleMorphism | None
    symmetric_status: str
    symmetric_witness: ModuleMorphism | None
    nakayama_automorphism: AlgebraMorphism | None
    notes: list

    @property
    def frobenius(self):
        return self.frobenius_form is not None

    @property
    def symmetric(self):
        return self.symmetric_witness is not None

    @property
    def inconclusive(self):
        return "inconclusive" in (self.frobenius_status, self.symmetric_status)


def classify(a: Algebra, seed=0, trials=DEFAULT_TRIALS, budget=DEFAULT_BUDGET) -> FrobeniusClassification:
    notes = []
    inj = injectivity(regular_left(a))
    form = None
    sym = None
    nu = None
    if not inj.projective:
        fstat = sstat = "refuted"
        notes.append("regular module is not injective")
    else:
        dec = iso_in_space(hom_space(regular_left(a), coregular_left(a)), seed, trials, budget)
        fstat = dec.status
        if dec.witnessed:
            form = dec.witness
            nu = nakayama_automorphism(a, form)
            sdec = iso_in_space(hom_space(regular_bimodule(a), coregular_bimodule(a)), seed, trials, budget)
            if sdec.refuted:
                # the hom invariants give a cheaper exact refutation when the grid is too big
                sdec2 = module_iso_exists(regular_bimodule(a), coregular_bimodule(a), seed, trials, budget)
                sdec = sdec2 if not sdec2.inconclusive else sdec
            sstat = sdec.status
            if sdec.witnessed:
                sym = sdec.witness
            else:
                notes.append("bimodule search: " + sdec.reason)
        else:
            sstat = "refuted" if dec.refuted else "inconclusive"
            notes.append("left module search: " + dec.reason)
    return FrobeniusClassification(a, inj.projective, fstat, form, sstat, sym, nu, notes)


def frobenius_functional(a: Algebra, form: ModuleMorphism):
    """lambda = form(1) as a coefficient vector on the dual basis."""
    return form.matrix.apply(list(a.unit))


def gram_matrix(a: Algebra, lam):
    """K[i][j] = lambda(e_i e_j)."""
    f = a.field
    p = f.p
    rows = []
    for i in range(a.dim):
        row = []
        for j in range(a.dim):
            s = f.zero
            for k, c in enumerate(a.mult[i][j]):
                if c and lam[k]:
                    s += c * lam[k]
            row.append(s % p if p else s)
        rows.append(row)
    return Matrix(f, a.dim, a.dim, tuple(tuple(r) for r in rows))


def nakayama_automorphism(a: Algebra, form: ModuleMorphism) -> AlgebraMorphism:
    """nu with kappa(x, nu(y)) = kappa(y, x), kappa(x, y) = lambda(xy)."""
    if not form.is_invertible():
        raise ValueError("Frobenius form is not invertible")
    k = gram_matrix(a, frobenius_functional(a, form))
    nu = AlgebraMorphism(a, a, k.inverse() @ k.T)
    if not nu.is_valid():
        raise AssertionError("Nakayama automorphism is not an algebra automorphism")
    return nu


def nakayama_identity_holds(a: Algebra, form: ModuleMorphism, nu: AlgebraMorphism):
    """kappa(e_i, nu(e_j)) == kappa(e_j, e_i) for all basis pairs."""
    k = gram_matrix(a, frobenius_functional(a, form))
    return k @ nu.matrix == k.T


def twisted_regular(a: Algebra, nu: AlgebraMorphism) -> Bimodule:
    """1_A_nu: A with right action x.b = x nu(b)."""
    return restrict_right(regular_bimodule(a), nu).relabel(f"{a.label}_nu")


def is_inner(a: Algebra, nu: AlgebraMorphism, seed=0, trials=DEFAULT_TRIALS, budget=DEFAULT_BUDGET):
    """Search for a unit u with nu(x) u = u x for all x; returns (status, u)."""
    f = a.field
    p = f.p
    rows = []
    for g in a.generators:
        lnu = a.left_mult_by(nu.image(g))
        r = a.right_mult[g]
        d = lnu - r
        for row in d.data:
            sr = sparse_row(row)
            if sr:
                rows.append(sr)
    e = Eliminator(a.dim, f)
    for r in rows:
        e.add(r)
    sols = e.kernel_vectors()
    basis = [(a.left_mult_by(v),) for v in sols]
    res = search_invertible(f, basis, seed, trials, budget)
    if res.status != "witnessed":
        return res.status, None
    u = [f.zero] * a.dim
    for c, v in zip(res.coeffs, sols):
        if c:
            for i, x in enumerate(v):
                u[i] += c * x
    if p:
        u = [x % p for x in u]
    return "witnessed", u


@dataclass
class TwistReport:
    witness: ModuleMorphism
    witness_ok: bool
    nu_is_identity: bool
    inner_status: str
    inner_unit: list | None
    symmetric: bool
    consistent: bool


def verify_nakayama_twist(a: Algebra, nu: AlgebraMorphism, form: ModuleMorphism,
                          symmetric: bool | None = None, seed=0, trials=DEFAULT_TRIALS,
                          budget=DEFAULT_BUDGET) -> TwistReport:
    """The form itself is a bimodule iso 1_A_nu -> A^*; also checks nu inner <=> symmetric."""
    tw = twisted_regular(a, nu)
    w = ModuleMorphism(tw, coregular_bimodule(a), form.matrix)
    ok = w.is_module_map() and w.is_invertible()
    st, u = is_inner(a, nu, seed, trials, budget)
    if symmetric is None:
        symmetric = classify(a, seed, trials, budget).symmetric
    consistent = (st == "witnessed") == symmetric if st != "inconclusive" else False
    return TwistReport(w, ok, nu.is_identity(), st, u, symmetric, consistent)


def inverse_automorphism(nu: AlgebraMorphism) -> AlgebraMorphism:
    return AlgebraMorphism(nu.target, nu.source, nu.matrix.inverse())


def nakayama_vs_twist(a: Algebra, nu: AlgebraMorphism, modules, seed=0, trials=DEFAULT_TRIALS,
                      budget=DEFAULT_BUDGET):
    """For each module x: a decision for A^* (x)_A x ~= x restricted along nu^{-1}."""
    nui = inverse_automorphism(nu)
    out = []
    for x in modules:
        lhs = tensor_over_algebra(coregular_bimodule(a), x).module
        rhs = restrict_left(x, nui)
        out.append(module_iso_exists(lhs, rhs, seed, trials, budget))
    return out


__all__ = [
    "FrobeniusClassification", "ProjectivityResult", "TwistReport", "classify",
    "frobenius_functional", "gram_matrix", "injectivity", "inverse_automorphism", "is_inner",
    "module_generators", "nakayama_automorphism", "nakayama_identity_holds", "nakayama_vs_twist",
    "projectivity", "twisted_regular", "verify_nakayama_twist",
]
