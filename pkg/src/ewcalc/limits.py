"""
Ends and coends of m -> G(m) (x) m^* over finite full subdiagrams of A-Mod.

An element of G(m) (x) m^* is stored as a dim G(m) x dim m matrix Z (the
linear map m -> G(m)), flattened row-major, which is the lexicographic order
of G(m) (x) m^*.  In these terms the dinaturality square for f: m -> m' is
G(f) Z_m = Z_m' f, and the coend relations are G(f) Y - Y f for
Y: m' -> G(m).

The end is compared with G(A) through the family y -> (v -> G(r_v)(y)),
r_v: A -> m, a -> a.v; the coend is compared with G(A^*) through
y (x) phi_j -> G(rt_j)(y), rt_j: m -> A^*, v -> (a -> phi_j(a.v)).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .algebra import Algebra, opposite
from .linalg import Eliminator, Matrix, Subspace
from .modules import (
    AlgebraMismatch, Bimodule, IsoDecision, ModuleError, ModuleMorphism, coregular_bimodule,
    coregular_left, dual_module, hom_space, left_module, module_iso_exists, regular_bimodule,
    regular_left, swap_sides, DEFAULT_BUDGET, DEFAULT_TRIALS,
)


class DiagramError(ModuleError):
    pass


class FiniteDiagram:
    """Full subcategory of A-Mod on the given left modules."""

    def __init__(self, algebra: Algebra, objects, label=""):
        objects = list(objects)
        for m in objects:
            if m.left != algebra or not m.is_left_module:
                raise AlgebraMismatch(f"diagram object {m.label!r} is not a left {algebra.label}-module")
        self.algebra = algebra
        self.objects = objects
        self.label = label

    def __len__(self):
        return len(self.objects)

    def hom_basis(self, i, j):
        return hom_space(self.objects[i], self.objects[j]).matrices

    @cached_property
    def hom_bases(self):
        n = len(self.objects)
        return {(i, j): self.hom_basis(i, j) for i in range(n) for j in range(n)}

    def index(self, m):
        for i, x in enumerate(self.objects):
            if x == m:
                return i
        return None

    def contains(self, m):
        return self.index(m) is not None


def standard_diagram(a: Algebra, extra=(), regular=True, coregular=True):
    objs = []
    if regular:
        objs.append(regular_left(a))
    if coregular:
        objs.append(coregular_left(a))
    for m in extra:
        if m not in objs:
            objs.append(m)
    return FiniteDiagram(a, objs)


def opposite_diagram(d: FiniteDiagram) -> FiniteDiagram:
    """Duals of the objects, read as left modules over A^op."""
    return FiniteDiagram(opposite(d.algebra),
                         [swap_sides(dual_module(m)) for m in d.objects], d.label + "^op")


# ---------------------------------------------------------------------------
# the functor G


def _apply(g, x):
    if g is None:
        return x
    from .functors import apply_functor
    return apply_functor(g, x)


def _target_algebra(g, a):
    return a if g is None else g.target


@dataclass
class _Weighted:
    """G evaluated on the diagram: G(m_i) and G(f) for every hom-basis f."""

    diagram: FiniteDiagram
    values: list
    maps: dict
    offsets: list
    ambient: int

    @classmethod
    def build(cls, g, d: FiniteDiagram):
        if g is not None and g.source != d.algebra:
            raise AlgebraMismatch("functor source differs from the diagram algebra")
        values = [_apply(g, m) for m in d.objects]
        maps = {}
        for (i, j), basis in d.hom_bases.items():
            mi, mj = d.objects[i], d.objects[j]
            maps[i, j] = [f if g is None else _apply(g, ModuleMorphism(mi, mj, f)).matrix
                          for f in basis]
        offsets = []
        n = 0
        for gm, m in zip(values, d.objects):
            offsets.append(n)
            n += gm.dim * m.dim
        return cls(d, values, maps, offsets, n)

    def block(self, i, vec):
        gm, m = self.values[i], self.diagram.objects[i]
        o = self.offsets[i]
        return Matrix(gm.field, gm.dim, m.dim, tuple(
            tuple(vec[o + r * m.dim:o + (r + 1) * m.dim]) for r in range(gm.dim)))

    def flatten(self, blocks):
        out = []
        for b in blocks:
            for r in b.data:
                out.extend(r)
        return out


def _nz(row):
    return [(k, v) for k, v in enumerate(row) if v]


def _norm(row, p):
    if p:
        row = {k: v % p for k, v in row.items()}
    return {k: v for k, v in row.items() if v}


def _sparse_dot(row, vec):
    s = 0
    for k, v in row.items():
        x = vec[k]
        if x:
            s += v * x
    return s


# ---------------------------------------------------------------------------
# ends


@dataclass
class EndResult:
    carrier: Bimodule
    subspace: Subspace
    projections: list
    comparison: ModuleMorphism | None
    value_at_generator: Bimodule | None
    dinatural: bool
    well_defined: bool
    checks: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)


def _end_difference_rows(w: _Weighted):
    """Rows of the difference map, one per (f: m_i -> m_j, entry (g', v))."""
    d = w.diagram
    p = d.algebra.field.p
    for (i, j), basis in d.hom_bases.items():
        gj = w.values[j].dim
        di, dj = d.objects[i].dim, d.objects[j].dim
        oi, oj = w.offsets[i], w.offsets[j]
        for f, gf in zip(basis, w.maps[i, j]):
            gf_rows = [_nz(r) for r in gf.data]
            f_cols = [[(r, f.data[r][v]) for r in range(dj) if f.data[r][v]] for v in range(di)]
            for gp in range(gj):
                for v in range(di):
                    row = {}
                    for g, c in gf_rows[gp]:
                        k = oi + g * di + v
                        row[k] = row.get(k, 0) + c
                    for r, c in f_cols[v]:
                        k = oj + gp * dj + r
                        row[k] = row.get(k, 0) - c
                    row = _norm(row, p)
                    if row:
                        yield row


def _end_comparison_columns(w: _Weighted, g, a: Algebra):
    """Columns of G(A) -> ambient, one per basis element of G(A)."""
    d = w.diagram
    f = a.field
    ia = d.index(regular_left(a))
    ga = w.values[ia] if ia is not None else _apply(g, regular_left(a))
    blocks = []  # per object: list over v of G(r_v) (dim G(m) x dim G(A))
    for m in d.objects:
        rv = []
        for v in range(m.dim):
            mat = Matrix.from_columns(f, [m.left_action[e].col(v) for e in range(a.dim)], m.dim)
            rv.append(mat if g is None else _apply(g, ModuleMorphism(regular_left(a), m, mat)).matrix)
        blocks.append(rv)
    cols = []
    for y in range(ga.dim):
        col = []
        for m, gm, rv in zip(d.objects, w.values, blocks):
            for r in range(gm.dim):
                for v in range(m.dim):
                    col.append(rv[v].data[r][y])
        cols.append(col)
    return cols


def _coords_matrix(sub: Subspace, vecs):
    return Matrix.from_columns(sub.field, [sub.coords(v) for v in vecs], sub.dim) if vecs else \
        Matrix.zeros(sub.field, sub.dim, 0)


def end_weighted(g, d: FiniteDiagram, early_exit=True) -> EndResult:
    """End of m -> G(m) (x) m^* over d; g None means the identity functor."""
    a = d.algebra
    fld = a.field
    p = fld.p
    b = _target_algebra(g, a)
    w = _Weighted.build(g, d)
    rows = list(_end_difference_rows(w))
    cols = _end_comparison_columns(w, g, a)
    notes = []
    dinatural = True
    bound = None
    if d.index(regular_left(a)) is None:
        notes.append("regular module not in diagram: comparison built from G on maps out of A")
    for r in rows:
        for c in cols:
            s = _sparse_dot(r, c)
            if (s % p if p else s):
                dinatural = False
                break
        if not dinatural:
            break
    cmat = Matrix.from_columns(fld, cols, w.ambient) if cols else Matrix.zeros(fld, w.ambient, 0)
    # image of the comparison lies in the end, so the kernel is found once its
    # dimension drops to the comparison rank
    if dinatural and early_exit:
        bound = w.ambient - cmat.rank()
    elim = Eliminator(w.ambient, fld)
    for r in rows:
        elim.add(r)
        if bound is not None and elim.rank == bound:
            break
    free = elim.free_columns()
    sub = Subspace(fld, w.ambient, elim.kernel_vectors(), free)
    # bimodule structure: b.Z_m = rho_G(m)(b) Z_m, Z_m.a = Z_m rho_m(a)
    well_defined = True

    def act(vec, side, e):
        blocks = []
        for i, (gm, m) in enumerate(zip(w.values, d.objects)):
            z = w.block(i, vec)
            blocks.append(gm.left_action[e] @ z if side == "left" else z @ m.left_action[e])
        return w.flatten(blocks)

    lacts, racts = [], []
    for side, alg, out in (("left", b, lacts), ("right", a, racts)):
        for e in range(alg.dim):
            imgs = [act(v, side, e) for v in sub.vectors]
            if any(not sub.contains(x) for x in imgs):
                well_defined = False
            out.append(_coords_matrix(sub, imgs))
    label = f"end[{getattr(g, 'label', '') or 'id'}]"
    carrier = Bimodule(b, a, sub.dim, lacts, racts, label) if well_defined else \
        left_module(b, lacts, label)
    projections = []
    for i in range(len(d)):
        gm, m = w.values[i], d.objects[i]
        o = w.offsets[i]
        projections.append(Matrix.from_columns(
            fld, [v[o:o + gm.dim * m.dim] for v in sub.vectors], gm.dim * m.dim)
            if sub.vectors else Matrix.zeros(fld, gm.dim * m.dim, 0))
    comparison = None
    checks = {"dinatural": dinatural, "well_defined": well_defined}
    ga = _apply(g, regular_bimodule(a))
    ia = d.index(regular_left(a))
    if ga.left_action != _apply(g, regular_left(a)).left_action:
        raise AssertionError("G(A) as a bimodule and as a left module use different bases")
    inside = all(sub.contains(c) for c in cols)
    checks["comparison lands in the end"] = inside
    if inside and well_defined:
        comparison = ModuleMorphism(ga, carrier, _coords_matrix(sub, cols))
        checks["comparison is a bimodule map"] = comparison.is_module_map()
        checks["comparison is invertible"] = comparison.is_invertible()
        if ia is not None:
            checks["universal property"] = _end_universal(w, sub, comparison, ia, a)
    return EndResult(carrier, sub, projections, comparison, ga, dinatural, well_defined, checks, notes)


def _end_universal(w, sub, comparison, ia, a):
    """z -> Z_A(1) is a left inverse of the comparison map on every basis element."""
    fld = a.field
    cmat = comparison.matrix
    for k, vec in enumerate(sub.vectors):
        za = w.block(ia, vec)
        y = za.apply(list(a.unit))
        back = cmat.apply(y)
        if back != [fld.one if t == k else fld.zero for t in range(sub.dim)]:
            return False
    return True


# ---------------------------------------------------------------------------
# coends


@dataclass
class CoendResult:
    carrier: Bimodule
    quotient_columns: list
    injections: list
    comparison: ModuleMorphism | None
    value_at_cogenerator: Bimodule | None
    dinatural: bool
    checks: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)


def _coend_relations(w: _Weighted):
    """G(f) Y (summand j) - Y f (summand i) for f: m_i -> m_j and Y = E_{g,r}."""
    d = w.diagram
    p = d.algebra.field.p
    for (i, j), basis in d.hom_bases.items():
        gi, gj = w.values[i].dim, w.values[j].dim
        di, dj = d.objects[i].dim, d.objects[j].dim
        oi, oj = w.offsets[i], w.offsets[j]
        for f, gf in zip(basis, w.maps[i, j]):
            gf_cols = [[(r, gf.data[r][g]) for r in range(gj) if gf.data[r][g]] for g in range(gi)]
            f_rows = [_nz(r) for r in f.data]
            for g in range(gi):
                for r in range(dj):
                    row = {}
                    for gp, c in gf_cols[g]:
                        k = oj + gp * dj + r
                        row[k] = row.get(k, 0) + c
                    for v, c in f_rows[r]:
                        k = oi + g * di + v
                        row[k] = row.get(k, 0) - c
                    row = _norm(row, p)
                    if row:
                        yield row


def _coend_comparison(w: _Weighted, g, a: Algebra):
    """Matrix ambient -> G(A^*) assembled from the dinatural family."""
    d = w.diagram
    f = a.field
    ic = d.index(coregular_left(a))
    gc = w.values[ic] if ic is not None else _apply(g, coregular_left(a))
    cols = []
    for m, gm in zip(d.objects, w.values):
        rt = []
        for j in range(m.dim):
            mat = Matrix(f, a.dim, m.dim, tuple(
                tuple(m.left_action[k].data[j][i] for i in range(m.dim)) for k in range(a.dim)))
            rt.append(mat if g is None else
                      _apply(g, ModuleMorphism(m, coregular_left(a), mat)).matrix)
        for gg in range(gm.dim):
            for j in range(m.dim):
                cols.append(rt[j].col(gg))
    return Matrix.from_columns(f, cols, gc.dim) if cols else Matrix.zeros(f, gc.dim, 0)


def coend_weighted(g, d: FiniteDiagram, early_exit=True) -> CoendResult:
    a = d.algebra
    fld = a.field
    p = fld.p
    b = _target_algebra(g, a)
    w = _Weighted.build(g, d)
    rels = list(_coend_relations(w))
    kmat = _coend_comparison(w, g, a)
    notes = []
    dinatural = True
    bound = None
    if d.index(coregular_left(a)) is None:
        notes.append("co-regular module not in diagram: comparison built from G on maps into A^*")
    for rel in rels:
        for kr in kmat.data:
            s = _sparse_dot(rel, kr)
            if (s % p if p else s):
                dinatural = False
                break
        if not dinatural:
            break
    if dinatural and early_exit:
        bound = w.ambient - kmat.rank()
    elim = Eliminator(w.ambient, fld)
    for r in rels:
        elim.add(r)
        if bound is not None and elim.rank == bound:
            break
    qcols = elim.free_columns()
    qindex = {c: t for t, c in enumerate(qcols)}
    nq = len(qcols)

    def project(vec: dict):
        out = [fld.zero] * nq
        for c, v in vec.items():
            if not v:
                continue
            if c in qindex:
                out[qindex[c]] += v
            else:
                for k, x in elim.pivots[c].items():
                    if k != c:
                        out[qindex[k]] -= v * x
        return [x % p for x in out] if p else out

    # per-summand coordinates of each ambient index
    where = []
    for i, (gm, m) in enumerate(zip(w.values, d.objects)):
        for gg in range(gm.dim):
            for v in range(m.dim):
                where.append((i, gg, v))

    lacts, racts = [], []
    for e in range(b.dim):
        cols = []
        for c in qcols:
            i, gg, v = where[c]
            gm, m = w.values[i], d.objects[i]
            o = w.offsets[i]
            rho = gm.left_action[e]
            cols.append(project({o + r * m.dim + v: rho.data[r][gg] for r in range(gm.dim)
                                 if rho.data[r][gg]}))
        lacts.append(Matrix.from_columns(fld, cols, nq) if cols else Matrix.zeros(fld, 0, 0))
    for e in range(a.dim):
        cols = []
        for c in qcols:
            i, gg, v = where[c]
            m = d.objects[i]
            o = w.offsets[i]
            rho = m.left_action[e]
            cols.append(project({o + gg * m.dim + u: rho.data[v][u] for u in range(m.dim)
                                 if rho.data[v][u]}))
        racts.append(Matrix.from_columns(fld, cols, nq) if cols else Matrix.zeros(fld, 0, 0))
    label = f"coend[{getattr(g, 'label', '') or 'id'}]"
    carrier = Bimodule(b, a, nq, lacts, racts, label)
    injections = []
    for i, (gm, m) in enumerate(zip(w.values, d.objects)):
        o = w.offsets[i]
        cols = [project({o + t: fld.one}) for t in range(gm.dim * m.dim)]
        injections.append(Matrix.from_columns(fld, cols, nq) if cols else Matrix.zeros(fld, nq, 0))
    checks = {"dinatural": dinatural}
    comparison = None
    gc = _apply(g, coregular_bimodule(a))
    if gc.left_action != _apply(g, coregular_left(a)).left_action:
        raise AssertionError("G(A^*) as a bimodule and as a left module use different bases")
    checks["comparison exists"] = dinatural
    if dinatural:
        comparison = ModuleMorphism(carrier, gc, kmat.submatrix(range(kmat.rows), qcols))
        checks["comparison is a bimodule map"] = comparison.is_module_map()
        checks["comparison is invertible"] = comparison.is_invertible()
    return CoendResult(carrier, qcols, injections, comparison, gc, dinatural, checks, notes)


# ---------------------------------------------------------------------------


@dataclass
class PeterWeylReport:
    end_iso: IsoDecision | None
    coend_iso: IsoDecision | None
    dinaturality: bool
    end: EndResult | None
    coend: CoendResult | None
    checks: dict
    notes: list

    @property
    def passed(self):
        return all(self.checks.values())


def _decision_from_comparison(c: ModuleMorphism | None, ok: bool):
    if c is None or not ok:
        return IsoDecision("refuted", None, None, "comparison map is not an isomorphism", "comparison")
    return IsoDecision("witnessed", c, c.inverse(), "", "comparison")


def _kind(g):
    return "identity" if g is None else g.kind


def verify_peter_weyl(a: Algebra, g, d: FiniteDiagram, ends=True, coends=True) -> PeterWeylReport:
    """End ~= G(A) and coend ~= G(A^*) through the comparison maps."""
    if d.algebra != a:
        raise AlgebraMismatch("diagram is over a different algebra")
    checks = {}
    notes = []
    end = coend = None
    e_iso = c_iso = None
    din = True
    if ends:
        if not d.contains(regular_left(a)):
            # co-Yoneda through the injective cogenerator needs G left exact
            if not (d.contains(coregular_left(a)) and _kind(g) in ("identity", "lex")):
                raise DiagramError("end verification needs the regular module in the diagram")
            notes.append("end verified through A^* only")
        end = end_weighted(g, d)
        for k, v in end.checks.items():
            checks["end " + k] = v
        din = din and end.dinatural
        e_iso = _decision_from_comparison(end.comparison, all(end.checks.values()))
        checks["end comparison is an isomorphism"] = e_iso.witnessed
    if coends:
        if not d.contains(coregular_left(a)):
            # presenting by the projective generator needs G right exact
            if not (d.contains(regular_left(a)) and _kind(g) in ("identity", "rex")):
                raise DiagramError("coend verification needs the co-regular module in the diagram")
            notes.append("coend verified through A only")
        coend = coend_weighted(g, d)
        for k, v in coend.checks.items():
            checks["coend " + k] = v
        din = din and coend.dinatural
        c_iso = _decision_from_comparison(coend.comparison, all(coend.checks.values()))
        checks["coend comparison is an isomorphism"] = c_iso.witnessed
    return PeterWeylReport(e_iso, c_iso, din, end, coend, checks, notes)


def dual_exchange(d: FiniteDiagram, seed=0, trials=DEFAULT_TRIALS, budget=DEFAULT_BUDGET) -> IsoDecision:
    """(coend over d)^* against the end over the opposite diagram, for the identity functor.

    The end over A^op is an A^op-A^op-bimodule, read back as an A-A-bimodule.
    """
    c = coend_weighted(None, d)
    e = end_weighted(None, opposite_diagram(d))
    return module_iso_exists(dual_module(c.carrier), swap_sides(e.carrier), seed, trials, budget)


__all__ = [
    "CoendResult", "DiagramError", "EndResult", "FiniteDiagram", "PeterWeylReport",
    "coend_weighted", "dual_exchange", "end_weighted", "opposite_diagram", "standard_diagram",
    "verify_peter_weyl",
]
