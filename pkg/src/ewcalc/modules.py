"""
Modules, bimodules and their morphisms.

Every module is stored as a B-A-bimodule: a left module over A is an
A-k-bimodule, a right module is a k-A-bimodule, and a plain vector space is a
k-k-bimodule, with k the 1-dimensional base-field algebra.  Actions are given
by one matrix per basis element of the acting algebra, acting on column
vectors.  For the right action, ``right_action[i]`` is the matrix of
``x -> x . e_i``.

The dual of a V carrying a B-A-structure is the A-B-bimodule on V^* with the
dual basis, whose action matrices are transposes.  With this convention
``dual_module(dual_module(m)) == m`` holds entrywise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

from .algebra import Algebra, AlgebraMorphism, base_field, opposite, tensor_algebra
from .linalg import (
    Eliminator, Field, FieldMismatch, Matrix, Subspace, kronecker, sparse_row,
)


class ModuleError(ValueError):
    pass


class AlgebraMismatch(ModuleError):
    pass


DEFAULT_TRIALS = 64
DEFAULT_BUDGET = 10 ** 6


class Bimodule:
    """A finite-dimensional left-``left``, right-``right`` bimodule."""

    __slots__ = ("left", "right", "dim", "left_action", "right_action", "label", "_hash")

    def __init__(self, left: Algebra, right: Algebra, dim, left_action, right_action, label=""):
        if left.field != right.field:
            raise FieldMismatch("bimodule over algebras with different fields")
        self.left = left
        self.right = right
        self.dim = dim
        self.left_action = tuple(left_action)
        self.right_action = tuple(right_action)
        self.label = label
        self._hash = None
        if len(self.left_action) != left.dim or len(self.right_action) != right.dim:
            raise ModuleError("number of action matrices does not match algebra dimension")
        for m in self.left_action + self.right_action:
            if m.shape != (dim, dim):
                raise ModuleError(f"action matrix of shape {m.shape} on a {dim}-dim module")

    @property
    def field(self) -> Field:
        return self.left.field

    @property
    def is_left_module(self):
        return self.right.is_base_field

    @property
    def is_right_module(self):
        return self.left.is_base_field

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Bimodule):
            return NotImplemented
        return (self.dim == other.dim and self.left == other.left and self.right == other.right
                and self.left_action == other.left_action
                and self.right_action == other.right_action)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.left, self.right, self.dim, self.left_action, self.right_action))
        return self._hash

    def __repr__(self):
        name = self.label or "module"
        return f"<{name}: {self.left.label}-{self.right.label}, dim {self.dim}>"

    def act_left(self, vec):
        """Matrix of the left action of an algebra element given by coefficients."""
        return _lin_comb(self.field, self.dim, vec, self.left_action)

    def act_right(self, vec):
        return _lin_comb(self.field, self.dim, vec, self.right_action)

    def relabel(self, label):
        return Bimodule(self.left, self.right, self.dim, self.left_action, self.right_action, label)


def _lin_comb(field, n, coeffs, mats):
    out = Matrix.zeros(field, n, n)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + m.scale(c)
    return out


def _trivial_action(field, dim):
    return (Matrix.identity(field, dim),)


def left_module(alg: Algebra, action, label=""):
    action = list(action)
    dim = action[0].rows if action else 0
    k = base_field(alg.field)
    return Bimodule(alg, k, dim, action, _trivial_action(alg.field, dim), label)


def right_module(alg: Algebra, action, label=""):
    action = list(action)
    dim = action[0].rows if action else 0
    k = base_field(alg.field)
    return Bimodule(k, alg, dim, _trivial_action(alg.field, dim), action, label)


def vector_space(field, dim, label=""):
    k = base_field(field)
    return Bimodule(k, k, dim, _trivial_action(field, dim), _trivial_action(field, dim), label)


def zero_module(left, right):
    f = left.field
    z = Matrix.zeros(f, 0, 0)
    return Bimodule(left, right, 0, [z] * left.dim, [z] * right.dim, "0")


def validate_module(m: Bimodule):
    """List of violated module identities (empty iff ``m`` is a bimodule)."""
    out = []
    f = m.field
    ident = Matrix.identity(f, m.dim)
    for side, alg, acts in (("left", m.left, m.left_action), ("right", m.right, m.right_action)):
        if _lin_comb(f, m.dim, alg.unit, acts) != ident:
            out.append({"identity": f"{side} unit"})
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = acts[i] @ acts[j]
                # left: rho_i rho_j = rho(e_i e_j); right: rho_i rho_j = rho(e_j e_i)
                c = alg.mult[i][j] if side == "left" else alg.mult[j][i]
                if lhs != _lin_comb(f, m.dim, c, acts):
                    out.append({"identity": f"{side} action law", "indices": [i, j]})
    for i, a in enumerate(m.left_action):
        for j, b in enumerate(m.right_action):
            if a @ b != b @ a:
                out.append({"identity": "left and right actions commute", "indices": [i, j]})
    return out


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class ModuleMorphism:
    source: Bimodule
    target: Bimodule
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ModuleError(f"morphism matrix {self.matrix.shape} does not fit "
                              f"{self.source.dim} -> {self.target.dim}")

    def is_module_map(self):
        s, t, f = self.source, self.target, self.matrix
        if s.left != t.left or s.right != t.right:
            return False
        for g in s.left.generators:
            if t.left_action[g] @ f != f @ s.left_action[g]:
                return False
        for g in s.right.generators:
            if t.right_action[g] @ f != f @ s.right_action[g]:
                return False
        return True

    def compose(self, other):
        """self after other."""
        return ModuleMorphism(other.source, self.target, self.matrix @ other.matrix)

    def is_invertible(self):
        return self.matrix.is_invertible()

    def inverse(self):
        return ModuleMorphism(self.target, self.source, self.matrix.inverse())


def identity_morphism(m):
    return ModuleMorphism(m, m, Matrix.identity(m.field, m.dim))


# ---------------------------------------------------------------------------
# Hom spaces


def _intertwiner_rows(src_acts, tgt_acts, ds, dt, gens, field, p):
    """Sparse rows of  tgt(g) f - f src(g) = 0  for f a dt x ds matrix,
    variable f[r][c] at index r*ds + c."""
    for g in gens:
        a = tgt_acts[g].data
        b = src_acts[g].data
        for r in range(dt):
            arow = a[r]
            for c in range(ds):
                row = {}
                for s in range(dt):
                    x = arow[s]
                    if x:
                        k = s * ds + c
                        row[k] = row.get(k, 0) + x
                for s in range(ds):
                    x = b[s][c]
                    if x:
                        k = r * ds + s
                        row[k] = row.get(k, 0) - x
                if p:
                    row = {k: v % p for k, v in row.items() if v % p}
                else:
                    row = {k: v for k, v in row.items() if v}
                if row:
                    yield row


class HomSpace:
    """A Hom space with an RREF-derived basis; morphisms flattened row-major."""

    def __init__(self, source, target, space: Subspace):
        self.source = source
        self.target = target
        self.space = space
        ds, dt = source.dim, target.dim
        f = source.field
        self.matrices = [Matrix(f, dt, ds, tuple(tuple(v[r * ds:(r + 1) * ds]) for r in range(dt)))
                         for v in space.vectors]

    @property
    def dim(self):
        return self.space.dim

    def morphisms(self):
        return [ModuleMorphism(self.source, self.target, m) for m in self.matrices]

    def coords(self, mat: Matrix):
        flat = [x for r in mat.data for x in r]
        return self.space.coords(flat)

    def contains(self, mat: Matrix):
        flat = [x for r in mat.data for x in r]
        return self.space.contains(flat)

    def combine(self, coeffs):
        v = self.space.combine(coeffs)
        ds, dt = self.source.dim, self.target.dim
        return Matrix(self.source.field, dt, ds, tuple(tuple(v[r * ds:(r + 1) * ds]) for r in range(dt)))


@lru_cache(maxsize=4096)
def hom_space(m: Bimodule, n: Bimodule, sides="both") -> HomSpace:
    """Hom space between modules; ``sides`` is "both", "left" or "right"."""
    if sides in ("both", "left") and m.left != n.left:
        raise AlgebraMismatch(f"left algebras differ: {m.left} vs {n.left}")
    if sides in ("both", "right") and m.right != n.right:
        raise AlgebraMismatch(f"right algebras differ: {m.right} vs {n.right}")
    f = m.field
    p = f.p
    ds, dt = m.dim, n.dim

    def rows():
        if sides in ("both", "left"):
            yield from _intertwiner_rows(m.left_action, n.left_action, ds, dt, m.left.generators, f, p)
        if sides in ("both", "right"):
            yield from _intertwiner_rows(m.right_action, n.right_action, ds, dt, m.right.generators, f, p)

    return HomSpace(m, n, Subspace.kernel(rows(), ds * dt, f))


def hom_basis(m: Bimodule, n: Bimodule):
    """Basis of the space of module maps m -> n (both actions intertwined)."""
    return hom_space(m, n).morphisms()


@dataclass
class HomModule:
    """Hom_X(M, N) for M an X-Y and N an X-Z bimodule, as a Y-Z bimodule.

    Action: (y . f . z)(m) = f(m . y) . z.
    """

    module: Bimodule
    space: HomSpace

    def element(self, i):
        return self.space.matrices[i]


@lru_cache(maxsize=4096)
def hom_module(m: Bimodule, n: Bimodule) -> HomModule:
    hs = hom_space(m, n, "left")
    f = m.field
    d = hs.dim
    mats = hs.matrices

    def induced(op):
        cols = [hs.coords(op(a)) for a in mats]
        return Matrix.from_columns(f, cols, d) if d else Matrix.zeros(f, 0, 0)

    lacts = [induced(lambda a, y=y: a @ y) for y in m.right_action]
    racts = [induced(lambda a, z=z: z @ a) for z in n.right_action]
    mod = Bimodule(m.right, n.right, d, lacts, racts, f"Hom({m.label},{n.label})")
    return HomModule(mod, hs)


def hom_module_map(hm_src: HomModule, hm_tgt: HomModule, post: Matrix = None, pre: Matrix = None):
    """The map Hom(M, N) -> Hom(M', N'), a -> post . a . pre."""
    f = hm_src.module.field
    cols = []
    for a in hm_src.space.matrices:
        b = a
        if post is not None:
            b = post @ b
        if pre is not None:
            b = b @ pre
        cols.append(hm_tgt.space.coords(b))
    mat = Matrix.from_columns(f, cols, hm_tgt.module.dim) if cols else Matrix.zeros(
        f, hm_tgt.module.dim, 0)
    return ModuleMorphism(hm_src.module, hm_tgt.module, mat)


# ---------------------------------------------------------------------------
# duals and (co)regular bimodules


def dual_module(m: Bimodule) -> Bimodule:
    """m^* with (a . phi . b)(x) = phi(b . x . a); actions are transposes."""
    label = m.label[:-2] if m.label.endswith("^*") else (m.label + "^*" if m.label else "")
    return Bimodule(m.right, m.left, m.dim, [r.T for r in m.right_action],
                    [l.T for l in m.left_action], label)


def dual_morphism(f: ModuleMorphism) -> ModuleMorphism:
    return ModuleMorphism(dual_module(f.target), dual_module(f.source), f.matrix.T)


@lru_cache(maxsize=256)
def regular_bimodule(a: Algebra) -> Bimodule:
    return Bimodule(a, a, a.dim, a.left_mult, a.right_mult, f"{a.label}")


@lru_cache(maxsize=256)
def coregular_bimodule(a: Algebra) -> Bimodule:
    return dual_module(regular_bimodule(a)).relabel(f"{a.label}^*")


def forget_right(m: Bimodule) -> Bimodule:
    """The underlying left module."""
    if m.is_left_module:
        return m
    return left_module(m.left, m.left_action, m.label)


def forget_left(m: Bimodule) -> Bimodule:
    if m.is_right_module:
        return m
    return right_module(m.right, m.right_action, m.label)


def regular_left(a):
    return forget_right(regular_bimodule(a))


def coregular_left(a):
    return forget_right(coregular_bimodule(a))


def regular_right(a):
    return forget_left(regular_bimodule(a))


def swap_sides(m: Bimodule) -> Bimodule:
    """A B-A-bimodule seen as an A^op-B^op-bimodule (same matrices)."""
    return Bimodule(opposite(m.right), opposite(m.left), m.dim, m.right_action, m.left_action, m.label)


def as_left_over_tensor(m: Bimodule) -> Bimodule:
    """A B-A-bimodule as a left module over B (x) A^op; e_b (x) e_a acts by L_b R_a."""
    alg = tensor_algebra(m.left, opposite(m.right))
    acts = [l @ r for l in m.left_action for r in m.right_action]
    return left_module(alg, acts, m.label)


def from_left_over_tensor(x: Bimodule, left: Algebra, right: Algebra) -> Bimodule:
    """Inverse of :func:`as_left_over_tensor`."""
    if x.left != tensor_algebra(left, opposite(right)):
        raise AlgebraMismatch("module is not over left (x) right^op")
    f = x.field
    nb, na = left.dim, right.dim
    ul, ur = left.unit, right.unit
    lacts = []
    for b in range(nb):
        vec = [f.zero] * (nb * na)
        for a in range(na):
            if ur[a]:
                vec[b * na + a] = ur[a]
        lacts.append(x.act_left(vec))
    racts = []
    for a in range(na):
        vec = [f.zero] * (nb * na)
        for b in range(nb):
            if ul[b]:
                vec[b * na + a] = ul[b]
        racts.append(x.act_left(vec))
    return Bimodule(left, right, x.dim, lacts, racts, x.label)


# ---------------------------------------------------------------------------
# tensor products


class TensorProduct:
    """M (x)_A N as a quotient of M (x)_k N, with projection and section."""

    def __init__(self, m: Bimodule, n: Bimodule, elim: Eliminator):
        self.left_factor = m
        self.right_factor = n
        f = m.field
        self.field = f
        total = m.dim * n.dim
        self.ambient = total
        piv = elim.pivots
        self.lift_index = [j for j in range(total) if j not in piv]
        qpos = {j: q for q, j in enumerate(self.lift_index)}
        p = f.p
        # image of each ambient basis vector, as sparse {quotient index: coefficient}
        img = []
        for j in range(total):
            if j in qpos:
                img.append({qpos[j]: f.one})
            else:
                row = piv[j]
                img.append({qpos[c]: ((-v) % p if p else -v) for c, v in row.items() if c != j})
        self._img = img
        self.dim = len(self.lift_index)
        self.module = None

    def project_sparse(self, vec: dict):
        f = self.field
        p = f.p
        out = [f.zero] * self.dim
        for j, v in vec.items():
            for q, c in self._img[j].items():
                out[q] += v * c
        if p:
            out = [x % p for x in out]
        return out

    def project_dense(self, vec):
        return self.project_sparse(sparse_row(vec))

    def projection(self) -> Matrix:
        # column j is the image of ambient basis vector j
        cols = [self.project_sparse({j: self.field.one}) for j in range(self.ambient)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def section(self) -> Matrix:
        f = self.field
        cols = []
        for j in self.lift_index:
            c = [f.zero] * self.ambient
            c[j] = f.one
            cols.append(c)
        return Matrix.from_columns(f, cols, self.ambient)

    def pure(self, u, v):
        """Class of u (x) v for coefficient lists u, v."""
        nd = self.right_factor.dim
        vec = {}
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        vec[i * nd + j] = a * b
        return self.project_sparse(vec)

    def induced(self, other: "TensorProduct", fm: Matrix, fn: Matrix) -> Matrix:
        """Matrix of (fm (x) fn) from self to other."""
        nd, od = self.right_factor.dim, other.right_factor.dim
        cols = []
        fmc = fm.columns()
        fnc = fn.columns()
        for j in self.lift_index:
            i, jj = divmod(j, nd)
            vec = {}
            for s, a in enumerate(fmc[i]):
                if a:
                    for t, b in enumerate(fnc[jj]):
                        if b:
                            k = s * od + t
                            vec[k] = vec.get(k, 0) + a * b
            cols.append(other.project_sparse(vec))
        return Matrix.from_columns(self.field, cols, other.dim) if cols else Matrix.zeros(
            self.field, other.dim, 0)


@lru_cache(maxsize=4096)
def tensor_over_algebra(m: Bimodule, n: Bimodule) -> TensorProduct:
    """m (x)_A n for m an X-A and n an A-Y bimodule; returns a TensorProduct whose
    ``module`` is the X-Y bimodule."""
    if m.right != n.left:
        raise AlgebraMismatch(f"cannot tensor over {m.right} and {n.left}")
    f = m.field
    p = f.p
    dm, dn = m.dim, n.dim
    elim = Eliminator(dm * dn, f)
    alg = m.right
    for g in alg.generators:
        r = m.right_action[g].data
        l = n.left_action[g].data
        for i in range(dm):
            for j in range(dn):
                row = {}
                for s in range(dm):
                    x = r[s][i]
                    if x:
                        k = s * dn + j
                        row[k] = row.get(k, 0) + x
                for t in range(dn):
                    x = l[t][j]
                    if x:
                        k = i * dn + t
                        row[k] = row.get(k, 0) - x
                if p:
                    row = {k: v % p for k, v in row.items() if v % p}
                else:
                    row = {k: v for k, v in row.items() if v}
                if row:
                    elim.add(row)
    tp = TensorProduct(m, n, elim)
    idn = Matrix.identity(f, dn)
    idm = Matrix.identity(f, dm)
    lacts = [tp.induced(tp, x, idn) for x in m.left_action]
    racts = [tp.induced(tp, idm, y) for y in n.right_action]
    label = f"{m.label}(x){n.label}" if m.label and n.label else ""
    tp.module = Bimodule(m.left, n.right, tp.dim, lacts, racts, label)
    return tp


def tensor_map(f: ModuleMorphism, g: ModuleMorphism) -> ModuleMorphism:
    """f (x)_A g between the tensor products over the middle algebra."""
    src = tensor_over_algebra(f.source, g.source)
    tgt = tensor_over_algebra(f.target, g.target)
    return ModuleMorphism(src.module, tgt.module, src.induced(tgt, f.matrix, g.matrix))


def tensor_over_field(m: Bimodule, v: Bimodule) -> Bimodule:
    """m (x)_k v.

    Needs ``v`` to have trivial left structure.  If ``m`` has a right structure,
    ``v`` must be a plain vector space and the result is m (x) v with both
    actions on the first factor; otherwise the right structure of ``v``
    acts on the second factor.
    """
    f = m.field
    if not v.left.is_base_field:
        raise AlgebraMismatch("tensor_over_field needs v with trivial left structure")
    if not m.right.is_base_field and not v.right.is_base_field:
        raise AlgebraMismatch("both factors carry a right action")
    iv = Matrix.identity(f, v.dim)
    im = Matrix.identity(f, m.dim)
    lacts = [kronecker(a, iv) for a in m.left_action]
    if not m.right.is_base_field:
        right = m.right
        racts = [kronecker(b, iv) for b in m.right_action]
    else:
        right = v.right
        racts = [kronecker(im, b) for b in v.right_action]
    return Bimodule(m.left, right, m.dim * v.dim, lacts, racts,
                    f"{m.label}(x)k{v.label}" if m.label else "")


def external_tensor(m: Bimodule, n: Bimodule) -> Bimodule:
    """m (x)_k n as a (X (x) Z)-(Y (x) W)-bimodule via Kronecker actions."""
    lacts = [kronecker(a, b) for a in m.left_action for b in n.left_action]
    racts = [kronecker(a, b) for a in m.right_action for b in n.right_action]
    return Bimodule(tensor_algebra(m.left, n.left), tensor_algebra(m.right, n.right),
                    m.dim * n.dim, lacts, racts, f"{m.label}#{n.label}")


def direct_sum(*ms: Bimodule) -> Bimodule:
    m0 = ms[0]
    for m in ms[1:]:
        if m.left != m0.left or m.right != m0.right:
            raise AlgebraMismatch("direct sum of modules over different algebras")
    f = m0.field
    lacts = [Matrix.diagonal_blocks(f, [m.left_action[i] for m in ms]) for i in range(m0.left.dim)]
    racts = [Matrix.diagonal_blocks(f, [m.right_action[i] for m in ms]) for i in range(m0.right.dim)]
    label = "+".join(m.label or "?" for m in ms)
    return Bimodule(m0.left, m0.right, sum(m.dim for m in ms), lacts, racts, label)


# ---------------------------------------------------------------------------
# twists, sub- and quotient modules


def restrict_left(m: Bimodule, phi: AlgebraMorphism) -> Bimodule:
    """Restriction of the left action along phi: C -> m.left."""
    if phi.target != m.left:
        raise AlgebraMismatch("restriction along a morphism into a different algebra")
    acts = [m.act_left(phi.image(i)) for i in range(phi.source.dim)]
    return Bimodule(phi.source, m.right, m.dim, acts, m.right_action, m.label)


def restrict_right(m: Bimodule, phi: AlgebraMorphism) -> Bimodule:
    if phi.target != m.right:
        raise AlgebraMismatch("restriction along a morphism into a different algebra")
    acts = [m.act_right(phi.image(i)) for i in range(phi.source.dim)]
    return Bimodule(m.left, phi.source, m.dim, m.left_action, acts, m.label)


def _closure(m: Bimodule, vectors):
    """Basis (RREF rows) of the smallest subspace containing ``vectors`` and
    stable under both actions."""
    f = m.field
    elim = Eliminator(m.dim, f)
    queue = [list(v) for v in vectors]
    mats = [m.left_action[g] for g in m.left.generators] + [m.right_action[g] for g in m.right.generators]
    while queue:
        v = queue.pop()
        r = elim.reduce(sparse_row(v))
        if not r:
            continue
        elim.add(r)
        for a in mats:
            queue.append(a.apply(v))
    return elim


def submodule(m: Bimodule, vectors):
    """The submodule generated by ``vectors``, with its inclusion."""
    elim = _closure(m, vectors)
    basis = elim.rref_rows()
    f = m.field
    inc = Matrix.from_columns(f, basis, m.dim) if basis else Matrix.zeros(f, m.dim, 0)
    d = len(basis)
    # coordinates: the RREF basis has identity at pivot positions
    piv = sorted(elim.pivots)

    def restrict(a):
        cols = []
        for b in basis:
            img = a.apply(b)
            cols.append([img[c] for c in piv])
        return Matrix.from_columns(f, cols, d) if d else Matrix.zeros(f, 0, 0)

    sub = Bimodule(m.left, m.right, d, [restrict(a) for a in m.left_action],
                   [restrict(a) for a in m.right_action], f"sub({m.label})")
    return sub, ModuleMorphism(sub, m, inc)


def quotient_module(m: Bimodule, vectors):
    """m modulo the submodule generated by ``vectors``, with the projection."""
    elim = _closure(m, vectors)
    f = m.field
    p = f.p
    keep = elim.free_columns()
    qpos = {j: q for q, j in enumerate(keep)}
    d = len(keep)

    def proj(vec):
        out = [f.zero] * d
        for j, v in enumerate(vec):
            if not v:
                continue
            if j in qpos:
                out[qpos[j]] += v
            else:
                for c, x in elim.pivots[j].items():
                    if c != j:
                        out[qpos[c]] -= v * x
        return [x % p for x in out] if p else out

    def induced(a):
        cols = [proj(a.col(j)) for j in keep]
        return Matrix.from_columns(f, cols, d) if d else Matrix.zeros(f, 0, 0)

    q = Bimodule(m.left, m.right, d, [induced(a) for a in m.left_action],
                 [induced(a) for a in m.right_action], f"{m.label}/sub")
    pm = Matrix.from_columns(f, [proj([f.one if i == j else f.zero for i in range(m.dim)])
                                 for j in range(m.dim)], d) if m.dim else Matrix.zeros(f, d, 0)
    return q, ModuleMorphism(m, q, pm)


def left_ideal(a: Algebra, elem, label=""):
    """The left ideal A.elem as a left module."""
    sub, _ = submodule(regular_left(a), [a.right_mult_by(elem).apply(list(a.unit))])
    return sub.relabel(label or f"{a.label}.e")


def is_simple_dimension_one(m):
    return m.dim == 1


# ---------------------------------------------------------------------------
# isomorphism search


@dataclass
class IsoDecision:
    """Outcome of an isomorphism search: "witnessed", "refuted" or "inconclusive"."""

    status: str
    witness: ModuleMorphism | None = None
    inverse: ModuleMorphism | None = None
    reason: str = ""
    method: str = ""

    def __bool__(self):
        return self.status == "witnessed"

    @property
    def witnessed(self):
        return self.status == "witnessed"

    @property
    def refuted(self):
        return self.status == "refuted"

    @property
    def inconclusive(self):
        return self.status == "inconclusive"


@dataclass
class SearchResult:
    status: str
    coeffs: list | None = None
    reason: str = ""
    method: str = ""


def _combine_family(field, basis, coeffs):
    """basis: list of elements, each a tuple of matrices (components)."""
    ncomp = len(basis[0])
    out = []
    for c in range(ncomp):
        acc = None
        for k, b in zip(coeffs, basis):
            if not k:
                continue
            term = b[c].scale(k)
            acc = term if acc is None else acc + term
        if acc is None:
            acc = Matrix.zeros(field, basis[0][c].rows, basis[0][c].cols)
        out.append(acc)
    return out


def search_invertible(field, basis, seed=0, trials=DEFAULT_TRIALS, budget=DEFAULT_BUDGET):
    """Search the span of ``basis`` (a list of families of square matrices) for an
    element with every component invertible.

    Random trials first; then, if the search space fits in ``budget``, an
    exhaustive grid that makes a negative answer exact: over F_p all of
    F_p^k up to scaling; over Q the grid {0..D}^k with D the total degree of
    the product of determinants, on which a nonzero polynomial of degree <= D
    in each variable cannot vanish identically.
    """
    if not basis:
        return SearchResult("refuted", reason="the space is zero", method="dimension")
    comps = basis[0]
    if any(m.rows != m.cols for m in comps):
        return SearchResult("refuted", reason="components are not square", method="dimension")
    if all(m.rows == 0 for m in comps):
        return SearchResult("witnessed", coeffs=[field.zero] * len(basis), method="empty")
    k = len(basis)
    rng = random.Random(seed)
    p = field.p

    def ok(coeffs):
        return all(m.det() for m in _combine_family(field, basis, coeffs))

    # basis elements themselves are cheap, frequent winners
    for i in range(k):
        c = [field.zero] * k
        c[i] = field.one
        if ok(c):
            return SearchResult("witnessed", coeffs=c, method="basis element")
    for t in range(trials):
        if p:
            c = [rng.randrange(p) for _ in range(k)]
        else:
            bound = 2 ** (1 + t // 8)
            c = [field(rng.randint(-bound, bound)) for _ in range(k)]
        if ok(c):
            return SearchResult("witnessed", coeffs=c, method="random")
    if p:
        size = (p ** k - 1) // (p - 1)
        if size <= budget:
            for c in _projective_points(p, k):
                if ok(c):
                    return SearchResult("witnessed", coeffs=c, method="grid")
            return SearchResult("refuted", reason=f"no invertible element in F_{p}^{k}",
                                method="exhaustive grid")
    else:
        deg = sum(m.rows for m in comps)
        size = (deg + 1) ** k
        if size <= budget:
            for tup in iproduct(range(deg + 1), repeat=k):
                c = [field(x) for x in tup]
                if ok(c):
                    return SearchResult("witnessed", coeffs=c, method="grid")
            return SearchResult("refuted", reason=f"determinant vanishes on the grid {{0..{deg}}}^{k}",
                                method="exhaustive grid")
    return SearchResult("inconclusive", reason=f"search space {size} exceeds budget {budget}",
                        method="random")


def _projective_points(p, k):
    for lead in range(k):
        for rest in iproduct(range(p), repeat=k - lead - 1):
            yield [0] * lead + [1] + list(rest)


def module_iso_exists(m: Bimodule, n: Bimodule, seed=0, trials=DEFAULT_TRIALS,
                      budget=DEFAULT_BUDGET) -> IsoDecision:
    """Decide m ~= n; a witness always comes with its exact inverse."""
    if m.left != n.left or m.right != n.right:
        raise AlgebraMismatch("isomorphism test between modules over different algebras")
    if m.dim != n.dim:
        return IsoDecision("refuted", reason=f"dimensions differ ({m.dim} vs {n.dim})",
                           method="dimension")
    if m == n:
        w = identity_morphism(m)
        return IsoDecision("witnessed", w, w, method="identity")
    hs = hom_space(m, n)
    if hs.dim == 0 and m.dim:
        return IsoDecision("refuted", reason="Hom(m, n) = 0", method="dimension")
    d_mm, d_nn, d_nm = hom_space(m, m).dim, hom_space(n, n).dim, hom_space(n, m).dim
    if len({hs.dim, d_mm, d_nn, d_nm}) > 1:
        return IsoDecision(
            "refuted",
            reason=f"hom dimensions differ: Hom(m,n)={hs.dim}, End(m)={d_mm}, End(n)={d_nn}, Hom(n,m)={d_nm}",
            method="hom invariants")
    return _iso_from_space(hs, seed, trials, budget)


def _iso_from_space(hs: HomSpace, seed, trials, budget):
    f = hs.source.field
    res = search_invertible(f, [(mm,) for mm in hs.matrices], seed, trials, budget)
    if res.status == "witnessed":
        w = hs.combine(res.coeffs)
        wm = ModuleMorphism(hs.source, hs.target, w)
        return IsoDecision("witnessed", wm, wm.inverse(), method=res.method)
    return IsoDecision(res.status, reason=res.reason, method=res.method)


def iso_in_space(hs: HomSpace, seed=0, trials=DEFAULT_TRIALS, budget=DEFAULT_BUDGET):
    """Invertible element of a given Hom space (no invariant pre-check)."""
    if hs.source.dim != hs.target.dim:
        return IsoDecision("refuted", reason="dimensions differ", method="dimension")
    return _iso_from_space(hs, seed, trials, budget)


def verify_iso_witness(w: ModuleMorphism, inv: ModuleMorphism):
    """Exact re-verification of an isomorphism certificate."""
    f = w.source.field
    return (w.is_module_map() and inv.source == w.target and inv.target == w.source
            and w.matrix @ inv.matrix == Matrix.identity(f, w.target.dim)
            and inv.matrix @ w.matrix == Matrix.identity(f, w.source.dim))


__all__ = [
    "AlgebraMismatch", "Bimodule", "HomModule", "HomSpace", "IsoDecision", "ModuleError",
    "ModuleMorphism", "TensorProduct", "as_left_over_tensor", "coregular_bimodule",
    "coregular_left", "direct_sum", "dual_module", "dual_morphism", "external_tensor",
    "forget_left", "forget_right", "from_left_over_tensor", "hom_basis", "hom_module",
    "hom_space", "identity_morphism", "left_ideal", "left_module", "module_iso_exists",
    "quotient_module", "regular_bimodule", "regular_left", "regular_right", "restrict_left",
    "restrict_right", "right_module", "search_invertible", "submodule", "swap_sides",
    "tensor_map", "tensor_over_algebra", "tensor_over_field", "validate_module",
    "vector_space", "verify_iso_witness", "zero_module",
]
