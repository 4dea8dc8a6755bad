"""
Finite-dimensional Hopf algebras: axioms, rigid duals, integrals and the
Radford package (modular function, distinguished group-like, distinguished
invertible object, quadruple dual, Nakayama functors versus double duals).

Conventions:
  * comult[i][j][k] is the coefficient of e_j (x) e_k in Delta(e_i);
  * the right dual m^* of a left module m is the dual space with
    a.f = f o rho(S(a)), the left dual uses S^{-1};
  * the left integral L satisfies h L = eps(h) L, the modular function
    alpha is given by L h = alpha(h) L;
  * the integral functional lam satisfies (lam (x) id) Delta(x) = lam(x) 1,
    and the distinguished group-like g is read off from
    (id (x) lam) Delta(x) = lam(x) g.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .algebra import (
    Algebra, AlgebraMorphism, base_field, group_algebra,
    validate_algebra,
)
from .linalg import Eliminator, Field, Matrix, QQ, kronecker, solve_linear, sparse_row
from .modules import (
    Bimodule, IsoDecision, ModuleMorphism, coregular_bimodule, hom_module,
    left_module, module_iso_exists, regular_bimodule,
    restrict_left, restrict_right, tensor_over_algebra, forget_right,
    DEFAULT_BUDGET, DEFAULT_TRIALS,
)


class HopfError(ValueError):
    pass


class HopfAlgebra:
    def __init__(self, algebra: Algebra, comult, counit, antipode: Matrix, antipode_inverse=None,
                 label=""):
        f = algebra.field
        n = algebra.dim
        self.algebra = algebra
        self.comult = tuple(tuple(tuple(f(x) for x in r) for r in row) for row in comult)
        self.counit = tuple(f(x) for x in counit)
        if len(self.comult) != n or any(len(r) != n or any(len(c) != n for c in r) for r in self.comult):
            raise HopfError("comultiplication tensor has the wrong shape")
        if len(self.counit) != n:
            raise HopfError("counit has the wrong length")
        if antipode.shape != (n, n):
            raise HopfError("antipode has the wrong shape")
        self.antipode = antipode
        if antipode_inverse is None:
            antipode_inverse = antipode.inverse()
        self.antipode_inverse = antipode_inverse
        self.label = label or algebra.label

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self):
        return self.algebra.dim

    def __repr__(self):
        return f"HopfAlgebra({self.label}, dim={self.dim}, {self.field!r})"

    def __eq__(self, other):
        return (isinstance(other, HopfAlgebra) and self.algebra == other.algebra
                and self.comult == other.comult and self.counit == other.counit
                and self.antipode == other.antipode)

    def __hash__(self):
        return hash((self.algebra, self.comult, self.counit))

    @cached_property
    def comult_matrix(self) -> Matrix:
        """n^2 x n matrix of Delta, rows indexed by j*n + k."""
        n = self.dim
        return Matrix(self.field, n * n, n, tuple(
            tuple(self.comult[i][j][k] for i in range(n)) for j in range(n) for k in range(n)))

    def coproduct(self, vec):
        return self.comult_matrix.apply(vec)

    def eps(self, vec):
        f = self.field
        s = f.zero
        for a, b in zip(self.counit, vec):
            if a and b:
                s += a * b
        return s % f.p if f.p else s

    def S(self, vec):
        return self.antipode.apply(vec)

    def S_power(self, k) -> Matrix:
        base = self.antipode if k >= 0 else self.antipode_inverse
        out = Matrix.identity(self.field, self.dim)
        for _ in range(abs(k)):
            out = base @ out
        return out

    def antipode_morphism(self, k) -> AlgebraMorphism:
        """S^k for even k, an algebra automorphism."""
        if k % 2:
            raise HopfError("odd powers of the antipode are anti-automorphisms")
        return AlgebraMorphism(self.algebra, self.algebra, self.S_power(k))


def _tensor_coeffs(n, vec):
    return [[vec[j * n + k] for k in range(n)] for j in range(n)]


def _square_product(a, u, v):
    """Product in a (x) a of two coefficient vectors, without building a (x) a."""
    f = a.field
    p = f.p
    n = a.dim
    out = [f.zero] * (n * n)
    su = [(divmod(r, n), x) for r, x in enumerate(u) if x]
    sv = [(divmod(r, n), y) for r, y in enumerate(v) if y]
    for (i, j), x in su:
        for (k, l), y in sv:
            ca, cb = a.mult[i][k], a.mult[j][l]
            c = x * y
            for s, z in enumerate(ca):
                if z:
                    for t, w in enumerate(cb):
                        if w:
                            out[s * n + t] += c * z * w
    return [f(x) for x in out] if p else out


def validate_hopf(h: HopfAlgebra):
    """List of violated Hopf algebra axioms (empty iff h is a Hopf algebra)."""
    out = [dict(r, structure="algebra") for r in validate_algebra(h.algebra)]
    a = h.algebra
    f = h.field
    p = f.p
    n = h.dim
    dm = h.comult_matrix
    ident = Matrix.identity(f, n)
    # coassociativity: (Delta (x) id) Delta = (id (x) Delta) Delta
    lhs = kronecker(dm, ident) @ dm
    rhs = kronecker(ident, dm) @ dm
    if lhs != rhs:
        out.append({"identity": "coassociativity"})
    eps_row = Matrix(f, 1, n, (h.counit,))
    if kronecker(eps_row, ident) @ dm != ident:
        out.append({"identity": "left counit"})
    if kronecker(ident, eps_row) @ dm != ident:
        out.append({"identity": "right counit"})
    # Delta and eps are unital algebra maps
    unit2 = [x * y for x in a.unit for y in a.unit]
    if p:
        unit2 = [x % p for x in unit2]
    if h.coproduct(list(a.unit)) != unit2:
        out.append({"identity": "comultiplication is unital"})
    if h.eps(list(a.unit)) != f.one:
        out.append({"identity": "counit is unital"})
    for i in range(n):
        di = h.coproduct(a.basis_vector(i))
        for j in range(n):
            dj = h.coproduct(a.basis_vector(j))
            prod = list(a.mult[i][j])
            if h.coproduct(prod) != _square_product(a, di, dj):
                out.append({"identity": "comultiplication is multiplicative", "indices": [i, j]})
            if h.eps(prod) != f(h.counit[i] * h.counit[j]):
                out.append({"identity": "counit is multiplicative", "indices": [i, j]})
    # antipode axioms
    for i in range(n):
        d = _tensor_coeffs(n, h.coproduct(a.basis_vector(i)))
        left = [f.zero] * n
        right = [f.zero] * n
        for j in range(n):
            for k in range(n):
                c = d[j][k]
                if not c:
                    continue
                sj = h.S(a.basis_vector(j))
                sk = h.S(a.basis_vector(k))
                lp = a.product(sj, a.basis_vector(k))
                rp = a.product(a.basis_vector(j), sk)
                for t in range(n):
                    left[t] += c * lp[t]
                    right[t] += c * rp[t]
        target = [h.counit[i] * u for u in a.unit]
        if p:
            left = [x % p for x in left]
            right = [x % p for x in right]
            target = [x % p for x in target]
        if left != target:
            out.append({"identity": "antipode (S * id)", "indices": [i]})
        if right != target:
            out.append({"identity": "antipode (id * S)", "indices": [i]})
    if h.antipode @ h.antipode_inverse != ident or h.antipode_inverse @ h.antipode != ident:
        out.append({"identity": "antipode inverse"})
    return out


def antipode_is_antimultiplicative(h: HopfAlgebra):
    a = h.algebra
    for i in range(h.dim):
        for j in range(h.dim):
            lhs = h.S(list(a.mult[i][j]))
            rhs = a.product(h.S(a.basis_vector(j)), h.S(a.basis_vector(i)))
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# constructions


def solve_antipode(a: Algebra, comult, counit) -> Matrix:
    """The convolution inverse of the identity: sum S(e_j) e_k d[i][j][k] = eps(e_i) 1."""
    f = a.field
    n = a.dim
    # unknown S[t][j] at index t*n + j
    elim_rows = []
    rhs = []
    rm = a.right_mult
    for i in range(n):
        for t in range(n):
            row = {}
            for j in range(n):
                for k in range(n):
                    c = comult[i][j][k]
                    if not c:
                        continue
                    # (S(e_j) e_k)_t = sum_s R_k[t][s] S[s][j]
                    col = rm[k].data[t]
                    for s in range(n):
                        if col[s]:
                            key = s * n + j
                            row[key] = row.get(key, 0) + c * col[s]
            elim_rows.append([row.get(x, 0) for x in range(n * n)])
            rhs.append([f(counit[i] * a.unit[t])])
    sol = solve_linear(Matrix.from_rows(f, elim_rows, n * n), Matrix.from_rows(f, rhs, 1))
    if not sol.consistent or sol.kernel_basis:
        raise HopfError("antipode equation has no unique solution")
    v = sol.particular.col(0)
    return Matrix(f, n, n, tuple(tuple(v[t * n:(t + 1) * n]) for t in range(n)))


def group_hopf(table, field=QQ, label="kG"):
    alg = group_algebra(table, field, label)
    n = alg.dim
    ident = alg.unit.index(field.one)
    comult = [[[1 if (j == i and k == i) else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    counit = [1] * n
    inv = [next(j for j in range(n) if table[i][j] == ident) for i in range(n)]
    s = Matrix.from_columns(field, [alg.basis_vector(inv[i]) for i in range(n)], n)
    return HopfAlgebra(alg, comult, counit, s, label=label)


def cyclic_group_hopf(n, field=QQ):
    return group_hopf([[(i + j) % n for j in range(n)] for i in range(n)], field, f"kC{n}")


def trivial_hopf(field=QQ):
    return HopfAlgebra(base_field(field), [[[1]]], [1], Matrix.identity(field, 1), label="k")


def taft_algebra(n, omega, field=QQ, label=None):
    """Taft algebra: g^n = 1, x^n = 0, x g = omega g x, Delta g = g (x) g,
    Delta x = x (x) 1 + g (x) x.  Basis g^i x^j at index n*i + j."""
    f = field
    w = f(omega)
    powers = [f.one]
    for _ in range(n * n):
        powers.append(powers[-1] * w % f.p if f.p else powers[-1] * w)
    if powers[n] != f.one or any(powers[k] == f.one for k in range(1, n)):
        raise HopfError(f"{omega} is not a primitive {n}-th root of unity")
    d = n * n
    mult = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j + l < n:
                        mult[n * i + j][n * k + l][n * ((i + k) % n) + j + l] = powers[j * k]
    unit = [1] + [0] * (d - 1)
    alg = Algebra(f, mult, unit, label=label or ("H4" if n == 2 else f"T{n}"))
    one = alg.basis_vector(0)

    def pure(u, v):
        return [x * y for x in u for y in v]

    g = alg.basis_vector(n)
    x = alg.basis_vector(1)
    dg = pure(g, g)
    dx = [a + b for a, b in zip(pure(x, one), pure(g, x))]
    comult_vecs = []
    for i in range(n):
        for j in range(n):
            v = pure(one, one)
            for _ in range(i):
                v = _square_product(alg, v, dg)
            for _ in range(j):
                v = _square_product(alg, v, dx)
            comult_vecs.append(v)
    comult = [[[comult_vecs[b][j * d + k] for k in range(d)] for j in range(d)] for b in range(d)]
    counit = [1 if b % n == 0 else 0 for b in range(d)]
    s = solve_antipode(alg, comult, counit)
    return HopfAlgebra(alg, comult, counit, s, label=alg.label)


def sweedler(field=QQ):
    return taft_algebra(2, -1, field, "H4")


def hopf_embedding_violations(k: HopfAlgebra, h: HopfAlgebra, emb: AlgebraMorphism):
    """Checks that emb: k -> h is a Hopf algebra map (and injective)."""
    out = [dict(v, structure="algebra map") for v in emb.violations()]
    if emb.matrix.rank() != k.dim:
        out.append({"identity": "injectivity"})
    e2 = kronecker(emb.matrix, emb.matrix)
    if h.comult_matrix @ emb.matrix != e2 @ k.comult_matrix:
        out.append({"identity": "comultiplication compatibility"})
    eh = Matrix(h.field, 1, h.dim, (h.counit,))
    ek = Matrix(k.field, 1, k.dim, (k.counit,))
    if eh @ emb.matrix != ek:
        out.append({"identity": "counit compatibility"})
    if h.antipode @ emb.matrix != emb.matrix @ k.antipode:
        out.append({"identity": "antipode compatibility"})
    return out


# ---------------------------------------------------------------------------
# modules over a Hopf algebra


def _action(h: HopfAlgebra, m: Bimodule, mat: Matrix):
    """Action matrices a -> m.act_left(mat a), one per basis element."""
    return [m.act_left(mat.col(i)) for i in range(h.dim)]


def trivial_module(h: HopfAlgebra) -> Bimodule:
    f = h.field
    return left_module(h.algebra, [Matrix(f, 1, 1, ((c,),)) for c in h.counit], "1")


def character_module(h: HopfAlgebra, chi, label="") -> Bimodule:
    f = h.field
    return left_module(h.algebra, [Matrix(f, 1, 1, ((f(c),),)) for c in chi], label)


def character(m: Bimodule):
    if m.dim != 1:
        raise HopfError("character of a module that is not 1-dimensional")
    return [a.data[0][0] for a in m.left_action]


def rigid_dual(h: HopfAlgebra, m: Bimodule, side="right") -> Bimodule:
    """right: a.f = f o rho(S(a)); left: a.f = f o rho(S^{-1}(a))."""
    s = h.antipode if side == "right" else h.antipode_inverse
    acts = [x.T for x in _action(h, m, s)]
    suffix = "^*" if side == "right" else "*^"
    return left_module(h.algebra, acts, m.label + suffix if m.label else "")


def iterated_dual(h, m, k, side="right"):
    for _ in range(k):
        m = rigid_dual(h, m, side)
    return m


def tensor_modules(h: HopfAlgebra, m: Bimodule, n: Bimodule) -> Bimodule:
    f = h.field
    hd = h.dim
    acts = []
    for i in range(hd):
        acc = Matrix.zeros(f, m.dim * n.dim, m.dim * n.dim)
        for j in range(hd):
            for k in range(hd):
                c = h.comult[i][j][k]
                if c:
                    acc = acc + kronecker(m.left_action[j], n.left_action[k]).scale(c)
        acts.append(acc)
    return left_module(h.algebra, acts, f"{m.label}.{n.label}" if m.label and n.label else "")


def tensor_many(h, *ms):
    out = ms[0]
    for m in ms[1:]:
        out = tensor_modules(h, out, m)
    return out


def _coords(m):
    f = m.field
    return [[f.one if i == j else f.zero for i in range(m.dim)] for j in range(m.dim)]


def duality_maps(h: HopfAlgebra, m: Bimodule):
    """ev/coev for the right and left duals, as module morphisms."""
    f = h.field
    d = m.dim
    one = trivial_module(h)
    rd = rigid_dual(h, m, "right")
    ld = rigid_dual(h, m, "left")
    # ev^r: m^* (x) m -> 1, phi (x) v -> phi(v); index phi*d + v
    ev_row = [f.one if i == j else f.zero for i in range(d) for j in range(d)]
    ev = Matrix(f, 1, d * d, (tuple(ev_row),))
    coev = ev.T
    return {
        "ev_right": ModuleMorphism(tensor_modules(h, rd, m), one, ev),
        "coev_right": ModuleMorphism(one, tensor_modules(h, m, rd), coev),
        "ev_left": ModuleMorphism(tensor_modules(h, m, ld), one, ev),
        "coev_left": ModuleMorphism(one, tensor_modules(h, ld, m), coev),
    }


def verify_duality(h: HopfAlgebra, m: Bimodule):
    """Module-map property of the four (co)evaluations and the zigzag identities."""
    maps = duality_maps(h, m)
    f = h.field
    d = m.dim
    out = {k: v.is_module_map() for k, v in maps.items()}
    idm = Matrix.identity(f, d)
    ev, coev = maps["ev_right"].matrix, maps["coev_right"].matrix
    # (id_m (x) ev)(coev (x) id_m) = id_m on m (x) m^* (x) m
    z1 = kronecker(idm, ev) @ kronecker(coev, idm)
    z2 = kronecker(ev, idm) @ kronecker(idm, coev)
    out["zigzag_right"] = z1 == idm and z2 == idm
    ev, coev = maps["ev_left"].matrix, maps["coev_left"].matrix
    z1 = kronecker(ev, idm) @ kronecker(idm, coev)
    z2 = kronecker(idm, ev) @ kronecker(coev, idm)
    out["zigzag_left"] = z1 == idm and z2 == idm
    return out


# ---------------------------------------------------------------------------
# integrals


@dataclass
class ModularData:
    left_integral: list
    integral_functional: list
    modular_function: list
    distinguished_grouplike: list
    checks: dict = dc_field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())


def _kernel(rows, n, f):
    e = Eliminator(n, f)
    for r in rows:
        e.add(r)
    return e.kernel_vectors()


def modular_data(h: HopfAlgebra) -> ModularData:
    a = h.algebra
    f = h.field
    p = f.p
    n = h.dim
    red = (lambda x: x % p) if p else (lambda x: x)
    # h L = eps(h) L for generators h
    rows = []
    for g in a.generators:
        m = a.left_mult[g] - Matrix.identity(f, n).scale(h.counit[g])
        rows.extend(sparse_row(r) for r in m.data)
    ker = _kernel(rows, n, f)
    if len(ker) != 1:
        raise HopfError(f"space of left integrals has dimension {len(ker)}")
    lam_int = ker[0]
    piv = next(i for i, x in enumerate(lam_int) if x)
    alpha = []
    for i in range(n):
        v = a.right_mult[i].apply(lam_int)
        alpha.append(red(v[piv] * f.inv(lam_int[piv])))
    # (lam (x) id) Delta(e_i) = lam_i 1: for each i and t,
    # sum_j d[i][j][t] lam_j - lam_i u_t = 0
    rows = []
    for i in range(n):
        for t in range(n):
            row = {}
            for j in range(n):
                c = h.comult[i][j][t]
                if c:
                    row[j] = row.get(j, 0) + c
            if a.unit[t]:
                row[i] = row.get(i, 0) - a.unit[t]
            row = {k: red(v) for k, v in row.items() if red(v)}
            if row:
                rows.append(row)
    ker = _kernel(rows, n, f)
    if len(ker) != 1:
        raise HopfError(f"space of integral functionals has dimension {len(ker)}")
    lam = ker[0]
    # (id (x) lam) Delta(e_i) = lam_i g
    i0 = next(i for i, x in enumerate(lam) if x)

    def id_lam(i):
        out = [f.zero] * n
        for j in range(n):
            for k in range(n):
                c = h.comult[i][j][k]
                if c and lam[k]:
                    out[j] += c * lam[k]
        return [red(x) for x in out]

    inv0 = f.inv(lam[i0])
    g = [red(x * inv0) for x in id_lam(i0)]
    checks = {}
    checks["left integral"] = all(
        a.left_mult[i].apply(lam_int) == [red(h.counit[i] * x) for x in lam_int] for i in range(n))
    checks["modular function"] = all(
        a.right_mult[i].apply(lam_int) == [red(alpha[i] * x) for x in lam_int] for i in range(n))
    checks["modular function multiplicative"] = (
        red(sum(alpha[k] * u for k, u in enumerate(a.unit))) == f.one and all(
            red(sum(alpha[k] * c for k, c in enumerate(a.mult[i][j]))) == red(alpha[i] * alpha[j])
            for i in range(n) for j in range(n)))
    checks["grouplike formula"] = all(id_lam(i) == [red(lam[i] * x) for x in g] for i in range(n))
    gg = [red(x * y) for x in g for y in g]
    checks["grouplike"] = h.coproduct(g) == gg and h.eps(g) == f.one
    checks["grouplike invertible"] = a.left_mult_by(g).is_invertible()
    md = ModularData(lam_int, lam, alpha, g, checks)
    return md


def is_unimodular(h: HopfAlgebra, md: ModularData | None = None):
    md = md or modular_data(h)
    return list(md.modular_function) == list(h.counit)


def _apply_functional(h, chi, vec):
    f = h.field
    s = f.zero
    for a, b in zip(chi, vec):
        if a and b:
            s += a * b
    return s % f.p if f.p else s


def character_inverse(h: HopfAlgebra, chi):
    return [_apply_functional(h, chi, h.antipode.col(i)) for i in range(h.dim)]


def hit_left(h: HopfAlgebra, chi, vec):
    """chi -> x = sum x_1 chi(x_2)."""
    n = h.dim
    f = h.field
    d = _tensor_coeffs(n, h.coproduct(vec))
    out = [f.zero] * n
    for j in range(n):
        for k in range(n):
            if d[j][k] and chi[k]:
                out[j] += d[j][k] * chi[k]
    return [x % f.p for x in out] if f.p else out


def hit_right(h: HopfAlgebra, chi, vec):
    """x <- chi = sum chi(x_1) x_2."""
    n = h.dim
    f = h.field
    d = _tensor_coeffs(n, h.coproduct(vec))
    out = [f.zero] * n
    for j in range(n):
        if not chi[j]:
            continue
        for k in range(n):
            if d[j][k]:
                out[k] += d[j][k] * chi[j]
    return [x % f.p for x in out] if f.p else out


# ---------------------------------------------------------------------------
# distinguished objects


def nakayama_lex_value(h: HopfAlgebra, m: Bimodule) -> Bimodule:
    """Hom_H(H^*, m)."""
    return hom_module(coregular_bimodule(h.algebra), m).module


def nakayama_rex_value(h: HopfAlgebra, m: Bimodule) -> Bimodule:
    """H^* (x)_H m."""
    return tensor_over_algebra(coregular_bimodule(h.algebra), m).module


@dataclass
class DistinguishedObject:
    D: Bimodule
    D_inverse: Bimodule
    character: list
    orientation: str  # "alpha", "alpha_inverse" or "both" (alpha = alpha^{-1})
    inverse_witness: IsoDecision


def distinguished_object(h: HopfAlgebra, md: ModularData | None = None, seed=0,
                         trials=DEFAULT_TRIALS, budget=DEFAULT_BUDGET) -> DistinguishedObject:
    md = md or modular_data(h)
    d = nakayama_lex_value(h, trivial_module(h))
    if d.dim != 1:
        raise HopfError(f"Hom_H(H^*, 1) has dimension {d.dim}")
    chi = character(d)
    alpha = list(md.modular_function)
    alpha_inv = character_inverse(h, alpha)
    if chi == alpha and chi == alpha_inv:
        orient = "both"
    elif chi == alpha:
        orient = "alpha"
    elif chi == alpha_inv:
        orient = "alpha_inverse"
    else:
        orient = "none"
    d_inv = character_module(h, character_inverse(h, chi), "D^-1")
    dec = module_iso_exists(tensor_modules(h, d, d_inv), trivial_module(h), seed, trials, budget)
    return DistinguishedObject(d.relabel("D"), d_inv, chi, orient, dec)


def distinguished_from_alpha(h: HopfAlgebra, orientation, md: ModularData | None = None):
    """The 1-dimensional module with character alpha or alpha^{-1}."""
    md = md or modular_data(h)
    alpha = list(md.modular_function)
    chi = character_inverse(h, alpha) if orientation == "alpha_inverse" else alpha
    return character_module(h, chi, "D")


@dataclass
class CheckItem:
    name: str
    passed: bool
    status: str = ""
    detail: str = ""
    witness: object = None
    inverse: object = None


def _iso_item(name, m, n, seed, trials, budget):
    dec = module_iso_exists(m, n, seed, trials, budget)
    return CheckItem(name, dec.witnessed, dec.status, dec.reason, dec.witness, dec.inverse)


def radford_check(h: HopfAlgebra, test_modules, seed=0, trials=DEFAULT_TRIALS,
                  budget=DEFAULT_BUDGET):
    md = modular_data(h)
    a = h.algebra
    items = [CheckItem("modular data " + k, v) for k, v in md.checks.items()]
    g = md.distinguished_grouplike
    ginv = a.left_mult_by(g).inverse().apply(list(a.unit))
    alpha = list(md.modular_function)
    alpha_inv = character_inverse(h, alpha)
    s4 = h.S_power(4)
    ok = True
    for i in range(h.dim):
        x = a.basis_vector(i)
        conj = hit_right(h, alpha_inv, hit_left(h, alpha, x))
        rhs = a.product(a.product(g, conj), ginv)
        if s4.col(i) != rhs:
            ok = False
    items.append(CheckItem("S^4 = g (alpha -> x <- alpha^-1) g^-1", ok))
    dob = distinguished_object(h, md, seed, trials, budget)
    items.append(CheckItem("D = Hom(H^*, 1) is invertible", dob.inverse_witness.witnessed,
                           dob.inverse_witness.status))
    items.append(CheckItem("D matches alpha up to orientation", dob.orientation != "none",
                           detail=dob.orientation))
    for m in test_modules:
        q = iterated_dual(h, m, 4)
        twist = restrict_left(m, h.antipode_morphism(4))
        items.append(CheckItem(f"quadruple dual of {m.label} is the S^4 twist", q == twist))
        rhs = tensor_many(h, dob.D, m, dob.D_inverse)
        items.append(_iso_item(f"{m.label}^**** ~= D.{m.label}.D^-1", q, rhs, seed, trials, budget))
    return {"items": items, "modular_data": md, "distinguished": dob}


def nakayama_vs_serre_check(h: HopfAlgebra, test_modules, seed=0, trials=DEFAULT_TRIALS,
                            budget=DEFAULT_BUDGET):
    dob = distinguished_object(h, None, seed, trials, budget)
    d = dob.D
    one = trivial_module(h)
    dt = nakayama_rex_value(h, one).relabel("D~")
    items = []
    if dt.dim != 1:
        items.append(CheckItem("D~ = H^* (x)_H 1 is 1-dimensional", False))
        return {"items": items, "distinguished": dob, "D_tilde": dt}
    items.append(_iso_item("D . **D~ ~= 1", tensor_modules(h, d, iterated_dual(h, dt, 2, "left")),
                           one, seed, trials, budget))
    for m in test_modules:
        ll = iterated_dual(h, m, 2, "left")
        rr = iterated_dual(h, m, 2, "right")
        items.append(CheckItem(f"**{m.label} is the S^-2 twist",
                               ll == restrict_left(m, h.antipode_morphism(-2))))
        items.append(_iso_item(f"pi^({m.label}) ~= D.**{m.label}", nakayama_lex_value(h, m),
                               tensor_modules(h, d, ll), seed, trials, budget))
        items.append(_iso_item(f"pi~({m.label}) ~= D~.{m.label}**", nakayama_rex_value(h, m),
                               tensor_modules(h, dt, rr), seed, trials, budget))
    return {"items": items, "distinguished": dob, "D_tilde": dt}


def unimodular_frobenius_report(h: HopfAlgebra, seed=0, trials=DEFAULT_TRIALS, budget=DEFAULT_BUDGET):
    from .frobenius import classify, is_inner
    md = modular_data(h)
    uni = is_unimodular(h, md)
    st, u = is_inner(h.algebra, h.antipode_morphism(2), seed, trials, budget)
    cls = classify(h.algebra, seed, trials, budget)
    predicted = uni and st == "witnessed"
    detected = cls.symmetric
    conclusive = st != "inconclusive" and not cls.inconclusive
    return {
        "unimodular": uni,
        "s2_inner": u,
        "s2_inner_status": st,
        "symmetric_frobenius_predicted": predicted,
        "symmetric_frobenius_detected": detected,
        "agree": conclusive and predicted == detected,
        "classification": cls,
    }


# ---------------------------------------------------------------------------
# restriction along a Hopf subalgebra


def restriction_bimodules(h: HopfAlgebra, k: HopfAlgebra, emb: AlgebraMorphism):
    """(H as H-K, H as K-H) with K acting through emb."""
    reg = regular_bimodule(h.algebra)
    hk = restrict_right(reg, emb).relabel("H_K")
    kh = restrict_left(reg, emb).relabel("K_H")
    return hk, kh


def restriction_adjoint_check(h: HopfAlgebra, k: HopfAlgebra, emb: AlgebraMorphism, test_modules,
                              seed=0, trials=DEFAULT_TRIALS, budget=DEFAULT_BUDGET):
    """Coind(b) ~= D_H^{-1} . Ind(D_K . b) for K-modules b.

    Ind = H (x)_K - and Coind = Hom_K(H, -) are the left and right adjoints of
    restriction along emb.
    """
    from .frobenius import projectivity
    items = []
    viol = hopf_embedding_violations(k, h, emb)
    items.append(CheckItem("embedding is a Hopf algebra map", not viol, detail=str(viol)))
    hk, kh = restriction_bimodules(h, k, emb)
    free = projectivity(forget_right(kh)).projective
    items.append(CheckItem("H is projective over K", free))
    if viol or not free:
        return {"items": items}
    dh = distinguished_object(h, None, seed, trials, budget)
    dk = distinguished_object(k, None, seed, trials, budget)
    for b in test_modules:
        coind = hom_module(kh, b).module
        ind = tensor_over_algebra(hk, tensor_modules(k, dk.D, b)).module
        rhs = tensor_modules(h, dh.D_inverse, ind)
        items.append(_iso_item(f"Coind({b.label}) ~= D_H^-1.Ind(D_K.{b.label})", coind, rhs,
                               seed, trials, budget))
    return {"items": items, "D_H": dh, "D_K": dk}


__all__ = [
    "CheckItem", "DistinguishedObject", "HopfAlgebra", "HopfError", "ModularData",
    "antipode_is_antimultiplicative", "character", "character_inverse", "character_module",
    "cyclic_group_hopf", "distinguished_from_alpha", "distinguished_object", "duality_maps",
    "group_hopf", "hit_left", "hit_right", "hopf_embedding_violations", "is_unimodular",
    "iterated_dual", "modular_data", "nakayama_lex_value", "nakayama_rex_value",
    "nakayama_vs_serre_check", "radford_check", "restriction_adjoint_check",
    "restriction_bimodules", "rigid_dual", "solve_antipode", "sweedler", "taft_algebra",
    "tensor_many", "tensor_modules", "trivial_hopf", "trivial_module",
    "unimodular_frobenius_report", "validate_hopf", "verify_duality",
]
