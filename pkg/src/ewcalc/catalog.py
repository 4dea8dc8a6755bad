"""
Named algebras, Hopf algebras, test modules, embeddings and functors used by the
CLI suites and the test-suite.  Everything here is built from the constructors;
the JSON files under ``corpus/`` are serializations of these objects.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import (
    Algebra, algebra_morphism, matrix_algebra,
    truncated_polynomial, upper_triangular,
)
from .hopf import character_module, cyclic_group_hopf, sweedler, taft_algebra, trivial_hopf
from .linalg import GF, Matrix, QQ
from .modules import (
    Bimodule, coregular_bimodule, coregular_left, external_tensor, left_ideal, left_module,
    regular_bimodule, regular_left, regular_right, restrict_right, right_module,
)

ALGEBRAS = ("k", "M2", "M3", "UT2", "UT3", "D2", "P3", "kC2", "kC3", "H4", "T3")
HOPF = ("k", "kC2", "kC3", "H4", "T3")
# expected Frobenius classification: (self-injective, Frobenius, symmetric)
EXPECTED_CLASS = {
    "k": (True, True, True),
    "M2": (True, True, True),
    "M3": (True, True, True),
    "UT2": (False, False, False),
    "UT3": (False, False, False),
    "D2": (True, True, True),
    "P3": (True, True, True),
    "kC2": (True, True, True),
    "kC3": (True, True, True),
    "H4": (True, True, False),
    "T3": (True, True, False),
}


@lru_cache(maxsize=None)
def hopf(name):
    if name == "k":
        return trivial_hopf(QQ)
    if name == "kC2":
        return cyclic_group_hopf(2)
    if name == "kC3":
        return cyclic_group_hopf(3)
    if name == "H4":
        return sweedler(QQ)
    if name == "T3":
        return taft_algebra(3, 2, GF(7))
    if name == "kC3_F7":
        return cyclic_group_hopf(3, GF(7))
    raise KeyError(name)


@lru_cache(maxsize=None)
def algebra(name) -> Algebra:
    if name in HOPF:
        return hopf(name).algebra
    table = {
        "M2": lambda: matrix_algebra(2),
        "M3": lambda: matrix_algebra(3),
        "UT2": lambda: upper_triangular(2),
        "UT3": lambda: upper_triangular(3),
        "D2": lambda: truncated_polynomial(2),
        "P3": lambda: truncated_polynomial(3),
    }
    if name not in table:
        raise KeyError(name)
    a = table[name]()
    a.label = name
    return a


def _matrix_unit_module(a, n):
    """Column vectors k^n, E_ij acting as the matrix unit."""
    f = a.field
    acts = []
    for k in range(n * n):
        i, j = divmod(k, n)
        acts.append(Matrix.from_rows(f, [[1 if (r == i and c == j) else 0 for c in range(n)]
                                         for r in range(n)], n))
    return left_module(a, acts, f"k^{n}")


def _ut_simple(a, n, t):
    units = [(i, j) for i in range(n) for j in range(i, n)]
    f = a.field
    return left_module(a, [Matrix.from_rows(f, [[1 if (i == j == t) else 0]], 1) for (i, j) in units],
                       f"S{t}")


def _ut_projective(a, n, t):
    units = [(i, j) for i in range(n) for j in range(i, n)]
    e = [1 if (i == j == t) else 0 for (i, j) in units]
    return left_ideal(a, [a.field(x) for x in e], f"P{t}")


@lru_cache(maxsize=None)
def simples(name):
    a = algebra(name)
    f = a.field
    if name == "k":
        return (regular_left(a).relabel("k"),)
    if name in ("M2", "M3"):
        return (_matrix_unit_module(a, int(name[1])),)
    if name in ("UT2", "UT3"):
        n = int(name[2])
        return tuple(_ut_simple(a, n, t) for t in range(n))
    if name in ("D2", "P3"):
        return (left_module(a, [Matrix.from_rows(f, [[1 if i == 0 else 0]], 1) for i in range(a.dim)],
                            "S"),)
    if name == "kC2":
        return (character_module(hopf(name), [1, 1], "triv"),
                character_module(hopf(name), [1, -1], "sgn"))
    if name == "kC3":
        r = Matrix.from_rows(f, [[0, -1], [1, -1]], 2)
        return (character_module(hopf(name), [1, 1, 1], "triv"),
                left_module(a, [Matrix.identity(f, 2), r, r @ r], "V2"))
    if name == "H4":
        return (character_module(hopf(name), [1, 0, 1, 0], "triv"),
                character_module(hopf(name), [1, 0, -1, 0], "sgn"))
    if name == "T3":
        out = []
        for t in range(3):
            w = pow(2, t, 7)
            chi = [pow(w, i, 7) if j == 0 else 0 for i in range(3) for j in range(3)]
            out.append(character_module(hopf(name), chi, f"chi{t}"))
        return tuple(out)
    raise KeyError(name)


@lru_cache(maxsize=None)
def projectives(name):
    """Indecomposable projectives, when not already among the regular/simple modules."""
    a = algebra(name)
    f = a.field
    if name in ("UT2", "UT3"):
        n = int(name[2])
        return tuple(_ut_projective(a, n, t) for t in range(n))
    if name == "H4":
        return (left_ideal(a, [f(1) / 2, 0, f(1) / 2, 0], "P+"),
                left_ideal(a, [f(1) / 2, 0, -f(1) / 2, 0], "P-"))
    if name == "T3":
        inv3 = pow(3, -1, 7)
        out = []
        for t in range(3):
            w = pow(2, t, 7)
            # idempotent (1/3) sum_i w^{-i} g^i
            e = [0] * 9
            for i in range(3):
                e[3 * i] = inv3 * pow(w, -i, 7) % 7
            out.append(left_ideal(a, e, f"P{t}"))
        return tuple(out)
    return ()


@lru_cache(maxsize=None)
def test_modules(name):
    """Simples, indecomposable projectives, regular and co-regular modules."""
    a = algebra(name)
    out = list(simples(name)) + list(projectives(name))
    out += [regular_left(a).relabel("A"), coregular_left(a).relabel("A*")]
    seen = []
    for m in out:
        if all(m != x for x in seen):
            seen.append(m)
    return tuple(seen)


# ---------------------------------------------------------------------------
# embeddings and functors


@lru_cache(maxsize=None)
def embedding(name):
    """Algebra maps K -> H by name "H>K"."""
    if name == "H4>kC2":
        h = algebra("H4")
        return algebra_morphism(algebra("kC2"), h, [h.basis_vector(0), h.basis_vector(2)])
    if name == "kC2>k":
        k = algebra("kC2")
        return algebra_morphism(algebra("k"), k, [list(k.unit)])
    if name == "T3>kC3":
        h = algebra("T3")
        return algebra_morphism(hopf("kC3_F7").algebra, h,
                                [h.basis_vector(0), h.basis_vector(3), h.basis_vector(6)])
    if name == "M2>D2":
        m = algebra("M2")
        return algebra_morphism(algebra("D2"), m, [list(m.unit), m.basis_vector(1)])
    if name == "UT2>kC2":
        u = algebra("UT2")
        return algebra_morphism(algebra("kC2"), u, [list(u.unit), [1, 0, -1]])
    if name == "D2>k":
        d = algebra("D2")
        return algebra_morphism(algebra("k"), d, [list(d.unit)])
    if name == "kC3>k":
        k = algebra("kC3")
        return algebra_morphism(algebra("k"), k, [list(k.unit)])
    raise KeyError(name)


HOPF_PAIRS = {
    "H4>kC2": ("H4", "kC2"),
    "kC2>k": ("kC2", "k"),
    "T3>kC3": ("T3", "kC3_F7"),
}


def hopf_pair(name):
    hname, kname = HOPF_PAIRS[name]
    return hopf(hname), hopf(kname), embedding(name)


def restriction_bimodule(name) -> Bimodule:
    """H as an H-K-bimodule for the embedding K -> H: Lex of it is restriction."""
    emb = embedding(name)
    return restrict_right(regular_bimodule(emb.target), emb).relabel(f"res[{name}]")


# restrictions F with F^la and F^lla left exact; UT2>kC2 is not (UT2^* is not projective)
EXACT_FUNCTORS = ("H4>kC2", "kC2>k", "M2>D2", "D2>k", "kC3>k")
RESTRICTIONS = EXACT_FUNCTORS + ("UT2>kC2",)


def lex_functors():
    """(name, LexRep) for the restriction functors and a few identities."""
    from .functors import LexRep, identity_lex
    out = [(name, LexRep(restriction_bimodule(name), f"res[{name}]")) for name in RESTRICTIONS]
    out.append(("id[UT2]", identity_lex(algebra("UT2"))))
    return out


@lru_cache(maxsize=None)
def bimodules():
    """A list of corpus bimodules across several algebra pairs."""
    ut2, d2, kc2, m2 = (algebra(n) for n in ("UT2", "D2", "kC2", "M2"))
    out = [
        regular_bimodule(ut2).relabel("UT2"),
        coregular_bimodule(ut2).relabel("UT2*"),
        regular_bimodule(d2).relabel("D2"),
        coregular_bimodule(m2).relabel("M2*"),
        external_tensor(regular_left(ut2), regular_right(d2)).relabel("UT2|D2"),
        external_tensor(_ut_projective(ut2, 2, 0), regular_right(kc2)).relabel("P0|kC2"),
        external_tensor(simples("M2")[0], regular_right(ut2)).relabel("k2|UT2"),
        external_tensor(coregular_left(d2), right_module(
            ut2, [Matrix.from_rows(QQ, [[x]], 1) for x in (0, 0, 1)], "S1r")).relabel("D2*|S1r"),
        restriction_bimodule("M2>D2"),
        restriction_bimodule("UT2>kC2"),
        restriction_bimodule("H4>kC2"),
    ]
    return tuple(out)


__all__ = [
    "ALGEBRAS", "EXACT_FUNCTORS", "RESTRICTIONS", "EXPECTED_CLASS", "HOPF", "HOPF_PAIRS", "algebra", "bimodules",
    "embedding", "hopf", "hopf_pair", "lex_functors", "projectives", "restriction_bimodule",
    "simples", "test_modules",
]
