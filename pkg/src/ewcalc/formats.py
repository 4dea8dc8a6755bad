"""
Text documents (JSON syntax) for algebras, modules, bimodules, Hopf algebras,
algebra morphisms, diagrams, suites and reports.

Scalars are integers or "a/b" strings; fields are "Q" or {"Fp": p}.  A
reference to another document is either an inline object, "corpus:NAME"
(bundled corpus, modules as "corpus:ALG/LABEL"), or a path relative to the
referring document.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .algebra import Algebra, AlgebraMorphism, base_field, validate_algebra
from .hopf import HopfAlgebra, validate_hopf
from .limits import FiniteDiagram
from .linalg import Field, LinalgError, Matrix, QQ, GF, scalar_to_json
from .modules import Bimodule, validate_module

KINDS = ("algebra", "module", "bimodule", "hopf", "algebra_morphism", "diagram", "suite", "report")


class DocumentError(ValueError):
    """Input error with a machine-readable location.

    ``line``/``column`` locate syntax errors, ``path`` (JSON-pointer style)
    locates semantic ones.
    """

    def __init__(self, message, kind="semantic", line=None, column=None, path="", source=""):
        self.message = message
        self.kind = kind
        self.line = line
        self.column = column
        self.path = path
        self.source = source
        loc = f"{line}:{column}" if line is not None else (path or "/")
        super().__init__(f"{source + ':' if source else ''}{loc}: {kind} error: {message}")

    def to_json(self):
        out = {"kind": self.kind, "message": self.message}
        if self.line is not None:
            out["line"] = self.line
            out["column"] = self.column
        out["path"] = self.path or "/"
        if self.source:
            out["source"] = self.source
        return out


@dataclass
class InputDocument:
    kind: str
    obj: object
    raw: dict
    source: str = ""
    sha256: str = ""


# ---------------------------------------------------------------------------
# low-level readers


class _Ctx:
    def __init__(self, base_dir=None, source=""):
        self.base_dir = Path(base_dir) if base_dir else None
        self.source = source

    def err(self, msg, path):
        return DocumentError(msg, "semantic", path=path, source=self.source)


def _need(ctx, d, key, path):
    if not isinstance(d, dict):
        raise ctx.err("expected an object", path)
    if key not in d:
        raise ctx.err(f"missing field {key!r}", path)
    return d[key]


def read_field(ctx, x, path) -> Field:
    if x == "Q":
        return QQ
    if isinstance(x, dict) and set(x) == {"Fp"} and isinstance(x["Fp"], int):
        try:
            return GF(x["Fp"])
        except LinalgError as e:
            raise ctx.err(str(e), path + "/Fp")
    raise ctx.err("field must be \"Q\" or {\"Fp\": p}", path)


def read_scalar(ctx, f: Field, x, path):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ctx.err("scalar must be an integer or an \"a/b\" string", path)
    try:
        return f(x)
    except (ValueError, ZeroDivisionError, LinalgError) as e:
        raise ctx.err(f"bad scalar {x!r}: {e}", path)


def read_vector(ctx, f, x, n, path):
    if not isinstance(x, list) or (n is not None and len(x) != n):
        raise ctx.err(f"expected a list of {n} scalars", path)
    return [read_scalar(ctx, f, v, f"{path}/{i}") for i, v in enumerate(x)]


def read_matrix(ctx, f, x, rows, cols, path) -> Matrix:
    if not isinstance(x, list) or (rows is not None and len(x) != rows):
        raise ctx.err(f"expected a matrix with {rows} rows", path)
    if rows == 0 or (rows is None and not x):
        return Matrix.zeros(f, 0, cols or 0)
    data = [read_vector(ctx, f, r, cols, f"{path}/{i}") for i, r in enumerate(x)]
    ncols = len(data[0]) if cols is None else cols
    if any(len(r) != ncols for r in data):
        raise ctx.err("ragged matrix", path)
    return Matrix.from_rows(f, data, ncols)


def read_tensor(ctx, f, x, n, path):
    if not isinstance(x, list) or len(x) != n:
        raise ctx.err(f"expected {n} x {n} x {n} nested lists", path)
    return [[read_vector(ctx, f, c, n, f"{path}/{i}/{j}") for j, c in enumerate(_rows(ctx, r, n, f"{path}/{i}"))]
            for i, r in enumerate(x)]


def _rows(ctx, r, n, path):
    if not isinstance(r, list) or len(r) != n:
        raise ctx.err(f"expected {n} entries", path)
    return r


def _dim(ctx, d, path):
    n = _need(ctx, d, "dim", path)
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ctx.err("dim must be a nonnegative integer", path + "/dim")
    return n


# ---------------------------------------------------------------------------
# references


def corpus_dir():
    return resources.files("ewcalc") / "corpus"


def _load_ref(ctx, ref, path):
    """Resolve a reference to (raw dict, sub-context)."""
    if isinstance(ref, dict):
        return ref, ctx
    if not isinstance(ref, str):
        raise ctx.err("reference must be an object or a string", path)
    if ref.startswith("corpus:"):
        name = ref[len("corpus:"):]
        parts = name.split("/")
        if len(parts) == 1:
            target = corpus_dir() / f"{name}.json"
        elif len(parts) == 2:
            target = corpus_dir() / "modules" / parts[0] / f"{parts[1]}.json"
        else:
            raise ctx.err(f"bad corpus reference {ref!r}", path)
        if not target.is_file():
            raise ctx.err(f"unknown corpus entry {ref!r}", path)
        text = target.read_text(encoding="utf-8")
        sub = _Ctx(None, ref)
    else:
        p = Path(ref)
        if not p.is_absolute() and ctx.base_dir is not None:
            p = ctx.base_dir / p
        if not p.is_file():
            raise ctx.err(f"referenced file {ref!r} not found", path)
        text = p.read_text(encoding="utf-8")
        sub = _Ctx(p.parent, str(p))
    return _loads(text, sub.source), sub


def _loads(text, source=""):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, "syntax", e.lineno, e.colno, source=source)


def _algebra_ref(ctx, ref, path) -> Algebra:
    raw, sub = _load_ref(ctx, ref, path)
    kind = raw.get("kind", "algebra") if isinstance(raw, dict) else None
    p = path if isinstance(ref, dict) else ""
    if kind == "hopf":
        return read_hopf(sub, raw, p).algebra
    if kind != "algebra":
        raise ctx.err(f"expected an algebra, got {kind!r}", path)
    return read_algebra(sub, raw, p)


# ---------------------------------------------------------------------------
# readers per kind


def read_algebra(ctx, d, path="", validate=True) -> Algebra:
    f = read_field(ctx, _need(ctx, d, "field", path), path + "/field")
    n = _dim(ctx, d, path)
    mult = read_tensor(ctx, f, _need(ctx, d, "mult", path), n, path + "/mult")
    unit = read_vector(ctx, f, _need(ctx, d, "unit", path), n, path + "/unit")
    a = Algebra(f, mult, unit, label=str(d.get("label", "")))
    if validate:
        bad = validate_algebra(a)
        if bad:
            first = bad[0]
            raise ctx.err(f"not an associative unital algebra: {first['identity']} fails at "
                          f"indices {first.get('indices')} ({len(bad)} violations)", path + "/mult")
    return a


def read_hopf(ctx, d, path="") -> HopfAlgebra:
    a = read_algebra(ctx, d, path)
    f, n = a.field, a.dim
    comult = read_tensor(ctx, f, _need(ctx, d, "comult", path), n, path + "/comult")
    counit = read_vector(ctx, f, _need(ctx, d, "counit", path), n, path + "/counit")
    s = read_matrix(ctx, f, _need(ctx, d, "antipode", path), n, n, path + "/antipode")
    if not s.is_invertible():
        raise ctx.err("antipode is not invertible", path + "/antipode")
    h = HopfAlgebra(a, comult, counit, s, label=a.label)
    bad = validate_hopf(h)
    if bad:
        first = bad[0]
        raise ctx.err(f"not a Hopf algebra: {first['identity']} fails"
                      + (f" at indices {first['indices']}" if "indices" in first else "")
                      + f" ({len(bad)} violations)", path)
    return h


def _actions(ctx, d, key, alg, dim, path):
    acts = _need(ctx, d, key, path)
    if not isinstance(acts, list) or len(acts) != alg.dim:
        raise ctx.err(f"{key} must list {alg.dim} matrices", path + "/" + key)
    return [read_matrix(ctx, alg.field, m, dim, dim, f"{path}/{key}/{i}") for i, m in enumerate(acts)]


def read_module(ctx, d, path="", default_algebra=None) -> Bimodule:
    kind = d.get("kind", "module") if isinstance(d, dict) else None
    n = _dim(ctx, d, path)
    if kind == "bimodule":
        left = _algebra_ref(ctx, _need(ctx, d, "left", path), path + "/left")
        right = _algebra_ref(ctx, _need(ctx, d, "right", path), path + "/right")
        if left.field != right.field:
            raise ctx.err("left and right algebras have different fields", path)
        la = _actions(ctx, d, "left_action", left, n, path)
        ra = _actions(ctx, d, "right_action", right, n, path)
    elif kind == "module":
        if "algebra" in d:
            alg = _algebra_ref(ctx, d["algebra"], path + "/algebra")
        elif default_algebra is not None:
            alg = default_algebra
        else:
            raise ctx.err("missing field 'algebra'", path)
        k = base_field(alg.field)
        has_l, has_r = "left_action" in d, "right_action" in d
        if has_l == has_r:
            raise ctx.err("a module needs exactly one of left_action / right_action", path)
        if has_l:
            left, right = alg, k
            la = _actions(ctx, d, "left_action", alg, n, path)
            ra = [Matrix.identity(alg.field, n)]
        else:
            left, right = k, alg
            la = [Matrix.identity(alg.field, n)]
            ra = _actions(ctx, d, "right_action", alg, n, path)
    else:
        raise ctx.err(f"expected a module or bimodule, got {kind!r}", path)
    m = Bimodule(left, right, n, la, ra, str(d.get("label", "")))
    bad = validate_module(m)
    if bad:
        first = bad[0]
        raise ctx.err(f"action violates {first.get('identity')}"
                      + (f" at indices {first['indices']}" if "indices" in first else "")
                      + f" ({len(bad)} violations)", path)
    return m


def _module_ref(ctx, ref, path, default_algebra=None):
    raw, sub = _load_ref(ctx, ref, path)
    return read_module(sub, raw, path if isinstance(ref, dict) else "", default_algebra)


def read_algebra_morphism(ctx, d, path="") -> AlgebraMorphism:
    src = _algebra_ref(ctx, _need(ctx, d, "source", path), path + "/source")
    tgt = _algebra_ref(ctx, _need(ctx, d, "target", path), path + "/target")
    mat = read_matrix(ctx, src.field, _need(ctx, d, "matrix", path), tgt.dim, src.dim, path + "/matrix")
    phi = AlgebraMorphism(src, tgt, mat)
    bad = phi.violations()
    if bad:
        raise ctx.err(f"not an algebra map: {bad[0]}", path + "/matrix")
    return phi


def read_diagram(ctx, d, path="") -> FiniteDiagram:
    alg = _algebra_ref(ctx, _need(ctx, d, "algebra", path), path + "/algebra")
    objs = _need(ctx, d, "objects", path)
    if not isinstance(objs, list):
        raise ctx.err("objects must be a list", path + "/objects")
    mods = []
    for i, o in enumerate(objs):
        if o == "regular":
            from .modules import regular_left
            mods.append(regular_left(alg))
            continue
        if o == "coregular":
            from .modules import coregular_left
            mods.append(coregular_left(alg))
            continue
        m = _module_ref(ctx, o, f"{path}/objects/{i}", alg)
        if m.left != alg or not m.is_left_module:
            raise ctx.err("diagram object is not a left module over the diagram algebra",
                          f"{path}/objects/{i}")
        mods.append(m)
    return FiniteDiagram(alg, mods, str(d.get("label", "")))


def read_suite(ctx, d, path=""):
    name = _need(ctx, d, "name", path)
    runs = d.get("runs", [])
    if not isinstance(runs, list):
        raise ctx.err("runs must be a list", path + "/runs")
    for i, r in enumerate(runs):
        _need(ctx, r, "command", f"{path}/runs/{i}")
    return {"name": name, "runs": runs}


def parse(text: str, base_dir=None, source="") -> InputDocument:
    """Parse and validate a document."""
    ctx = _Ctx(base_dir, source)
    d = _loads(text, source)
    if not isinstance(d, dict):
        raise ctx.err("top level must be an object", "")
    kind = d.get("kind")
    if kind not in KINDS:
        raise ctx.err(f"unknown or missing kind {kind!r}", "/kind")
    readers = {
        "algebra": read_algebra,
        "hopf": read_hopf,
        "module": read_module,
        "bimodule": read_module,
        "algebra_morphism": read_algebra_morphism,
        "diagram": read_diagram,
        "suite": read_suite,
        "report": lambda c, x, p="": x,
    }
    obj = readers[kind](ctx, d, "")
    return InputDocument(kind, obj, d, source, sha256_text(text))


def load(path) -> InputDocument:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(str(e), "io", source=str(p))
    except UnicodeDecodeError as e:
        raise DocumentError(f"not UTF-8: {e}", "syntax", source=str(p))
    return parse(text, p.parent, str(p))


def resolve(spec: str) -> InputDocument:
    """A CLI argument: "corpus:NAME" or a file path."""
    if spec.startswith("corpus:"):
        raw, sub = _load_ref(_Ctx(), spec, "")
        text = dumps(raw)
        return parse(text, None, spec)
    return load(spec)


def sha256_text(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# writers


def matrix_json(m: Matrix):
    return m.to_json()


def vector_json(v):
    return [scalar_to_json(x) for x in v]


def algebra_json(a: Algebra, kind="algebra"):
    return {
        "kind": kind,
        "label": a.label,
        "field": a.field.to_json(),
        "dim": a.dim,
        "mult": [[vector_json(c) for c in r] for r in a.mult],
        "unit": vector_json(a.unit),
    }


def hopf_json(h: HopfAlgebra):
    d = algebra_json(h.algebra, "hopf")
    d["label"] = h.label
    d["comult"] = [[vector_json(c) for c in r] for r in h.comult]
    d["counit"] = vector_json(h.counit)
    d["antipode"] = matrix_json(h.antipode)
    return d


def _alg_ref(a, refs):
    """The reference string for ``a`` if known, else the inline document."""
    if refs:
        for name, b in refs.items():
            if b == a:
                return name
    return algebra_json(a)


def module_json(m: Bimodule, refs=None):
    if m.right.is_base_field:
        return {"kind": "module", "label": m.label, "algebra": _alg_ref(m.left, refs), "dim": m.dim,
                "left_action": [matrix_json(x) for x in m.left_action]}
    if m.left.is_base_field:
        return {"kind": "module", "label": m.label, "algebra": _alg_ref(m.right, refs), "dim": m.dim,
                "right_action": [matrix_json(x) for x in m.right_action]}
    return {"kind": "bimodule", "label": m.label, "left": _alg_ref(m.left, refs),
            "right": _alg_ref(m.right, refs), "dim": m.dim,
            "left_action": [matrix_json(x) for x in m.left_action],
            "right_action": [matrix_json(x) for x in m.right_action]}


def algebra_morphism_json(phi: AlgebraMorphism, refs=None):
    return {"kind": "algebra_morphism", "source": _alg_ref(phi.source, refs),
            "target": _alg_ref(phi.target, refs), "matrix": matrix_json(phi.matrix)}


def diagram_json(d: FiniteDiagram, refs=None):
    return {"kind": "diagram", "label": d.label, "algebra": _alg_ref(d.algebra, refs),
            "objects": [module_json(m, refs) for m in d.objects]}


def to_json(obj, refs=None):
    if isinstance(obj, HopfAlgebra):
        return hopf_json(obj)
    if isinstance(obj, Algebra):
        return algebra_json(obj)
    if isinstance(obj, Bimodule):
        return module_json(obj, refs)
    if isinstance(obj, AlgebraMorphism):
        return algebra_morphism_json(obj, refs)
    if isinstance(obj, FiniteDiagram):
        return diagram_json(obj, refs)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _fmt(x, depth):
    pad = " " * depth
    inner = " " * (depth + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_fmt(v, depth + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(x, (list, tuple)):
        if all(not isinstance(v, (list, tuple, dict)) for v in x):
            return json.dumps(list(x), ensure_ascii=False, separators=(", ", ": "))
        return "[\n" + ",\n".join(inner + _fmt(v, depth + 1) for v in x) + "\n" + pad + "]"
    return json.dumps(x, ensure_ascii=False)


def dumps(d) -> str:
    """Canonical layout: objects and nested lists indented, scalar rows inline."""
    return _fmt(d, 0) + "\n"


def serialize(obj, refs=None) -> str:
    """Canonical text; parse(serialize(x)).obj == x."""
    if isinstance(obj, InputDocument):
        return dumps(obj.raw) if obj.kind in ("suite", "report") else serialize(obj.obj, refs)
    return dumps(to_json(obj, refs))


__all__ = [
    "DocumentError", "InputDocument", "KINDS", "algebra_json", "corpus_dir", "dumps", "hopf_json",
    "load", "matrix_json", "module_json", "parse", "read_matrix", "resolve", "serialize",
    "sha256_text", "to_json", "vector_json",
]
