"""
ewcalc command line: parse documents, run verification suites, emit reports.

Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 input error.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import catalog
from .formats import (
    DocumentError, dumps, matrix_json, module_json, read_matrix, resolve,
)
from .modules import (
    DEFAULT_BUDGET, DEFAULT_TRIALS, IsoDecision, ModuleMorphism, coregular_bimodule,
    coregular_left, hom_space, regular_left,
)

EXIT = {"pass": 0, "fail": 1, "inconclusive": 2}
INPUT_ERROR = 3


class Item:
    __slots__ = ("name", "status", "detail", "certificate")

    def __init__(self, name, status, detail="", certificate=None):
        self.name = name
        self.status = status
        self.detail = detail
        self.certificate = certificate

    @classmethod
    def check(cls, name, ok, detail=""):
        return cls(name, "pass" if ok else "fail", detail)

    def to_json(self, quiet=False):
        out = {"name": self.name, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.certificate is not None and not quiet:
            out["certificate"] = self.certificate
        return out


def iso_certificate(w: ModuleMorphism, inv: ModuleMorphism | None):
    cert = {"claim": "module_iso", "source": module_json(w.source), "target": module_json(w.target),
            "witness": matrix_json(w.matrix)}
    if inv is not None:
        cert["inverse"] = matrix_json(inv.matrix)
    return cert


def iso_item(name, dec: IsoDecision, expect="witnessed"):
    """An item from an isomorphism decision; ``expect`` is the outcome that passes."""
    if dec.inconclusive:
        return Item(name, "inconclusive", dec.reason)
    ok = dec.status == expect
    cert = iso_certificate(dec.witness, dec.inverse) if dec.witnessed else None
    detail = dec.method if dec.witnessed else (dec.reason or dec.method)
    return Item(name, "pass" if ok else "fail", detail, cert)


def verdict(items):
    st = [i.status for i in items]
    if "fail" in st:
        return "fail"
    if "inconclusive" in st:
        return "inconclusive"
    return "pass"


# ---------------------------------------------------------------------------
# commands


def _corpus_name(doc):
    src = doc.source or ""
    if src.startswith("corpus:") and "/" not in src:
        return src[len("corpus:"):]
    return None


def _expect(doc, kinds):
    if doc.kind not in kinds:
        raise DocumentError(f"expected a {' or '.join(kinds)} document, got {doc.kind}",
                            source=doc.source)
    return doc.obj


def _algebra_of(doc):
    obj = _expect(doc, ("algebra", "hopf"))
    return obj.algebra if doc.kind == "hopf" else obj


def _modules(docs, alg, default):
    mods = [_expect(d, ("module",)) for d in docs]
    for d, m in zip(docs, mods):
        if m.left != alg:
            raise DocumentError("test module is over a different algebra", source=d.source)
    return mods or list(default)


def cmd_check(docs, args):
    items = []
    for d in docs:
        if d.kind == "report":
            items.extend(recheck_report(d.raw, d.source))
        else:
            items.append(Item(f"{d.source or 'document'} is a valid {d.kind}", "pass"))
    return items, {}


def recheck_report(raw, source=""):
    items = []
    for k, it in enumerate(raw.get("items", [])):
        cert = it.get("certificate")
        if cert is None:
            continue
        name = f"certificate {k} ({it.get('name', '')})"
        try:
            ok = verify_certificate(cert)
        except DocumentError as e:
            items.append(Item(name, "fail", str(e)))
            continue
        items.append(Item.check(name, ok))
    if not items:
        items.append(Item(f"{source or 'report'} carries no certificates", "pass"))
    return items


def verify_certificate(cert):
    from .formats import _Ctx, read_module
    if cert.get("claim") != "module_iso":
        raise DocumentError(f"unknown certificate claim {cert.get('claim')!r}")
    ctx = _Ctx()
    src = read_module(ctx, cert["source"], "/source")
    tgt = read_module(ctx, cert["target"], "/target")
    w = read_matrix(ctx, src.field, cert["witness"], tgt.dim, src.dim, "/witness")
    fw = ModuleMorphism(src, tgt, w)
    if not fw.is_module_map():
        return False
    if "inverse" in cert:
        v = read_matrix(ctx, src.field, cert["inverse"], src.dim, tgt.dim, "/inverse")
        fv = ModuleMorphism(tgt, src, v)
        return fv.is_module_map() and (w @ v).is_identity() and (v @ w).is_identity()
    return fw.is_invertible()


def cmd_classify(docs, args):
    from .frobenius import classify, nakayama_identity_holds, verify_nakayama_twist
    a = _algebra_of(docs[0])
    cls = classify(a, args.seed, DEFAULT_TRIALS, args.budget)
    items = []
    if cls.frobenius_status == "inconclusive" or cls.symmetric_status == "inconclusive":
        items.append(Item("classification is conclusive", "inconclusive", "; ".join(cls.notes)))
    else:
        items.append(Item("classification is conclusive", "pass"))
    if cls.frobenius:
        f = cls.frobenius_form
        items.append(Item("Frobenius form A -> A* is an invertible module map",
                          "pass" if f.is_module_map() and f.is_invertible() else "fail",
                          certificate=iso_certificate(f, f.inverse())))
        nu = cls.nakayama_automorphism
        items.append(Item.check("kappa(e_i, nu(e_j)) = kappa(e_j, e_i) for all basis pairs",
                                nakayama_identity_holds(a, f, nu)))
        tw = verify_nakayama_twist(a, nu, f, cls.symmetric, args.seed, DEFAULT_TRIALS, args.budget)
        items.append(Item("form is a bimodule iso A_nu -> A*", "pass" if tw.witness_ok else "fail",
                          certificate=iso_certificate(tw.witness, tw.witness.inverse())
                          if tw.witness_ok else None))
        if tw.inner_status == "inconclusive":
            items.append(Item("nu inner iff symmetric", "inconclusive"))
        else:
            items.append(Item.check("nu inner iff symmetric", tw.consistent))
    if cls.symmetric:
        s = cls.symmetric_witness
        items.append(Item("symmetric witness A -> A* is a bimodule iso",
                          "pass" if s.is_module_map() and s.is_invertible() else "fail",
                          certificate=iso_certificate(s, s.inverse())))
    result = {
        "algebra": a.label,
        "self_injective": cls.self_injective,
        "frobenius": cls.frobenius_status,
        "symmetric": cls.symmetric_status,
    }
    if cls.nakayama_automorphism is not None:
        result["nakayama_automorphism"] = matrix_json(cls.nakayama_automorphism.matrix)
        result["nakayama_is_identity"] = cls.nakayama_automorphism.is_identity()
    return items, result


def cmd_nakayama(docs, args):
    from .functors import adjunction_bijection, eval_lex, eval_rex, nakayama_reps
    a = _algebra_of(docs[0])
    name = _corpus_name(docs[0])
    default = catalog.test_modules(name) if name in catalog.ALGEBRAS else (
        regular_left(a).relabel("A"), coregular_left(a).relabel("A*"))
    mods = _modules(docs[1:], a, default)
    rex, lex = nakayama_reps(a)
    items = []
    values = []
    for x in mods:
        px, qx = eval_rex(rex, x), eval_lex(lex, x)
        values.append({"module": x.label, "pi_tilde_dim": px.dim, "pi_hat_dim": qx.dim})
    for x in mods:
        for y in mods:
            d1 = hom_space(eval_rex(rex, x), y).dim
            d2 = hom_space(x, eval_lex(lex, y)).dim
            bij = adjunction_bijection(rex, x, y)
            items.append(Item.check(f"Hom(pi~ {x.label}, {y.label}) ~= Hom({x.label}, pi^ {y.label})",
                                    d1 == d2 and bij.matrix.is_invertible(), f"dim {d1} / {d2}"))
    result = {"nakayama_bimodule": module_json(coregular_bimodule(a)), "values": values}
    if args.quiet:
        result.pop("nakayama_bimodule")
    return items, result


def cmd_ew(docs, args):
    from .functors import (
        LexRep, RexRep, composition_witness, compose, deligne_object, ew_translate, eval_lex,
        identity_lex, identity_rex, nakayama_reps, psi_l,
    )
    items = []
    algs = []
    for d in docs:
        m = _expect(d, ("module", "bimodule"))
        lab = m.label or d.source
        f, g = LexRep(m), RexRep(m)
        items.append(Item.check(f"translate twice is the identity on Lex{{{lab}}}",
                                ew_translate(ew_translate(f)) == f))
        items.append(Item.check(f"translate twice is the identity on Rex{{{lab}}}",
                                ew_translate(ew_translate(g)) == g))
        a, b = m.left, m.right
        x, c = regular_left(a), regular_left(b)
        lhs = hom_space(deligne_object(x, c), psi_l(f)).dim
        rhs = hom_space(c, eval_lex(f, x)).dim
        items.append(Item.check(f"dim Hom(A-bar [x] B, Psi Lex{{{lab}}}) = dim Hom_B(B, F(A))",
                                lhs == rhs, f"{lhs} / {rhs}"))
        for outer, inner, what in ((identity_lex(b), f, "Lex"), (identity_rex(a), g, "Rex")):
            comp = compose(outer, inner)
            src = x if what == "Lex" else c
            w = composition_witness(outer, inner, src)
            items.append(Item.check(f"composition witness for id o {what}{{{lab}}} is invertible",
                                    w.is_module_map() and w.matrix.is_invertible()
                                    and comp.source == inner.source))
        for alg in (a, b):
            if all(alg != z for z in algs):
                algs.append(alg)
    for alg in algs:
        items.append(Item.check(f"translate(identity lex) is the Nakayama rex functor on {alg.label}",
                                ew_translate(identity_lex(alg)).bimodule == nakayama_reps(alg)[0].bimodule))
    return items, {}


def cmd_peterweyl(docs, args):
    from .functors import LexRep, RexRep
    from .limits import standard_diagram, verify_peter_weyl
    d0 = docs[0]
    if d0.kind == "diagram":
        diag = d0.obj
    else:
        a = _algebra_of(d0)
        name = _corpus_name(d0)
        extra = catalog.test_modules(name) if name in catalog.ALGEBRAS else ()
        diag = standard_diagram(a, extra)
    a = diag.algebra
    g = None
    if len(docs) > 1:
        n = _expect(docs[1], ("module", "bimodule"))
        g = LexRep(n) if args.kind == "lex" else RexRep(n)
        if g.source != a:
            raise DocumentError("functor source differs from the diagram algebra", source=docs[1].source)
    rep = verify_peter_weyl(a, g, diag)
    items = [Item.check(k, v) for k, v in rep.checks.items()]
    if rep.end_iso is not None:
        items.append(iso_item("end ~= G(A) through the comparison map", rep.end_iso))
    if rep.coend_iso is not None:
        items.append(iso_item("coend ~= G(A*) through the comparison map", rep.coend_iso))
    result = {"objects": [m.label for m in diag.objects],
              "end_dim": rep.end.carrier.dim if rep.end else None,
              "coend_dim": rep.coend.carrier.dim if rep.coend else None}
    return items, result


def _hopf(doc):
    return _expect(doc, ("hopf",))


def _hopf_modules(docs, h):
    from .hopf import trivial_module
    name = _corpus_name(docs[0])
    if name in catalog.HOPF:
        default = list(catalog.simples(name)) + [regular_left(h.algebra).relabel("A")]
    else:
        default = [trivial_module(h), regular_left(h.algebra).relabel("A")]
    return _modules(docs[1:], h.algebra, default)


def _hopf_items(checks):
    out = []
    for c in checks:
        if c.status in ("inconclusive",):
            out.append(Item(c.name, "inconclusive", c.detail))
        elif c.witness is not None:
            out.append(Item(c.name, "pass" if c.passed else "fail", c.detail,
                            iso_certificate(c.witness, c.inverse)))
        else:
            out.append(Item(c.name, "pass" if c.passed else "fail", c.detail))
    return out


def cmd_radford(docs, args):
    from .hopf import radford_check
    h = _hopf(docs[0])
    r = radford_check(h, _hopf_modules(docs, h), args.seed, DEFAULT_TRIALS, args.budget)
    md, dob = r["modular_data"], r["distinguished"]
    from .linalg import scalar_to_json
    result = {"modular_function": [scalar_to_json(x) for x in md.modular_function],
              "distinguished_grouplike": [scalar_to_json(x) for x in md.distinguished_grouplike],
              "D_character": [scalar_to_json(x) for x in dob.character],
              "D_orientation": dob.orientation}
    return _hopf_items(r["items"]), result


def cmd_serre(docs, args):
    from .hopf import nakayama_vs_serre_check
    h = _hopf(docs[0])
    r = nakayama_vs_serre_check(h, _hopf_modules(docs, h), args.seed, DEFAULT_TRIALS, args.budget)
    return _hopf_items(r["items"]), {"D_orientation": r["distinguished"].orientation}


def cmd_unimodular(docs, args):
    from .hopf import unimodular_frobenius_report
    h = _hopf(docs[0])
    r = unimodular_frobenius_report(h, args.seed, DEFAULT_TRIALS, args.budget)
    items = []
    if r["s2_inner_status"] == "inconclusive" or r["classification"].inconclusive:
        items.append(Item("predicted = detected", "inconclusive"))
    else:
        items.append(Item.check("predicted = detected", r["agree"]))
    from .linalg import scalar_to_json
    result = {"unimodular": r["unimodular"], "s2_inner": r["s2_inner_status"],
              "symmetric_frobenius_predicted": r["symmetric_frobenius_predicted"],
              "symmetric_frobenius_detected": r["symmetric_frobenius_detected"]}
    if r["s2_inner"] is not None:
        result["s2_inner_unit"] = [scalar_to_json(x) for x in r["s2_inner"]]
    return items, result


def cmd_restriction(docs, args):
    from .hopf import restriction_adjoint_check, trivial_module
    if len(docs) < 3:
        raise DocumentError("restriction needs HOPF_H HOPF_K EMBEDDING [K-MODULE...]")
    h, k = _hopf(docs[0]), _hopf(docs[1])
    emb = _expect(docs[2], ("algebra_morphism",))
    if emb.source != k.algebra or emb.target != h.algebra:
        raise DocumentError("embedding does not go from K to H", source=docs[2].source)
    name = _corpus_name(docs[1])
    if name in catalog.HOPF:
        default = list(catalog.simples(name)) + [regular_left(k.algebra).relabel("K")]
    else:
        default = [trivial_module(k), regular_left(k.algebra).relabel("K")]
    mods = [_expect(d, ("module",)) for d in docs[3:]] or default
    r = restriction_adjoint_check(h, k, emb, mods, args.seed, DEFAULT_TRIALS, args.budget)
    return _hopf_items(r["items"]), {}


COMMANDS = {
    "check": (cmd_check, 1),
    "classify": (cmd_classify, 1),
    "nakayama": (cmd_nakayama, 1),
    "ew": (cmd_ew, 1),
    "peterweyl": (cmd_peterweyl, 1),
    "radford": (cmd_radford, 1),
    "serre": (cmd_serre, 1),
    "unimodular": (cmd_unimodular, 1),
    "restriction": (cmd_restriction, 3),
}


def run(command, specs, args):
    """Returns (report dict, exit code); raises DocumentError on input errors."""
    t0 = time.perf_counter()
    if command == "suite":
        return run_suite(specs, args, t0)
    func, nmin = COMMANDS[command]
    if len(specs) < nmin:
        raise DocumentError(f"{command} needs at least {nmin} input(s)")
    docs = [resolve(s) for s in specs]
    items, result = func(docs, args)
    v = verdict(items)
    report = {
        "kind": "report",
        "command": command,
        "inputs": [{"ref": s, "sha256": d.sha256} for s, d in zip(specs, docs)],
        "seed": args.seed,
        "budget": args.budget,
        "verdict": v,
        "items": [i.to_json(args.quiet) for i in items],
        "result": result,
        "timing": {"seconds": round(time.perf_counter() - t0, 3)},
    }
    return report, EXIT[v]


def run_suite(specs, args, t0):
    if len(specs) != 1:
        raise DocumentError("suite takes one name or suite document")
    spec = specs[0]
    ref = spec if (spec.startswith("corpus:") or spec.endswith(".json")) else f"corpus:suite_{spec}"
    doc = resolve(ref)
    if doc.kind != "suite":
        raise DocumentError(f"{spec} is not a suite document")
    import os
    base = os.path.dirname(doc.source) if not ref.startswith("corpus:") else ""
    items = []
    for run_ in doc.obj["runs"]:
        cmd = run_["command"]
        if cmd not in COMMANDS:
            raise DocumentError(f"unknown command {cmd!r} in suite")
        inputs = [s if s.startswith("corpus:") or os.path.isabs(s) or not base
                  else os.path.join(base, s) for s in run_.get("inputs", [])]
        rep, _ = run(cmd, inputs, args)
        items.append(Item(f"{cmd} {' '.join(run_.get('inputs', []))}", rep["verdict"],
                          f"{sum(i['status'] == 'pass' for i in rep['items'])}/{len(rep['items'])} checks"))
    v = verdict(items)
    report = {"kind": "report", "command": "suite",
              "inputs": [{"ref": ref, "sha256": doc.sha256}], "seed": args.seed,
              "budget": args.budget, "verdict": v, "items": [i.to_json(True) for i in items],
              "result": {"name": doc.obj["name"]},
              "timing": {"seconds": round(time.perf_counter() - t0, 3)}}
    return report, EXIT[v]


def format_text(report):
    lines = [f"{report['command']}: {report['verdict'].upper()}"]
    for it in report["items"]:
        tag = {"pass": "PASS", "fail": "FAIL", "inconclusive": "????"}[it["status"]]
        extra = f"  ({it['detail']})" if it.get("detail") else ""
        lines.append(f"  [{tag}] {it['name']}{extra}")
    for k, v in report.get("result", {}).items():
        if isinstance(v, (dict, list)) and len(str(v)) > 200:
            continue
        lines.append(f"  {k}: {v}")
    return "\n".join(lines) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="ewcalc", description="Exact verifier for Nakayama functors, "
                                "Eilenberg-Watts calculus, Peter-Weyl (co)ends and Radford theorems.")
    p.add_argument("command", choices=sorted(list(COMMANDS) + ["suite"]))
    p.add_argument("inputs", nargs="*", help="documents: file paths or corpus:NAME")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="exhaustive iso-search budget")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--quiet", action="store_true", help="omit witness certificates")
    p.add_argument("--output", help="also write the machine report to this file")
    p.add_argument("--kind", choices=("rex", "lex"), default="rex",
                   help="peterweyl: read the optional bimodule as Rex{N} or Lex{N}")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        report, code = run(args.command, args.inputs, args)
    except DocumentError as e:
        sys.stderr.write(dumps({"kind": "error", "error": e.to_json()}))
        return INPUT_ERROR
    text = dumps(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text if args.format == "machine" else format_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
