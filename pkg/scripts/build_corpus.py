"""Regenerate src/ewcalc/corpus/ from the constructors in ewcalc.catalog."""

import shutil
from pathlib import Path

from ewcalc import catalog
from ewcalc.formats import algebra_morphism_json, dumps, hopf_json, algebra_json, module_json

OUT = Path(__file__).resolve().parent.parent / "src" / "ewcalc" / "corpus"

EMBEDDINGS = {
    "H4>kC2": ("kC2_in_H4", "kC2", "H4"),
    "kC2>k": ("k_in_kC2", "k", "kC2"),
    "T3>kC3": ("kC3_in_T3", "kC3_F7", "T3"),
    "M2>D2": ("D2_in_M2", "D2", "M2"),
    "UT2>kC2": ("kC2_in_UT2", "kC2", "UT2"),
    "kC3>k": ("k_in_kC3", "k", "kC3"),
    "D2>k": ("k_in_D2", "k", "D2"),
}

SUITE = {
    "kind": "suite",
    "name": "default",
    "runs": (
        [{"command": "classify", "inputs": [f"corpus:{n}"]} for n in catalog.ALGEBRAS]
        + [{"command": "peterweyl", "inputs": [f"corpus:{n}"]} for n in catalog.ALGEBRAS]
        + [{"command": c, "inputs": [f"corpus:{n}"]} for c in ("radford", "serre", "unimodular")
           for n in ("kC2", "kC3", "H4", "T3")]
        + [{"command": "restriction", "inputs": ["corpus:H4", "corpus:kC2", "corpus:kC2_in_H4"]}]
    ),
}


def file_label(label):
    named = {"A": "regular", "A*": "coregular", "P+": "Pplus", "P-": "Pminus"}
    if label in named:
        return named[label]
    for a, b in (("^", ""), ("*", "star"), ("|", "_"), (">", "_"), ("[", "_"), ("]", "")):
        label = label.replace(a, b)
    return label


def main():
    if OUT.exists():
        shutil.rmtree(OUT)
    (OUT / "modules").mkdir(parents=True)
    refs = {}
    for name in catalog.ALGEBRAS + ("kC3_F7",):
        if name in catalog.HOPF or name == "kC3_F7":
            doc = hopf_json(catalog.hopf(name))
        else:
            doc = algebra_json(catalog.algebra(name))
        doc["label"] = name
        (OUT / f"{name}.json").write_text(dumps(doc), encoding="utf-8")
        refs.setdefault(f"corpus:{name}", catalog.hopf(name).algebra if name == "kC3_F7"
                        else catalog.algebra(name))
    for name in catalog.ALGEBRAS:
        d = OUT / "modules" / name
        d.mkdir()
        for m in catalog.test_modules(name):
            doc = module_json(m, {f"corpus:{name}": catalog.algebra(name)})
            (d / f"{file_label(m.label)}.json").write_text(dumps(doc), encoding="utf-8")
    d = OUT / "modules" / "bimodules"
    d.mkdir()
    for m in catalog.bimodules():
        doc = module_json(m, refs)
        (d / f"{file_label(m.label)}.json").write_text(dumps(doc), encoding="utf-8")
    for key, (fname, _, _) in EMBEDDINGS.items():
        doc = algebra_morphism_json(catalog.embedding(key), refs)
        (OUT / f"{fname}.json").write_text(dumps(doc), encoding="utf-8")
    (OUT / "suite_default.json").write_text(dumps(SUITE), encoding="utf-8")


if __name__ == "__main__":
    main()
