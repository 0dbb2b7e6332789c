"""Command-line front end.

Exit codes: 0 for a true verdict (or success), 1 for a false verdict (or
reported mismatches), 2 for usage and format errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classify, fastcheck, harness, semantics
from .altgraph import SliceGraphFormatError, apath, load_slice_graph, validate_slice_graph
from .kripke import ModelFormatError, load_model, store_model, validate
from .reductions import (
    CONSTRUCTIONS,
    DigraphFormatError,
    ReductionInputError,
    load_digraph,
)
from .syntax import FormulaSyntaxError, parse_formula, signature


def _load_model_file(path):
    model, start = load_model(Path(path).read_text())
    problems = validate(model)
    if problems:
        raise ModelFormatError("; ".join(problems))
    return model, start


def _emit(args, payload, text):
    print(json.dumps(payload) if args.json else text)


def _cmd_check(args, fast: bool) -> int:
    model, file_start = _load_model_file(args.model)
    start = args.state or file_start
    if start is None:
        print("error: no start state (use -s or a start: section)", file=sys.stderr)
        return 2
    if start not in model.index:
        print(f"error: unknown state {start!r}", file=sys.stderr)
        return 2
    phi = parse_formula(args.formula)
    if fast:
        verdict, engine = fastcheck.route(model, start, phi)
        _emit(args, {"verdict": verdict, "engine": engine},
              f"{'true' if verdict else 'false'} (engine: {engine})")
    else:
        verdict = semantics.check(model, start, phi)
        _emit(args, {"verdict": verdict}, "true" if verdict else "false")
    return 0 if verdict else 1


def _cmd_classify(args) -> int:
    phi = parse_formula(args.formula)
    sig = signature(phi)
    clone = classify.clone_of(sig.boolean_ops)
    ops = sorted(sig.temporal_ops)
    if len(ops) == 1:
        cell = classify.operator_cell(ops[0], clone)
        cell_text = str(cell)
    else:
        cell = None
        cell_text = "n/a (needs exactly one temporal operator)"
    engine = fastcheck.engine_for(phi)
    payload = {
        "temporal_ops": ops,
        "boolean_ops": sorted(sig.boolean_ops),
        "clone": clone.name,
        "fingerprint": None if cell is None else {
            "class": cell.cls, "qualifier": cell.qualifier, "upper": cell.upper,
        },
        "engine": engine,
    }
    text = (
        f"ops={{{','.join(ops)}}} bool={{{','.join(sorted(sig.boolean_ops))}}} "
        f"clone={clone.name} fingerprint={cell_text} engine={engine}"
    )
    _emit(args, payload, text)
    return 0


def _cmd_gen(args) -> int:
    build = CONSTRUCTIONS[args.construction]
    text = Path(args.input).read_text()
    if args.construction.startswith("gap-"):
        out = build(load_digraph(text))
    else:
        g = load_slice_graph(text)
        problems = validate_slice_graph(g)
        if problems:
            raise SliceGraphFormatError("; ".join(problems))
        out = build(g)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    model_path = outdir / "model.txt"
    formula_path = outdir / "formula.txt"
    model_path.write_text(store_model(out.instance.model, start=out.instance.start))
    formula_path.write_text(str(out.instance.formula) + "\n")
    _emit(
        args,
        {"construction": out.name, "model": str(model_path), "formula": str(formula_path),
         "states": len(out.instance.model.states)},
        f"wrote {model_path} and {formula_path} ({len(out.instance.model.states)} states)",
    )
    return 0


def _cmd_apath(args) -> int:
    g = load_slice_graph(Path(args.input).read_text())
    problems = validate_slice_graph(g)
    if problems:
        raise SliceGraphFormatError("; ".join(problems))
    verdict = apath(g)
    _emit(args, {"verdict": verdict}, "true" if verdict else "false")
    return 0 if verdict else 1


def _cmd_compare(args) -> int:
    red_counts, red_mismatches = harness.reduction_suite(args.seeds, seed=args.seed)
    eng_counts, eng_mismatches = harness.engine_suite(args.cases, seed=args.seed)
    mismatches = red_mismatches + eng_mismatches
    payload = {
        "reductions": red_counts,
        "engines": eng_counts,
        "mismatches": [str(m) for m in mismatches],
    }
    if args.json:
        print(json.dumps(payload))
    else:
        for name, count in red_counts.items():
            print(f"reduction {name}: {count} instances")
        for name, count in eng_counts.items():
            print(f"engine {name}: {count} instances")
        for m in mismatches:
            print(str(m))
        print(f"{len(mismatches)} mismatches")
    return 0 if not mismatches else 1


def _cmd_bench(args) -> int:
    rows = harness.bench_engines(args.cases, seed=args.seed)
    if args.json:
        print(json.dumps([
            {"fragment": label, "cases": n, "engine_s": eng, "generic_s": gen}
            for label, n, eng, gen in rows
        ]))
    else:
        for label, n, eng, gen in rows:
            print(f"{label:16s} {n:5d} cases  engine {eng:8.4f}s  generic {gen:8.4f}s")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctlfrag", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("check", help="model check with the generic fixpoint engine")
    p.add_argument("-m", "--model", required=True)
    p.add_argument("-s", "--state")
    p.add_argument("-f", "--formula", required=True)
    add_json(p)

    p = sub.add_parser("fastcheck", help="model check via the fragment router")
    p.add_argument("-m", "--model", required=True)
    p.add_argument("-s", "--state")
    p.add_argument("-f", "--formula", required=True)
    add_json(p)

    p = sub.add_parser("classify", help="signature, clone, fingerprint, engine")
    p.add_argument("-f", "--formula", required=True)
    add_json(p)

    p = sub.add_parser("gen", help="emit a model-checking instance from a graph")
    p.add_argument("--construction", required=True, choices=sorted(CONSTRUCTIONS))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    add_json(p)

    p = sub.add_parser("apath", help="alternating accessibility verdict for a slice graph")
    p.add_argument("--in", dest="input", required=True)
    add_json(p)

    p = sub.add_parser("compare", help="run the oracle-equivalence suites")
    p.add_argument("--seeds", type=int, default=50, help="instances per construction")
    p.add_argument("--cases", type=int, default=200, help="instances per engine fragment")
    p.add_argument("--seed", type=int, default=0)
    add_json(p)

    p = sub.add_parser("bench", help="time engines against the generic checker")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    add_json(p)

    return parser


_HANDLERS = {
    "check": lambda a: _cmd_check(a, fast=False),
    "fastcheck": lambda a: _cmd_check(a, fast=True),
    "classify": _cmd_classify,
    "gen": _cmd_gen,
    "apath": _cmd_apath,
    "compare": _cmd_compare,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (FormulaSyntaxError, ModelFormatError, SliceGraphFormatError,
            DigraphFormatError, ReductionInputError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
