"""Command-line entry point.

Exit codes: 0 success, 1 validation or check failure, 2 usage error,
3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import budget as _budget
from .errors import EnumerationCap, QuasikitError
from .serialize import (
    Workspace,
    components_doc,
    construction_doc,
    dumps,
    kind_of,
    category_doc,
    lattice_doc,
    morphism_doc,
    presheaf_doc,
    subobject_doc,
)

COMPUTE_OPS = (
    "terminal", "initial", "product", "coproduct", "pullback", "pushout", "equalizer", "coequalizer",
    "exp", "chi", "union", "notnot", "elements", "slice-exp",
)

# op -> expected kinds of its positional arguments
ARITY = {
    "terminal": ("category", "lattice"),
    "initial": ("category", "lattice"),
    "product": ("presheaf", "presheaf"),
    "coproduct": ("presheaf", "presheaf"),
    "pullback": ("morphism", "morphism"),
    "pushout": ("morphism", "morphism"),
    "equalizer": ("morphism", "morphism"),
    "coequalizer": ("morphism", "morphism"),
    "exp": ("presheaf", "presheaf"),
    "chi": ("subobject",),
    "union": ("subobject", "subobject"),
    "notnot": ("subobject",),
    "elements": ("presheaf",),
    "slice-exp": ("morphism", "morphism"),
}


class UsageError(Exception):
    pass


def _emit(text: str, out=None):
    (out or sys.stdout).write(text)


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


# summaries ----------------------------------------------------------------


def presheaf_summary(A) -> dict:
    C = A.category
    return {
        "carriers": {i: len(A.carrier(i)) for i in C.objects},
        "membership": {i: {x: A.mu(i, x) for x in A.carrier(i)} for i in C.objects},
    }


def _summary_lines(summary: dict) -> list[str]:
    lines = []
    for key, val in summary.items():
        if isinstance(val, dict) and "carriers" in val:
            sizes = " ".join(f"{i}={n}" for i, n in val["carriers"].items())
            lines.append(f"{key}: {sizes}")
            for i, table in val["membership"].items():
                if table:
                    lines.append(f"  {i}: " + ", ".join(f"{x}={v}" for x, v in table.items()))
        elif isinstance(val, dict):
            lines.append(f"{key}:")
            for i, table in val.items():
                if isinstance(table, dict):
                    if table:
                        lines.append(f"  {i}: " + ", ".join(f"{x}->{y}" for x, y in table.items()))
                else:
                    lines.append(f"  {i}: {table}")
        else:
            lines.append(f"{key}: {val}")
    return lines


def _print_summary(summary: dict, fmt: str, out=None):
    if fmt == "json":
        _emit(dumps(summary), out)
    else:
        _emit("\n".join(_summary_lines(summary)) + "\n", out)


# compute --------------------------------------------------------------------


def run_compute(op: str, values: list, cap: int | None = None) -> tuple[dict, dict]:
    """Run one construction; returns ``(artifact document, summary)``."""
    from .adhesive import regular_union
    from .classifier import build_classifier, chi
    from .exponential import evaluation, exponential_object
    from .limits import (
        binary_coproduct,
        binary_product,
        coequalizer,
        equalizer,
        initial,
        pullback,
        pushout,
        terminal,
    )
    from .slice import category_of_elements, slice_exponential, slice_object
    from .topology import notnot_closure

    bud = _budget.Budget(cap)
    summary: dict = {"op": op}
    if op in ("terminal", "initial"):
        C, L = values
        apex = terminal(C, L) if op == "terminal" else initial(C, L)
        doc = construction_doc(op, apex, {})
        summary["apex"] = presheaf_summary(apex)
    elif op in ("product", "coproduct", "pullback", "pushout"):
        fn = {"product": binary_product, "coproduct": binary_coproduct, "pullback": pullback, "pushout": pushout}[op]
        apex, l1, l2 = fn(*values)
        doc = construction_doc(op, apex, {"first": l1, "second": l2})
        summary["apex"] = presheaf_summary(apex)
    elif op in ("equalizer", "coequalizer"):
        fn = equalizer if op == "equalizer" else coequalizer
        apex, leg = fn(*values)
        doc = construction_doc(op, apex, {"leg": leg})
        summary["apex"] = presheaf_summary(apex)
    elif op == "exp":
        exp = exponential_object(*values, budget=bud)
        doc = construction_doc(op, exp.obj, {"eval": evaluation(exp)})
        summary["apex"] = presheaf_summary(exp.obj)
    elif op == "chi":
        (S,) = values
        Omega, _ = build_classifier(S.ambient.category, S.ambient.labels, budget=bud)
        phi = chi(S, Omega)
        doc = morphism_doc(phi)
        summary["ambient"] = presheaf_summary(S.ambient)
        summary["chi"] = components_doc(phi)
    elif op in ("union", "notnot"):
        res = regular_union(*values).union if op == "union" else notnot_closure(values[0])
        doc = subobject_doc(res)
        summary["subobject"] = presheaf_summary(res.as_presheaf())
    elif op == "elements":
        (D,) = values
        E = category_of_elements(D)
        doc = {
            "$kind": "construction",
            "op": op,
            "category": category_doc(E.category),
            "lattices": {o: lattice_doc(L) for o, L in sorted(E.labels.items())},
            "points": {o: list(p) for o, p in sorted(E.point.items())},
        }
        summary["objects"] = len(E.category.objects)
        summary["morphisms"] = len(E.category.morphisms)
        summary["lattice sizes"] = {o: len(L.elements) for o, L in sorted(E.labels.items())}
    elif op == "slice-exp":
        p, q = values
        res = slice_exponential(slice_object(p), slice_object(q), budget=bud)
        doc = morphism_doc(res.anchor)
        summary["total"] = presheaf_summary(res.total)
        summary["anchor"] = components_doc(res.anchor)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown op {op!r}")
    summary["explored"] = bud.spent
    return doc, summary


def cmd_compute(args) -> int:
    kinds = ARITY[args.op]
    if len(args.args) != len(kinds):
        raise UsageError(f"compute {args.op} takes {len(kinds)} file argument(s): {', '.join(kinds)}")
    ws = Workspace()
    values = [ws.load(path, kind) for path, kind in zip(args.args, kinds)]
    doc, summary = run_compute(args.op, values, args.max_enum)
    text = dumps(doc)
    if args.out:
        _write(Path(args.out), text)
        summary["written"] = args.out
        _print_summary(summary, args.format)
    else:
        _emit(text)
        _print_summary(summary, args.format, sys.stderr)
    return 0


# validate -------------------------------------------------------------------


def _expand(paths) -> list[Path]:
    out = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            out.extend(sorted(p.glob("*.json")))
        else:
            out.append(p)
    return out


def cmd_validate(args) -> int:
    rows = []
    for path in _expand(args.paths):
        try:
            value = Workspace().load(path)
            rows.append({"path": str(path), "valid": True, "kind": kind_of(value)})
        except EnumerationCap:
            raise
        except QuasikitError as exc:
            rows.append({"path": str(path), "valid": False, "error": exc.code, "message": str(exc)})
    if args.format == "json":
        _emit(dumps({"files": rows, "valid": all(r["valid"] for r in rows)}))
    else:
        for r in rows:
            if r["valid"]:
                _emit(f"OK   {r['path']} ({r['kind']})\n")
            else:
                _emit(f"FAIL {r['path']}: {r['error']}: {r['message']}\n")
    return 0 if all(r["valid"] for r in rows) else 1


# check ----------------------------------------------------------------------


def cmd_check(args) -> int:
    from .checks import run_suite

    results = run_suite(args.suite, seed=args.seed, budget=args.max_enum)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        _emit(dumps({"suite": args.suite, "seed": args.seed, "results": [r.as_dict() for r in results],
                     "passed": len(results) - len(failed), "failed": len(failed)}))
    else:
        for r in results:
            _emit(r.line() + "\n")
        _emit(f"{len(results) - len(failed)} passed, {len(failed)} failed\n")
    return 1 if failed else 0


# rewrite / demo -------------------------------------------------------------


def _step_files(res) -> dict:
    return {
        "post-state.json": dumps(presheaf_doc(res.G_R)),
        "w.json": dumps(morphism_doc(res.w)),
        "g_R.json": dumps(morphism_doc(res.g_R)),
        "w-prime.json": dumps(morphism_doc(res.w_p)),
        "cube-report.json": dumps(dict(res.report.as_dict(), **{"$kind": "report"})),
    }


def _step_summary(res) -> dict:
    rep = res.report
    return {
        "post-state": presheaf_summary(res.G_R),
        "faces": {
            "back faces pullbacks": rep.back_pullbacks,
            "bottom pushout": rep.bottom_pushout,
            "top pushout": rep.top_pushout,
            "front faces pullbacks": rep.front_pullbacks,
        },
    }


def cmd_rewrite(args) -> int:
    from .rewrite import apply_right_step

    ws = Workspace()
    rule = ws.load(args.rule, "rule")
    host = ws.load_host(args.host, rule)
    res = apply_right_step(rule, host, oracle=args.oracle)
    files = _step_files(res)
    summary = _step_summary(res)
    if args.out:
        for name, text in files.items():
            _write(Path(args.out) / name, text)
        summary["written"] = args.out
        _print_summary(summary, args.format)
    else:
        _emit(files["post-state.json"])
        _print_summary(summary, args.format, sys.stderr)
    return 0


def cmd_demo(args) -> int:
    from .rewrite import apply_right_step, build_transmission_demo
    from .serialize import host_doc, rule_doc

    demo = build_transmission_demo()
    res = apply_right_step(demo["rule"], demo["host"])
    files = {
        "pre-state.json": dumps(presheaf_doc(demo["pre_state"])),
        "rule.json": dumps(rule_doc(demo["rule"])),
        "host.json": dumps(dict(host_doc(demo["host"]), rule="rule.json")),
        "expected-post.json": dumps(presheaf_doc(demo["expected_post"])),
    }
    files.update(_step_files(res))
    match = files["post-state.json"] == files["expected-post.json"]
    summary = _step_summary(res)
    summary["matches expected"] = match
    if args.out:
        for name, text in files.items():
            _write(Path(args.out) / name, text)
        summary["written"] = args.out
    _print_summary(summary, args.format)
    return 0 if match else 1


# entry point ----------------------------------------------------------------


def _max_enum(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="report format")
    common.add_argument("--max-enum", type=_max_enum, default=None,
                        help=f"enumeration cap (default: ${_budget.ENV_VAR} or {_budget.DEFAULT_MAX_ENUM})")

    parser = argparse.ArgumentParser(prog="quasikit", description="Finite fuzzy presheaf toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate exchange files or directories")
    p.add_argument("paths", nargs="+")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("compute", parents=[common], help="run a construction")
    p.add_argument("op", choices=COMPUTE_OPS)
    p.add_argument("args", nargs="*")
    p.add_argument("--out", help="write the artifact here instead of stdout")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("check", parents=[common], help="run a property suite")
    p.add_argument("suite", choices=("heyting", "limits", "classifier", "adjunction", "slice",
                                     "adhesive", "topology", "rewrite", "all"))
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("rewrite", parents=[common], help="apply a rule to a host")
    p.add_argument("rule")
    p.add_argument("host")
    p.add_argument("--out", help="directory for the post-state and reports")
    p.add_argument("--oracle", choices=("fast", "brute", "both"), default="fast")
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("demo", parents=[common], help="run a bundled example")
    p.add_argument("name", nargs="?", choices=("transmission",), default="transmission")
    p.add_argument("--out", help="directory for the generated files")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _budget.set_default_cap(args.max_enum)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"quasikit: error: {exc}\n")
        return 2
    except QuasikitError as exc:
        sys.stderr.write(f"quasikit: {exc.code}: {exc}\n")
        return exc.exit_code
    finally:
        _budget.set_default_cap(None)


if __name__ == "__main__":
    sys.exit(main())
