"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 precondition, 4 template mismatch,
5 verification failure, 6 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .distance import distance_csv, distance_matrix
from .equienergetic import build_family, verify_family
from .errors import SpectraError, TemplateMismatch, VerificationError
from .expr import as_graph, evaluate, parse
from .graph import Graph
from .numlin import DEFAULT_TOL, energy, multiset_compare
from .theory import closed_form_spectrum, numeric_spectrum, verify_instance
from .transforms import BlockedGraph


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load(text: str):
    """Evaluate an expression, or load ``@path.json`` from disk."""
    if text.startswith("@"):
        data = json.loads(Path(text[1:]).read_text())
        return BlockedGraph.from_dict(data) if "blocks" in data else Graph.from_dict(data)
    return evaluate(parse(text))


def _require_blocked(obj) -> BlockedGraph:
    if not isinstance(obj, BlockedGraph):
        raise TemplateMismatch("closed forms need a djoin(...) expression")
    return obj


def cmd_graph(args) -> int:
    obj = load(args.expr)
    payload = obj.to_dict() if isinstance(obj, (Graph, BlockedGraph)) else obj.graph.to_dict()
    text = _dumps(payload)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.distance_csv:
        Path(args.distance_csv).write_text(distance_csv(distance_matrix(as_graph(obj))))
    return 0


def cmd_spectrum(args) -> int:
    obj = load(args.expr)
    numeric = closed = None
    if args.method in ("numeric", "both"):
        numeric = numeric_spectrum(as_graph(obj))
    if args.method in ("closed", "both"):
        closed = closed_form_spectrum(_require_blocked(obj))
    if args.json:
        if args.method == "numeric":
            payload = numeric.to_dict()
        elif args.method == "closed":
            payload = closed.to_dict()
        else:
            gap = multiset_compare(closed, numeric).max_gap
            payload = {
                "numeric": numeric.to_dict(),
                "closed_form": closed.to_dict(),
                "max_gap": float(f"{gap:.3e}"),
            }
        sys.stdout.write(_dumps(payload))
        return 0
    spec = closed if closed is not None else numeric
    for i, value in enumerate(spec.values):
        label = spec.labels[i] if spec.labels else ""
        extra = f"  {numeric.values[i]: .12f}" if closed is not None and numeric is not None else ""
        print(f"{value: .12f}{extra}  {label}".rstrip())
    if closed is not None and numeric is not None:
        print(f"max gap {multiset_compare(closed, numeric).max_gap:.3e}")
    return 0


def cmd_energy(args) -> int:
    spec = numeric_spectrum(as_graph(load(args.expr)))
    print(f"{energy(spec):#.10g}")
    return 0


def cmd_verify(args) -> int:
    bg = _require_blocked(load(args.expr))
    report = verify_instance(bg, tol=args.tol)
    if args.json:
        sys.stdout.write(_dumps(report.to_dict()))
    else:
        print(f"theorem   {report.theorem}")
        tpl = "ok" if report.template_ok else f"violation {report.template['first_violation']}"
        print(f"template  {tpl}")
        if report.template_ok:
            print(f"max gap   {report.max_gap:.3e} (tol {report.tol:g})")
            print(f"clause 3  matches oracle: {report.clause3_verdict}")
    if not report.template_ok:
        return TemplateMismatch.exit_code
    if not report.ok:
        return VerificationError.exit_code
    return 0


def cmd_families(args) -> int:
    g = as_graph(load(args.g))
    fixed = as_graph(load(args.fixed))
    members = build_family(args.case, g, args.h, args.vary, fixed, args.n)
    report = verify_family(members, tol=args.tol)
    payload = _dumps(report.to_dict())
    if args.out:
        Path(args.out).write_text(payload)
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
    if args.json:
        sys.stdout.write(payload)
    elif not args.out:
        print(f"case {report.theorem_case}, varying {report.vary}, {len(report.members)} members")
        for parts, e in report.members:
            print(f"  {'+'.join(map(str, parts)):>12}  {e:.10f}")
        print(f"max deviation {report.max_deviation:.3e} (tol {report.tol:g})")
        print(f"all diameter 3: {report.all_diameter3}; mechanism check: {report.mechanism_ok}")
    if not (report.equienergetic and report.mechanism_ok):
        return VerificationError.exit_code
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="djspectra",
        description="Distance spectra of double joins of merged subdivision graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", help="evaluate an expression and export it as JSON")
    p.add_argument("expr")
    p.add_argument("--out")
    p.add_argument("--distance-csv", help="also write the distance matrix as CSV")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("spectrum", help="distance spectrum")
    p.add_argument("expr")
    p.add_argument("--method", choices=("numeric", "closed", "both"), default="numeric")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("energy", help="distance energy")
    p.add_argument("expr")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("verify", help="closed form versus numeric spectrum")
    p.add_argument("expr")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("families", help="build and check an equienergetic family")
    p.add_argument("--case", choices=("i", "ii", "iii", "iv"), required=True)
    p.add_argument("--g", required=True, help="base graph expression")
    p.add_argument("--h", help="H kind for cases ii-iv")
    p.add_argument("--vary", choices=("g1", "g2"), required=True)
    p.add_argument("--fixed", required=True, help="graph on the non-varying side")
    p.add_argument("--n", type=int, required=True, help="order of the varying side")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--csv", help="write the member table here")
    p.set_defaults(func=cmd_families)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpectraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return SpectraError.exit_code


if __name__ == "__main__":
    sys.exit(main())
