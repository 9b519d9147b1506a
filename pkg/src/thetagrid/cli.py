"""Command-line interface.

Exit codes: 0 on success (and on "peaceful"), 1 when a verification finds
violations, 2 for malformed input or domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import analysis, jsonio
from .angles import parse_theta, verify
from .constructions import two_rows, witness
from .grid import Construction, GridDim, Slope, SlopeBucketIndex, SlopeRangeError, count_buckets
from .solver import SearchConfig, solve


def _emit(args, obj: dict, text: str) -> None:
    print(jsonio.dumps(obj) if args.format == "json" else text)


def _fail(message: str, code: int = 2) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _read_construction(path: Optional[str]) -> Construction:
    if path in (None, "-"):
        raw = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    return jsonio.construction_from_obj(json.loads(raw))


def cmd_verify(args) -> int:
    theta = parse_theta(args.theta)
    c = _read_construction(args.input)
    if args.n is not None and args.n != c.dim.n:
        return _fail(f"--n {args.n} disagrees with the file's n={c.dim.n}")
    res = verify(c, theta, limit=args.limit)
    if res.peaceful:
        _emit(args, jsonio.verify_obj(res), "peaceful")
        return 0
    lines = [f"violations: {len(res.violations)}" + (" (truncated)" if res.truncated else "")]
    lines += [
        f"  a=({t.a.x},{t.a.y}) vertex=({t.vertex.x},{t.vertex.y}) c=({t.c.x},{t.c.y})"
        for t in res.violations
    ]
    _emit(args, jsonio.verify_obj(res), "\n".join(lines))
    return 1


def cmd_construct(args) -> int:
    if args.kind == "two-rows":
        if args.n is None:
            return _fail("two-rows needs --n")
        c = two_rows(GridDim(args.n), transpose=args.transpose)
        _emit(
            args,
            jsonio.construction_obj(c),
            "\n".join(f"({p.x},{p.y})" for p in c.points),
        )
        return 0
    if args.kind == "witness":
        if args.theta is None:
            return _fail("witness needs --theta")
        w = witness(parse_theta(args.theta))
        _emit(
            args,
            jsonio.witness_obj(w),
            f"n={w.dim.n} kind={w.kind} a=({w.triple.a.x},{w.triple.a.y}) "
            f"vertex=({w.triple.vertex.x},{w.triple.vertex.y}) c=({w.triple.c.x},{w.triple.c.y})",
        )
        return 0
    return _fail(f"unknown kind {args.kind!r}")


def cmd_bounds(args) -> int:
    theta = parse_theta(args.theta)
    b = analysis.bounds(theta, GridDim(args.n))
    _emit(
        args,
        jsonio.bounds_obj(b),
        f"lower={b.lower} upper={b.upper} formula={b.formula} external={b.external}",
    )
    return 0


def cmd_solve(args) -> int:
    theta = parse_theta(args.theta)
    cfg = SearchConfig(
        mode=args.mode,
        node_budget=args.budget_nodes,
        time_budget=args.budget_seconds,
        symmetry_breaking=not args.no_symmetry_breaking,
        rng_seed=args.seed,
        restarts=args.restarts,
        oracle_cap=args.oracle_cap,
        kernel=args.kernel,
    )
    report = solve(GridDim(args.n), theta, cfg)
    _emit(
        args,
        jsonio.report_obj(report),
        f"size={report.size} optimal={report.optimal} nodes={report.nodes_explored} "
        f"points={' '.join(f'({p.x},{p.y})' for p in report.best.points)}",
    )
    return 0


def cmd_buckets(args) -> int:
    slope = Slope.parse(args.slope)
    d = GridDim(args.n)
    index = SlopeBucketIndex.build(d, slope)
    try:
        formula: Optional[int] = count_buckets(slope, d)
    except SlopeRangeError:
        formula = None
    obj = {
        "n": d.n,
        "slope": str(slope),
        "count": len(index),
        "formula": formula,
        "formula_match": None if formula is None else formula == len(index),
        "buckets": [[[p.x, p.y] for p in b] for b in index.buckets],
    }
    _emit(
        args,
        obj,
        f"buckets={len(index)} formula={formula} match={obj['formula_match']}",
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(max_side=args.max_n, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetagrid",
        description="Angle-free point sets on integer grids: verify, construct, bound, solve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("verify", help="check a construction JSON against an angle")
    p.add_argument("input", nargs="?", help="path to construction JSON ('-' or omit for stdin)")
    p.add_argument("--n", type=int, default=None, help="optional consistency check on the grid side")
    p.add_argument("--theta", required=True, help="deg=D or tan=p/q")
    p.add_argument("--limit", type=int, default=None, help="report at most this many violations")
    add_format(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("construct", help="emit a named construction as JSON")
    p.add_argument("--kind", required=True, choices=("two-rows", "witness"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--theta", default=None)
    p.add_argument("--transpose", action="store_true", help="columns instead of rows")
    add_format(p)
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("bounds", help="known lower/upper bounds for (n, theta)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", required=True)
    add_format(p)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("solve", help="search for a maximum peaceful set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--mode", choices=("oracle", "branch_and_bound", "greedy"), default="branch_and_bound")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--no-symmetry-breaking", action="store_true")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--oracle-cap", type=int, default=4)
    p.add_argument("--kernel", choices=("auto", "pure", "compiled"), default="auto")
    add_format(p)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("buckets", help="slope-bucket partition and count cross-check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--slope", required=True, help="e.g. -1, 1/2, vertical")
    add_format(p)
    p.set_defaults(fn=cmd_buckets)

    p = sub.add_parser("serve", help="run the local JSON-over-HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8077)
    p.add_argument("--max-n", type=int, default=64)
    p.add_argument("--ui-dir", default=None, help="serve a built explorer UI from this directory")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except json.JSONDecodeError as exc:
        return _fail(f"malformed JSON: {exc}")
    except OSError as exc:
        return _fail(str(exc))
    except ValueError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
