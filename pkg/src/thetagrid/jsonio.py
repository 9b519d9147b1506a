"""Canonical JSON encoding, shared by the CLI and the HTTP service.

Constructions serialize as ``{"n": int, "points": [[x, y], ...]}`` with the
points sorted by row then column; triples as ``{"a": [x,y], "vertex":
[x,y], "c": [x,y]}``.  Both front ends emit through :func:`dumps`, so equal
answers are byte-identical.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .analysis import Bounds
from .angles import ForbiddenTriple, VerifyResult
from .constructions import Witness
from .grid import Construction, Point
from .solver import SolveReport


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _xy(p: Point) -> list[int]:
    return [p.x, p.y]


def construction_obj(c: Construction) -> dict:
    return {"n": c.dim.n, "points": [_xy(p) for p in c.points]}


def construction_from_obj(obj: Any) -> Construction:
    if not isinstance(obj, Mapping):
        raise ValueError("construction JSON must be an object")
    if "n" not in obj or not isinstance(obj["n"], int) or isinstance(obj["n"], bool):
        raise ValueError('construction JSON needs an integer "n"')
    pts = obj.get("points", [])
    if not isinstance(pts, list):
        raise ValueError('"points" must be an array of [x, y] pairs')
    parsed = []
    for item in pts:
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in item)
        ):
            raise ValueError(f"bad point entry {item!r}; expected [x, y] integers")
        parsed.append((item[0], item[1]))
    return Construction.of(obj["n"], parsed)


def triple_obj(t: ForbiddenTriple) -> dict:
    return {"a": _xy(t.a), "vertex": _xy(t.vertex), "c": _xy(t.c)}


def verify_obj(res: VerifyResult) -> dict:
    return {
        "peaceful": res.peaceful,
        "violations": [triple_obj(t) for t in res.violations],
        "truncated": res.truncated,
    }


def bounds_obj(b: Bounds) -> dict:
    return {
        "lower": b.lower,
        "upper": b.upper,
        "formula": b.formula,
        "external": b.external,
    }


def witness_obj(w: Witness) -> dict:
    return {
        "n": w.dim.n,
        "kind": w.kind,
        **triple_obj(w.triple),
    }


def report_obj(r: SolveReport) -> dict:
    return {
        "size": r.size,
        "points": [_xy(p) for p in r.best.points],
        "n": r.best.dim.n,
        "optimal": r.optimal,
        "nodes_explored": r.nodes_explored,
        "elapsed_ms": round(r.elapsed_ms, 3),
        "mode": r.mode,
        "kernel": r.kernel,
        "seed": r.seed,
        "bounds": bounds_obj(r.bound_context),
    }


def blocked_obj(report: Mapping[Point, ForbiddenTriple]) -> dict:
    return {
        "blocked": [
            {"cell": _xy(cell), "witness": triple_obj(w)} for cell, w in report.items()
        ]
    }
