#!/usr/bin/env python3
"""Compare the compiled search kernel against the pure-Python fallback.

Runs the same instances through both kernels, checks the reports agree,
and prints a timing table.

    python benchmarks/bench_search.py
    python benchmarks/bench_search.py --repeat 5
"""

import argparse
import time

from thetagrid import parse_theta
from thetagrid.solver import (
    HAVE_SPEEDUPS,
    SearchConfig,
    _problem,
    solve_exact,
    solve_oracle,
)

INSTANCES = [
    ("oracle", 3, "deg=135"),
    ("oracle", 4, "deg=135"),
    ("oracle", 4, "deg=180"),
    ("oracle", 4, "deg=90"),
    ("branch_and_bound", 4, "deg=135"),
    ("branch_and_bound", 5, "deg=135"),
    ("branch_and_bound", 5, "deg=180"),
    ("branch_and_bound", 6, "deg=135"),
]


def run_one(mode, n, theta_text, kernel, repeat):
    theta = parse_theta(theta_text)
    cfg = SearchConfig(mode=mode, kernel=kernel, oracle_cap=5)
    fn = solve_oracle if mode == "oracle" else solve_exact
    best = None
    report = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        report = fn(n, theta, cfg)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return report, best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3, help="best-of timing repeats")
    args = ap.parse_args()

    if not HAVE_SPEEDUPS:
        print("compiled kernel not built; nothing to compare (pip install -e .)")
        return 1

    print(f"{'instance':<34} {'pure':>10} {'compiled':>10} {'speedup':>8}  size  nodes")
    for mode, n, theta_text in INSTANCES:
        _problem(n, parse_theta(theta_text))  # warm the shared pair table
        rp, tp = run_one(mode, n, theta_text, "pure", args.repeat)
        rc, tc = run_one(mode, n, theta_text, "compiled", args.repeat)
        assert (rp.size, rp.best, rp.nodes_explored) == (rc.size, rc.best, rc.nodes_explored), (
            "kernel mismatch on " + f"{mode} n={n} {theta_text}"
        )
        label = f"{mode} n={n} {theta_text}"
        print(
            f"{label:<34} {tp * 1e3:>8.2f}ms {tc * 1e3:>8.2f}ms {tp / tc:>7.1f}x"
            f"  {rc.size:>4}  {rc.nodes_explored}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
