"""Maximum peaceful set search: exhaustive oracle, branch-and-bound, greedy.

All three searches run over a precomputed *pair table*: for every pair of
cells, the bitmask of cells that would complete a forbidden triple with
them.  A cell is dead once it completes a triple with two chosen points,
so peacefulness is maintained incrementally, one OR per chosen point.

* ``solve_oracle`` enumerates every peaceful set outright (no bound
  pruning) and is the ground truth the other modes are tested against.
  Its pure-Python variant does not even use the pair table: it re-checks
  angles directly, keeping the two routes independent.
* ``solve_exact`` is branch-and-bound in descending hypergraph-degree
  order with optional root-level symmetry breaking; after a completed
  search a cheap second pass recovers the lexicographically least optimum
  so reports are identical however the search was configured.
* ``solve_greedy`` is restarted randomized greedy (fewest newly blocked
  cells first) with a 1-out-2-in plateau search, seeded once with the
  two-rows construction when that is peaceful for the target angle.

Kernels: grids of at most 64 cells can run on the compiled single-word
kernel (see ``_speedups.pyx``); everything can run on the pure-Python
big-int kernel.  Both produce bit-identical reports.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Optional

import numpy as np

from . import _search_py
from .analysis import Bounds, bounds as analysis_bounds
from .angles import AngleSpec, angle_equals, iter_forbidden_triples, verify
from .constructions import two_rows
from .grid import Construction, DimLike, GridDim, Point, as_dim, dihedral_images

try:
    from . import _speedups  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - build-dependent
    _speedups = None

HAVE_SPEEDUPS = _speedups is not None

#: Hard ceiling for the search modes: the pair table is dense in n^2 x n^2.
SOLVER_MAX_SIDE = 16

StopCheck = Optional[Callable[[], bool]]


def _force_pure() -> bool:
    return os.environ.get("THETAGRID_PURE", "") not in ("", "0")


@dataclass(frozen=True)
class SearchConfig:
    """Knobs shared by the search modes; defaults favor exactness."""

    mode: str = "branch_and_bound"  # oracle | branch_and_bound | greedy
    node_budget: Optional[int] = None
    time_budget: Optional[float] = None  # seconds
    symmetry_breaking: bool = True
    rng_seed: int = 0
    restarts: int = 8
    oracle_cap: int = 4
    kernel: str = "auto"  # auto | pure | compiled


@dataclass(frozen=True)
class SolveReport:
    best: Construction
    size: int
    optimal: bool
    nodes_explored: int
    elapsed_ms: float
    bound_context: Bounds
    mode: str
    kernel: str
    seed: Optional[int] = None


@dataclass(frozen=True)
class _Problem:
    dim: GridDim
    theta: AngleSpec
    pair_masks: tuple[tuple[int, ...], ...]
    degree: tuple[int, ...]
    n_triples: int


@lru_cache(maxsize=32)
def _problem(n: int, theta: AngleSpec) -> _Problem:
    d = GridDim(n)
    cells = n * n
    pair = [[0] * cells for _ in range(cells)]
    deg = [0] * cells
    count = 0
    for t in iter_forbidden_triples(d, theta):
        ia = d.cell_index(t.a)
        iv = d.cell_index(t.vertex)
        ic = d.cell_index(t.c)
        pair[ia][iv] |= 1 << ic
        pair[iv][ia] |= 1 << ic
        pair[iv][ic] |= 1 << ia
        pair[ic][iv] |= 1 << ia
        pair[ia][ic] |= 1 << iv
        pair[ic][ia] |= 1 << iv
        deg[ia] += 1
        deg[iv] += 1
        deg[ic] += 1
        count += 1
    return _Problem(d, theta, tuple(tuple(r) for r in pair), tuple(deg), count)


@lru_cache(maxsize=16)
def _pair_flat(n: int, theta: AngleSpec) -> np.ndarray:
    prob = _problem(n, theta)
    cells = n * n
    arr = np.zeros(cells * cells, dtype=np.uint64)
    for u in range(cells):
        row = prob.pair_masks[u]
        base = u * cells
        for v in range(cells):
            if row[v]:
                arr[base + v] = row[v]
    return arr


def _pick_kernel(requested: str, n_cells: int) -> str:
    compiled_ok = HAVE_SPEEDUPS and n_cells <= 64
    if requested == "pure":
        return "pure"
    if requested == "compiled":
        if not compiled_ok:
            raise ValueError(
                "compiled kernel unavailable"
                + ("" if HAVE_SPEEDUPS else " (extension not built)")
                + (f"; {n_cells} cells > 64" if n_cells > 64 else "")
            )
        return "compiled"
    if requested == "auto":
        return "compiled" if compiled_ok and not _force_pure() else "pure"
    raise ValueError(f"unknown kernel {requested!r}")


def _run_kernel(
    kernel: str,
    n: int,
    theta: AngleSpec,
    order: list[int],
    chosen: int,
    chosen_count: int,
    dead: int,
    best_size: int,
    best_mask: int,
    prune_bound: bool,
    stop_at: Optional[int] = None,
    node_budget: Optional[int] = None,
    deadline: Optional[float] = None,
    should_stop: StopCheck = None,
) -> _search_py.KernelResult:
    if kernel == "compiled":
        return _speedups.run_search(
            np.asarray(order, dtype=np.int32),
            _pair_flat(n, theta),
            n * n,
            chosen,
            chosen_count,
            dead,
            best_size,
            best_mask,
            prune_bound,
            stop_at,
            node_budget,
            deadline,
            should_stop,
        )
    prob = _problem(n, theta)
    return _search_py.run_search(
        order,
        prob.pair_masks,
        chosen,
        chosen_count,
        dead,
        best_size,
        best_mask,
        prune_bound,
        stop_at,
        node_budget,
        deadline,
        should_stop,
    )


def _deadline(cfg: SearchConfig) -> Optional[float]:
    return time.monotonic() + cfg.time_budget if cfg.time_budget is not None else None


def _mask_cells(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _report(
    d: GridDim,
    theta: AngleSpec,
    mask: int,
    optimal: bool,
    nodes: int,
    t0: float,
    mode: str,
    kernel: str,
    seed: Optional[int] = None,
) -> SolveReport:
    best = Construction.from_mask(d, mask)
    check = verify(best, theta, limit=1)
    if not check.peaceful:  # pragma: no cover - internal soundness guard
        raise RuntimeError(f"search returned a non-peaceful set: {check.violations[0]}")
    return SolveReport(
        best=best,
        size=len(best),
        optimal=optimal,
        nodes_explored=nodes,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
        bound_context=analysis_bounds(theta, d),
        mode=mode,
        kernel=kernel,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# Oracle: exhaustive enumeration.


class _DirectOracle:
    """Exhaustive include-first DFS that re-checks angles directly.

    Mirrors the mask kernel's traversal exactly (a cell may be included iff
    it forms no triple with two already-chosen points) but shares none of
    its pair-table machinery.
    """

    def __init__(
        self,
        d: GridDim,
        theta: AngleSpec,
        node_budget: Optional[int],
        deadline: Optional[float],
        should_stop: StopCheck,
    ):
        self.pts = list(d.points())
        self.theta = theta
        self.node_budget = node_budget
        self.deadline = deadline
        self.should_stop = should_stop
        self.chosen_idx: list[int] = []
        self.nodes = 0
        self.stopped = False
        self.best_size = 0
        self.best_mask = 0

    def run(self) -> _search_py.KernelResult:
        import sys

        need = len(self.pts) + 64
        if sys.getrecursionlimit() < need:
            sys.setrecursionlimit(need + 1024)
        self._dfs(0, 0)
        return _search_py.KernelResult(
            self.best_size, self.best_mask, self.nodes, not self.stopped
        )

    def _tick(self) -> bool:
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            self.stopped = True
        elif (self.nodes & 255) == 0:
            if self.deadline is not None and time.monotonic() > self.deadline:
                self.stopped = True
            elif self.should_stop is not None and self.should_stop():
                self.stopped = True
        return self.stopped

    def _can_add(self, k: int) -> bool:
        z = self.pts[k]
        theta = self.theta
        pts = self.pts
        ci = self.chosen_idx
        for i in range(len(ci)):
            u = pts[ci[i]]
            for j in range(i + 1, len(ci)):
                v = pts[ci[j]]
                if (
                    angle_equals(u, z, v, theta)
                    or angle_equals(v, u, z, theta)
                    or angle_equals(u, v, z, theta)
                ):
                    return False
        return True

    def _dfs(self, pos: int, chosen: int) -> None:
        if self._tick():
            return
        if pos == len(self.pts):
            count = len(self.chosen_idx)
            if count > self.best_size:
                self.best_size = count
                self.best_mask = chosen
            return
        if self._can_add(pos):
            self.chosen_idx.append(pos)
            self._dfs(pos + 1, chosen | (1 << pos))
            self.chosen_idx.pop()
            if self.stopped:
                return
        self._dfs(pos + 1, chosen)


def solve_oracle(
    dim: DimLike,
    theta: AngleSpec,
    cfg: Optional[SearchConfig] = None,
    should_stop: StopCheck = None,
) -> SolveReport:
    """Exact maximum by exhaustive subset enumeration.

    Deliberately unpruned (every peaceful set is visited), so the grid side
    is capped: the default cap 4 keeps the tree tiny, and raising it to 5
    is the practical limit (2^25 subsets).  The first optimum found in
    include-first order is the lexicographically least one.
    """
    cfg = cfg or SearchConfig(mode="oracle")
    d = as_dim(dim)
    if d.n > cfg.oracle_cap:
        raise ValueError(
            f"oracle refuses n={d.n} (cap {cfg.oracle_cap}); raise oracle_cap "
            "explicitly for n=5, or use branch_and_bound for anything larger"
        )
    t0 = time.perf_counter()
    kernel = _pick_kernel(cfg.kernel, d.n * d.n)
    deadline = _deadline(cfg)
    if kernel == "pure":
        res = _DirectOracle(d, theta, cfg.node_budget, deadline, should_stop).run()
    else:
        res = _run_kernel(
            kernel,
            d.n,
            theta,
            list(range(d.n * d.n)),
            0,
            0,
            0,
            0,
            0,
            prune_bound=False,
            node_budget=cfg.node_budget,
            deadline=deadline,
            should_stop=should_stop,
        )
    return _report(
        d, theta, res.best_mask, res.completed, res.nodes, t0, "oracle", kernel
    )


def enumerate_peaceful(dim: DimLike, theta: AngleSpec, size: int) -> Iterator[Construction]:
    """Every peaceful construction of exactly ``size`` points, canonical order."""
    d = as_dim(dim)
    if d.n > SOLVER_MAX_SIDE:
        raise ValueError(f"enumeration supports n <= {SOLVER_MAX_SIDE}")
    prob = _problem(d.n, theta)
    cells = d.n * d.n
    suffix = [0] * (cells + 1)
    for i in range(cells - 1, -1, -1):
        suffix[i] = suffix[i + 1] | (1 << i)
    pair = prob.pair_masks

    def rec(pos: int, chosen: int, count: int, dead: int) -> Iterator[int]:
        if count == size:
            yield chosen
            return
        live = suffix[pos] & ~dead
        if count + live.bit_count() < size:
            return
        bit = 1 << pos
        if not dead & bit:
            new_dead = dead
            m = chosen
            pm = pair[pos]
            while m:
                low = m & -m
                new_dead |= pm[low.bit_length() - 1]
                m ^= low
            yield from rec(pos + 1, chosen | bit, count + 1, new_dead)
        yield from rec(pos + 1, chosen, count, dead | bit)

    for mask in rec(0, 0, 0, 0):
        yield Construction.from_mask(d, mask)


# ---------------------------------------------------------------------------
# Branch and bound.


def _symmetry_roots(d: GridDim) -> list[int]:
    """Cells that are the canonical (least-index) member of their orbit."""
    roots = []
    for idx in range(d.n * d.n):
        p = d.cell_at(idx)
        if all(d.cell_index(img) >= idx for img in dihedral_images(p, d.n)):
            roots.append(idx)
    return roots


def _incumbent(d: GridDim, theta: AngleSpec) -> tuple[int, int]:
    """A cheap known-peaceful warm start: two-rows when eligible, else one cell."""
    if d.n >= 2:
        tr = two_rows(d)
        if verify(tr, theta, limit=1).peaceful:
            return tr.mask(), len(tr)
    return 1, 1  # the single cell (1, 1)


def solve_exact(
    dim: DimLike,
    theta: AngleSpec,
    cfg: Optional[SearchConfig] = None,
    should_stop: StopCheck = None,
) -> SolveReport:
    """Branch-and-bound over the forbidden-triple hypergraph.

    Branches include/exclude over cells in precomputed descending-degree
    order; prunes when chosen + live cells cannot beat the incumbent.
    Published bound formulas are reported in the bound context but never
    used to prune (auditing them is part of this tool's job).  Root-level
    symmetry breaking restricts the canonically-first chosen cell to orbit
    representatives.  On completion, a first-hit extraction pass replaces
    the witness with the lexicographically least optimum, so reports match
    the oracle exactly.
    """
    cfg = cfg or SearchConfig()
    d = as_dim(dim)
    n = d.n
    if n > SOLVER_MAX_SIDE:
        raise ValueError(f"branch_and_bound supports n <= {SOLVER_MAX_SIDE}")
    t0 = time.perf_counter()
    cells = n * n
    kernel = _pick_kernel(cfg.kernel, cells)
    deadline = _deadline(cfg)
    prob = _problem(n, theta)
    degree_order = sorted(range(cells), key=lambda i: (-prob.degree[i], i))

    best_mask, best_size = _incumbent(d, theta)
    nodes_total = 0
    completed = True

    def remaining_nodes() -> Optional[int]:
        if cfg.node_budget is None:
            return None
        return cfg.node_budget - nodes_total

    if cfg.symmetry_breaking and n >= 2:
        for root in _symmetry_roots(d):
            budget = remaining_nodes()
            if budget is not None and budget <= 0:
                completed = False
                break
            if deadline is not None and time.monotonic() > deadline:
                completed = False
                break
            if should_stop is not None and should_stop():
                completed = False
                break
            order = [i for i in degree_order if i > root]
            res = _run_kernel(
                kernel,
                n,
                theta,
                order,
                1 << root,
                1,
                0,
                best_size,
                best_mask,
                prune_bound=True,
                node_budget=budget,
                deadline=deadline,
                should_stop=should_stop,
            )
            nodes_total += res.nodes
            best_size, best_mask = res.best_size, res.best_mask
            if not res.completed:
                completed = False
                break
    else:
        res = _run_kernel(
            kernel,
            n,
            theta,
            degree_order,
            0,
            0,
            0,
            best_size,
            best_mask,
            prune_bound=True,
            node_budget=cfg.node_budget,
            deadline=deadline,
            should_stop=should_stop,
        )
        nodes_total += res.nodes
        best_size, best_mask = res.best_size, res.best_mask
        completed = res.completed

    if completed:
        # Canonicalize the witness: first optimum in include-first canonical
        # cell order is the lexicographically least one.
        ext = _run_kernel(
            kernel,
            n,
            theta,
            list(range(cells)),
            0,
            0,
            0,
            best_size - 1,
            best_mask,
            prune_bound=True,
            stop_at=best_size,
            deadline=deadline,
            should_stop=should_stop,
        )
        nodes_total += ext.nodes
        if ext.best_size == best_size:
            best_mask = ext.best_mask

    return _report(
        d, theta, best_mask, completed, nodes_total, t0, "branch_and_bound", kernel
    )


# ---------------------------------------------------------------------------
# Randomized greedy with plateau search.


def _dead_for(pair: tuple[tuple[int, ...], ...], chosen: int) -> int:
    dead = 0
    cells = _mask_cells(chosen)
    for i, u in enumerate(cells):
        pu = pair[u]
        for v in cells[i + 1 :]:
            dead |= pu[v]
    return dead


def _blocks_of(pair: tuple[tuple[int, ...], ...], z: int, chosen: int) -> int:
    out = 0
    pz = pair[z]
    m = chosen
    while m:
        low = m & -m
        out |= pz[low.bit_length() - 1]
        m ^= low
    return out


def _greedy_fill(
    pair: tuple[tuple[int, ...], ...],
    full: int,
    chosen: int,
    rng: random.Random,
) -> tuple[int, int]:
    """Extend a peaceful mask to a maximal one; returns (mask, steps)."""
    dead = _dead_for(pair, chosen)
    live = full & ~chosen & ~dead
    steps = 0
    while live:
        best_score = None
        ties: list[tuple[int, int]] = []  # (cell, its new-block mask)
        m = live
        while m:
            low = m & -m
            z = low.bit_length() - 1
            m ^= low
            nb = _blocks_of(pair, z, chosen)
            score = (live & nb & ~low).bit_count()
            if best_score is None or score < best_score:
                best_score = score
                ties = [(z, nb)]
            elif score == best_score:
                ties.append((z, nb))
        z, nb = ties[rng.randrange(len(ties))] if len(ties) > 1 else ties[0]
        chosen |= 1 << z
        dead |= nb
        live &= ~dead & ~(1 << z)
        steps += 1
    return chosen, steps


def _plateau(
    pair: tuple[tuple[int, ...], ...],
    full: int,
    chosen: int,
    rng: random.Random,
    deadline: Optional[float],
    should_stop: StopCheck,
) -> tuple[int, int]:
    """1-out-2-in swaps until no improvement; returns (mask, steps)."""
    steps = 0
    improved = True
    while improved:
        improved = False
        for u in _mask_cells(chosen):
            if deadline is not None and time.monotonic() > deadline:
                return chosen, steps
            if should_stop is not None and should_stop():
                return chosen, steps
            without = chosen & ~(1 << u)
            dead = _dead_for(pair, without)
            live = full & ~without & ~dead & ~(1 << u)
            cand = _mask_cells(live)
            found = None
            for i, v in enumerate(cand):
                dead_v = dead | _blocks_of(pair, v, without)
                if (dead_v >> v) & 1:
                    continue
                for w in cand[i + 1 :]:
                    steps += 1
                    if not (dead_v >> w) & 1:
                        found = (v, w)
                        break
                if found:
                    break
            if found:
                v, w = found
                grown, fill_steps = _greedy_fill(pair, full, without | (1 << v) | (1 << w), rng)
                chosen = grown
                steps += fill_steps
                improved = True
                break
    return chosen, steps


def _mask_lex_key(mask: int) -> tuple[int, ...]:
    return tuple(_mask_cells(mask))


def solve_greedy(
    dim: DimLike,
    theta: AngleSpec,
    cfg: Optional[SearchConfig] = None,
    should_stop: StopCheck = None,
) -> SolveReport:
    """Restarted randomized greedy; never claims optimality.

    Restart 0 extends the two-rows construction whenever that is peaceful
    for the angle, so the result is never worse than 2n in the angles that
    construction covers.  Remaining restarts grow from empty, preferring
    cells that newly block the fewest live cells (ties broken by the seeded
    generator), then climb via 1-out-2-in swaps.
    """
    cfg = cfg or SearchConfig(mode="greedy")
    d = as_dim(dim)
    if d.n > SOLVER_MAX_SIDE:
        raise ValueError(f"greedy supports n <= {SOLVER_MAX_SIDE}")
    t0 = time.perf_counter()
    prob = _problem(d.n, theta)
    pair = prob.pair_masks
    full = (1 << (d.n * d.n)) - 1
    rng = random.Random(cfg.rng_seed)
    deadline = _deadline(cfg)

    starts: list[int] = []
    if d.n >= 2:
        tr = two_rows(d)
        if verify(tr, theta, limit=1).peaceful:
            starts.append(tr.mask())
    starts.extend([0] * max(cfg.restarts, 1))

    best_mask = 0
    best_size = 0
    steps_total = 0
    for start in starts:
        if deadline is not None and time.monotonic() > deadline:
            break
        if should_stop is not None and should_stop():
            break
        mask, steps = _greedy_fill(pair, full, start, rng)
        steps_total += steps
        mask, steps = _plateau(pair, full, mask, rng, deadline, should_stop)
        steps_total += steps
        size = mask.bit_count()
        if size > best_size or (
            size == best_size and _mask_lex_key(mask) < _mask_lex_key(best_mask)
        ):
            best_size, best_mask = size, mask

    return _report(
        d,
        theta,
        best_mask,
        False,
        steps_total,
        t0,
        "greedy",
        "pure",
        seed=cfg.rng_seed,
    )


def solve(
    dim: DimLike,
    theta: AngleSpec,
    cfg: Optional[SearchConfig] = None,
    should_stop: StopCheck = None,
) -> SolveReport:
    """Dispatch on ``cfg.mode``."""
    cfg = cfg or SearchConfig()
    if cfg.mode == "oracle":
        return solve_oracle(dim, theta, cfg, should_stop)
    if cfg.mode == "branch_and_bound":
        return solve_exact(dim, theta, cfg, should_stop)
    if cfg.mode == "greedy":
        return solve_greedy(dim, theta, cfg, should_stop)
    raise ValueError(f"unknown mode {cfg.mode!r}")
