"""Pure-Python search kernels over arbitrary-size integer bitsets.

This is the reference implementation of the search core; the compiled
extension in ``_speedups.pyx`` mirrors it operation for operation (same
branch order, same node accounting) for grids of up to 64 cells.  Masks are
plain Python ints indexed by canonical cell index, so any grid size works
here.

One kernel drives three modes:

* exhaustive enumeration (no bound pruning) -- the oracle;
* branch-and-bound (prune when chosen + live cells cannot beat the best);
* first-hit extraction (branch-and-bound that stops as soon as a target
  size is reached) -- used to recover the lexicographically least optimum.

A cell is *dead* once it completes a forbidden triple with two chosen
points (or was excluded by branching); include-first depth-first search
over a fixed cell order then visits peaceful sets in lexicographic order,
so the first optimum found is the canonical one.
"""

from __future__ import annotations

import sys
import time
from typing import Callable, NamedTuple, Optional, Sequence


class KernelResult(NamedTuple):
    best_size: int
    best_mask: int
    nodes: int
    completed: bool


class Search:
    """One configured search; call :meth:`run` once."""

    def __init__(
        self,
        order: Sequence[int],
        pair_masks: Sequence[Sequence[int]],
        prune_bound: bool,
        stop_at: Optional[int] = None,
        node_budget: Optional[int] = None,
        deadline: Optional[float] = None,
        should_stop: Optional[Callable[[], bool]] = None,
    ):
        self.order = list(order)
        self.pair_masks = pair_masks
        self.prune_bound = prune_bound
        self.stop_at = stop_at
        self.node_budget = node_budget
        self.deadline = deadline
        self.should_stop = should_stop
        suffix = [0] * (len(self.order) + 1)
        for i in range(len(self.order) - 1, -1, -1):
            suffix[i] = suffix[i + 1] | (1 << self.order[i])
        self.suffix = suffix
        self.nodes = 0
        self.stopped = False
        self.best_size = 0
        self.best_mask = 0

    def run(self, chosen: int, chosen_count: int, dead: int, best_size: int, best_mask: int) -> KernelResult:
        self.best_size = best_size
        self.best_mask = best_mask
        need = len(self.order) + 64
        if sys.getrecursionlimit() < need:
            sys.setrecursionlimit(need + 1024)
        self._dfs(0, chosen, chosen_count, dead)
        return KernelResult(self.best_size, self.best_mask, self.nodes, not self.stopped)

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

    def _dfs(self, pos: int, chosen: int, count: int, dead: int) -> None:
        if self._tick():
            return
        if self.prune_bound:
            live = self.suffix[pos] & ~dead
            if count + live.bit_count() <= self.best_size:
                return
        if pos == len(self.order):
            if count > self.best_size:
                self.best_size = count
                self.best_mask = chosen
                if self.stop_at is not None and count >= self.stop_at:
                    self.stopped = True
            return
        cell = self.order[pos]
        bit = 1 << cell
        if not dead & bit:
            new_dead = dead
            m = chosen
            pm = self.pair_masks[cell]
            while m:
                low = m & -m
                new_dead |= pm[low.bit_length() - 1]
                m ^= low
            self._dfs(pos + 1, chosen | bit, count + 1, new_dead)
            if self.stopped:
                return
        self._dfs(pos + 1, chosen, count, dead | bit)


def run_search(
    order: Sequence[int],
    pair_masks: Sequence[Sequence[int]],
    chosen: int,
    chosen_count: int,
    dead: int,
    best_size: int,
    best_mask: int,
    prune_bound: bool,
    stop_at: Optional[int] = None,
    node_budget: Optional[int] = None,
    deadline: Optional[float] = None,
    should_stop: Optional[Callable[[], bool]] = None,
) -> KernelResult:
    s = Search(order, pair_masks, prune_bound, stop_at, node_budget, deadline, should_stop)
    return s.run(chosen, chosen_count, dead, best_size, best_mask)
