# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled bitset search kernel for grids of at most 64 cells.

Operation-for-operation twin of :mod:`thetagrid._search_py` (same branch
order, same node accounting, same results); see that module for the
algorithm description.  Masks live in single machine words here, which is
what makes the exhaustive and branch-and-bound searches fast.
"""

from libc.stdint cimport int32_t, int64_t, uint64_t

import time as _time

from ._search_py import KernelResult

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    static inline int tg_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int tg_ctz(unsigned long long x) { return __builtin_ctzll(x); }
    #else
    static inline int tg_popcount(unsigned long long x) {
        int c = 0; while (x) { x &= x - 1; ++c; } return c;
    }
    static inline int tg_ctz(unsigned long long x) {
        int c = 0; while (!(x & 1ULL)) { x >>= 1; ++c; } return c;
    }
    #endif
    """
    int tg_popcount(unsigned long long x) nogil
    int tg_ctz(unsigned long long x) nogil


cdef class _Kernel:
    cdef const uint64_t[::1] pair
    cdef const int32_t[::1] order
    cdef uint64_t suffix[65]
    cdef int n_order
    cdef int n_cells
    cdef bint prune_bound
    cdef int64_t stop_at        # -1: none
    cdef int64_t node_budget    # -1: none
    cdef double deadline        # -1: none (time.monotonic scale)
    cdef object should_stop
    cdef bint stopped
    cdef int64_t nodes
    cdef int best_size
    cdef uint64_t best_mask

    cdef bint _tick(self):
        self.nodes += 1
        if self.node_budget >= 0 and self.nodes > self.node_budget:
            self.stopped = True
        elif (self.nodes & 255) == 0:
            if self.deadline >= 0.0 and _time.monotonic() > self.deadline:
                self.stopped = True
            elif self.should_stop is not None and self.should_stop():
                self.stopped = True
        return self.stopped

    cdef void _dfs(self, int pos, uint64_t chosen, int count, uint64_t dead):
        cdef uint64_t live, bit, new_dead, m
        cdef int cell
        if self._tick():
            return
        if self.prune_bound:
            live = self.suffix[pos] & ~dead
            if count + tg_popcount(live) <= self.best_size:
                return
        if pos == self.n_order:
            if count > self.best_size:
                self.best_size = count
                self.best_mask = chosen
                if self.stop_at >= 0 and count >= self.stop_at:
                    self.stopped = True
            return
        cell = self.order[pos]
        bit = (<uint64_t>1) << cell
        if not (dead & bit):
            new_dead = dead
            m = chosen
            while m:
                new_dead |= self.pair[cell * self.n_cells + tg_ctz(m)]
                m &= m - 1
            self._dfs(pos + 1, chosen | bit, count + 1, new_dead)
            if self.stopped:
                return
        self._dfs(pos + 1, chosen, count, dead | bit)


def run_search(const int32_t[::1] order, const uint64_t[::1] pair, int n_cells,
               unsigned long long chosen, int chosen_count, unsigned long long dead,
               int best_size, unsigned long long best_mask, bint prune_bound,
               stop_at=None, node_budget=None, deadline=None, should_stop=None):
    """Drop-in twin of ``_search_py.run_search`` for up to 64 cells."""
    if n_cells > 64:
        raise ValueError("compiled kernel handles at most 64 cells")
    cdef _Kernel k = _Kernel()
    k.pair = pair
    k.order = order
    k.n_order = order.shape[0]
    k.n_cells = n_cells
    k.prune_bound = prune_bound
    k.stop_at = -1 if stop_at is None else <int64_t>stop_at
    k.node_budget = -1 if node_budget is None else <int64_t>node_budget
    k.deadline = -1.0 if deadline is None else <double>deadline
    k.should_stop = should_stop
    k.stopped = False
    k.nodes = 0
    k.best_size = best_size
    k.best_mask = best_mask

    cdef int i
    cdef uint64_t s = 0
    k.suffix[k.n_order] = 0
    for i in range(k.n_order - 1, -1, -1):
        s |= (<uint64_t>1) << k.order[i]
        k.suffix[i] = s

    k._dfs(0, chosen, chosen_count, dead)
    return KernelResult(k.best_size, int(k.best_mask), int(k.nodes), not k.stopped)
