"""Hot collision-counting kernels for the Monte Carlo simulator.

Each kernel exists twice: a numba @njit version and a vectorized
pure-numpy fallback with identical semantics. Selection happens at
import time; set FLRA_NO_NUMBA=1 to force the numpy path (the
benchmark in benchmarks/bench_kernels.py compares both).

Kernels operate on one chunk of time-sorted arrivals; the caller
carries boundary state between chunks.
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("FLRA_NO_NUMBA", "") not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False


def _aloha_chunk_np(starts, ends, max_end_in):
    """Unslotted collision sweep over one chunk of sorted packets.

    ok[i] is True when packet i overlaps no earlier packet (including
    carry-in coverage ``max_end_in``) and no later one. The forward
    check of the last packet is left to the caller, which sees the
    next chunk. Returns (ok, running max end time).
    """
    n = starts.shape[0]
    if n == 0:
        return np.ones(0, dtype=np.bool_), max_end_in
    prior = np.maximum.accumulate(np.concatenate(([max_end_in], ends)))
    ok = starts >= prior[:-1]
    if n > 1:
        ok[:-1] &= starts[1:] >= ends[:-1]
    return ok, float(prior[-1])


def _slotted_chunk_np(slots):
    """Singleton mask over sorted slot indices of one slot-aligned chunk.

    ok[i] is True when arrival i is alone in its slot. Also returns
    the number of distinct occupied slots.
    """
    n = slots.shape[0]
    if n == 0:
        return np.ones(0, dtype=np.bool_), 0
    boundary = slots[1:] != slots[:-1]
    first = np.concatenate(([True], boundary))
    last = np.concatenate((boundary, [True]))
    return first & last, int(first.sum())


if USE_NUMBA:

    @njit(cache=True)
    def _aloha_chunk_nb(starts, ends, max_end_in):  # pragma: no cover - jitted
        n = starts.shape[0]
        ok = np.ones(n, dtype=np.bool_)
        max_end = max_end_in
        for i in range(n):
            if starts[i] < max_end:
                ok[i] = False
            if i + 1 < n and starts[i + 1] < ends[i]:
                ok[i] = False
            if ends[i] > max_end:
                max_end = ends[i]
        return ok, max_end

    @njit(cache=True)
    def _slotted_chunk_nb(slots):  # pragma: no cover - jitted
        n = slots.shape[0]
        ok = np.ones(n, dtype=np.bool_)
        occupied = 0
        i = 0
        while i < n:
            j = i + 1
            while j < n and slots[j] == slots[i]:
                j += 1
            occupied += 1
            if j - i > 1:
                for k in range(i, j):
                    ok[k] = False
            i = j
        return ok, occupied

    def aloha_chunk(starts, ends, max_end_in):
        ok, max_end = _aloha_chunk_nb(starts, ends, float(max_end_in))
        return ok, float(max_end)

    def slotted_chunk(slots):
        ok, occupied = _slotted_chunk_nb(slots)
        return ok, int(occupied)

else:
    aloha_chunk = _aloha_chunk_np
    slotted_chunk = _slotted_chunk_np
