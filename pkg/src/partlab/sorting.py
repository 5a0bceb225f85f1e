"""Instrumented Partition Sort with Quick Sort and Heap Sort baselines.

Partition Sort splits ``a[lo:hi]`` into blocks of ``floor(n/2)`` and
``ceil(n/2)`` keys such that every key of the first block is <= every key of
the second, then recurses on both blocks. The split is realized with two
heaps: a max-heap over the first block and a min-heap over the second. While
the max-heap root exceeds the min-heap root the two roots are exchanged and
both heaps repaired. Each exchange moves one out-of-place key across the
boundary, so at most ``floor(n/2)`` exchanges occur and the partition costs
O(n log n) in the worst case and O(n) in the best.

Counting conventions, shared by all three sorts:

* comparisons -- every key-to-key comparison;
* swaps -- every exchange of two array slots (self-exchanges are skipped);
* moves -- every single-slot write made by hole-style sifting.

All kernels are compiled with numba and specialize on int64 and float64 keys.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from numba import njit

COMP, SWAP, MOVE = 0, 1, 2


@dataclass
class OpCounter:
    """Running tally of comparisons, swaps and moves."""

    comparisons: int = 0
    swaps: int = 0
    moves: int = 0

    def weighted_total(self, weights: tuple[float, float, float] = (1.0, 1.0, 1.0)) -> float:
        """Total cost with per-operation weights (comparison, swap, move)."""
        wc, ws, wm = weights
        return wc * self.comparisons + ws * self.swaps + wm * self.moves

    def add(self, counts: np.ndarray) -> None:
        self.comparisons += int(counts[COMP])
        self.swaps += int(counts[SWAP])
        self.moves += int(counts[MOVE])

    def as_tuple(self) -> tuple[int, int, int]:
        return self.comparisons, self.swaps, self.moves


@dataclass
class SortOutcome:
    keys: np.ndarray
    counter: OpCounter = field(default_factory=OpCounter)
    elapsed: float = 0.0


# --------------------------------------------------------------------------
# heap primitives; ``base`` offsets the heap inside the array


@njit(cache=True)
def _sift_down_max(a, base, size, i, c):
    item = a[base + i]
    start = i
    while True:
        child = 2 * i + 1
        if child >= size:
            break
        if child + 1 < size:
            c[COMP] += 1
            if a[base + child + 1] > a[base + child]:
                child += 1
        c[COMP] += 1
        if a[base + child] > item:
            a[base + i] = a[base + child]
            c[MOVE] += 1
            i = child
        else:
            break
    if i != start:
        a[base + i] = item
        c[MOVE] += 1


@njit(cache=True)
def _sift_down_max_rev(a, top, size, i, c):
    # max-heap laid out leftwards: heap slot j lives at a[top - j]
    item = a[top - i]
    start = i
    while True:
        child = 2 * i + 1
        if child >= size:
            break
        if child + 1 < size:
            c[COMP] += 1
            if a[top - child - 1] > a[top - child]:
                child += 1
        c[COMP] += 1
        if a[top - child] > item:
            a[top - i] = a[top - child]
            c[MOVE] += 1
            i = child
        else:
            break
    if i != start:
        a[top - i] = item
        c[MOVE] += 1


@njit(cache=True)
def _sift_down_min(a, base, size, i, c):
    item = a[base + i]
    start = i
    while True:
        child = 2 * i + 1
        if child >= size:
            break
        if child + 1 < size:
            c[COMP] += 1
            if a[base + child + 1] < a[base + child]:
                child += 1
        c[COMP] += 1
        if a[base + child] < item:
            a[base + i] = a[base + child]
            c[MOVE] += 1
            i = child
        else:
            break
    if i != start:
        a[base + i] = item
        c[MOVE] += 1


@njit(cache=True)
def _partition(a, lo, hi, c):
    n = hi - lo
    k = n // 2
    if k == 0:
        return 0
    # both roots sit at the boundary, a[left] and a[right]
    left = lo + k - 1
    right = lo + k
    rsize = n - k
    for i in range(k // 2 - 1, -1, -1):
        _sift_down_max_rev(a, left, k, i, c)
    for i in range(rsize // 2 - 1, -1, -1):
        _sift_down_min(a, right, rsize, i, c)
    while True:
        c[COMP] += 1
        if a[left] <= a[right]:
            break
        tmp = a[left]
        a[left] = a[right]
        a[right] = tmp
        c[SWAP] += 1
        _sift_down_max_rev(a, left, k, 0, c)
        _sift_down_min(a, right, rsize, 0, c)
    return k


@njit(cache=True)
def _partition_sort(a, c):
    n = a.shape[0]
    if n < 2:
        return
    # depth is ceil(log2 n) <= 64 and each level leaves one pending block
    stack = np.empty((130, 2), dtype=np.int64)
    top = 0
    stack[0, 0] = 0
    stack[0, 1] = n
    top = 1
    while top > 0:
        top -= 1
        lo = stack[top, 0]
        hi = stack[top, 1]
        if hi - lo < 2:
            continue
        mid = lo + _partition(a, lo, hi, c)
        stack[top, 0] = mid
        stack[top, 1] = hi
        stack[top + 1, 0] = lo
        stack[top + 1, 1] = mid
        top += 2


@njit(cache=True)
def _quick_sort(a, c):
    n = a.shape[0]
    if n < 2:
        return
    stack = np.empty((n // 2 + 1, 2), dtype=np.int64)
    stack[0, 0] = 0
    stack[0, 1] = n
    top = 1
    while top > 0:
        top -= 1
        lo = stack[top, 0]
        hi = stack[top, 1]
        if hi - lo < 2:
            continue
        # Lomuto scheme, last element as pivot
        pivot = a[hi - 1]
        i = lo
        for j in range(lo, hi - 1):
            c[COMP] += 1
            if a[j] <= pivot:
                if i != j:
                    tmp = a[i]
                    a[i] = a[j]
                    a[j] = tmp
                    c[SWAP] += 1
                i += 1
        if i != hi - 1:
            a[hi - 1] = a[i]
            a[i] = pivot
            c[SWAP] += 1
        # only blocks of 2+ keys are pushed; they are disjoint, so top <= n/2
        if i - lo > 1:
            stack[top, 0] = lo
            stack[top, 1] = i
            top += 1
        if hi - i - 1 > 1:
            stack[top, 0] = i + 1
            stack[top, 1] = hi
            top += 1


@njit(cache=True)
def _heap_sort(a, c):
    n = a.shape[0]
    for i in range(n // 2 - 1, -1, -1):
        _sift_down_max(a, 0, n, i, c)
    for end in range(n - 1, 0, -1):
        tmp = a[0]
        a[0] = a[end]
        a[end] = tmp
        c[SWAP] += 1
        _sift_down_max(a, 0, end, 0, c)


# --------------------------------------------------------------------------
# public API


def as_keys(a) -> np.ndarray:
    """Copy ``a`` into a contiguous int64 or float64 key array."""
    arr = np.array(a, copy=True)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D sequence of keys, got shape {arr.shape}")
    if arr.size == 0:
        return arr.astype(np.int64)
    if arr.dtype.kind in "iub":
        return arr.astype(np.int64)
    if arr.dtype.kind == "f":
        arr = arr.astype(np.float64)
        if np.isnan(arr).any():
            raise ValueError("NaN keys have no total order")
        return arr
    raise TypeError(f"keys must be integer or real, got dtype {arr.dtype}")


def partition(a: np.ndarray, counter: OpCounter | None = None) -> int:
    """Split ``a`` in place around index ``len(a) // 2``.

    Afterwards ``max(a[:k]) <= min(a[k:])`` with ``k`` the returned index.
    ``a`` must be a non-empty int64 or float64 array.
    """
    if a.shape[0] == 0:
        raise ValueError("partition needs at least one key")
    counts = np.zeros(3, dtype=np.int64)
    k = _partition(a, 0, a.shape[0], counts)
    if counter is not None:
        counter.add(counts)
    return int(k)


def _run(kernel, a, counter: OpCounter | None) -> SortOutcome:
    keys = as_keys(a)
    counter = OpCounter() if counter is None else counter
    counts = np.zeros(3, dtype=np.int64)
    t0 = time.perf_counter()
    kernel(keys, counts)
    elapsed = time.perf_counter() - t0
    counter.add(counts)
    return SortOutcome(keys, counter, elapsed)


def partition_sort(a, counter: OpCounter | None = None) -> SortOutcome:
    """Sort a copy of ``a`` with Partition Sort; only the sort is timed."""
    return _run(_partition_sort, a, counter)


def quick_sort(a, counter: OpCounter | None = None) -> SortOutcome:
    """Lomuto Quick Sort with the last key as pivot; quadratic on runs of equal keys."""
    return _run(_quick_sort, a, counter)


def heap_sort(a, counter: OpCounter | None = None) -> SortOutcome:
    return _run(_heap_sort, a, counter)


ALGORITHMS = {
    "partition": partition_sort,
    "quick": quick_sort,
    "heap": heap_sort,
}


def get_algorithm(name: str):
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; expected one of {sorted(ALGORITHMS)}") from None
