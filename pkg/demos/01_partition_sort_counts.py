"""Partition Sort, step by step, with its operation counts.

Run: python demos/01_partition_sort_counts.py
"""

# %% One partition step on a small array
import numpy as np

from partlab.distributions import CAUCHY, RngState, generate_array
from partlab.sorting import OpCounter, heap_sort, partition, partition_sort, quick_sort

a = np.array([3, 1, 4, 1, 5, 9, 2, 6, 5, 3])
c = OpCounter()
k = partition(a, c)
print("after partition:", a.tolist(), "split at", k)
print("left max", a[:k].max(), "<= right min", a[k:].min())
print("counts (comparisons, swaps, moves):", c.as_tuple())

# %% Full sorts on the same Cauchy input
keys = generate_array(CAUCHY, 20_000, RngState(1))
for sort in (partition_sort, quick_sort, heap_sort):
    out = sort(keys)  # the first call per kernel includes JIT compilation
    out = sort(keys)
    assert np.array_equal(out.keys, np.sort(keys))
    print(f"{sort.__name__:<15} {out.counter.as_tuple()}  {out.elapsed * 1e3:.2f} ms")

# %% Best and worst patterns
# Sorted input is only verified at every level: n*log2(n) - n + 1 comparisons
# and no data movement. Reversed input is the costly pattern.
print(f"{'n':>6} {'sorted':>9} {'n lg n - n + 1':>15} {'reversed':>10} {'/ n lg^2 n':>11}")
for e in range(6, 15, 2):
    n = 2 ** e
    best = partition_sort(np.arange(n)).counter.comparisons
    worst = partition_sort(np.arange(n)[::-1].copy()).counter.comparisons
    print(f"{n:>6} {best:>9} {n * e - n + 1:>15} {worst:>10} {worst / (n * e * e):>11.4f}")
