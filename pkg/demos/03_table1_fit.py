"""Average-case growth: the published Table 1 times and a live Cauchy grid.

Run: python demos/03_table1_fit.py  (the live grid takes ~10 s)
"""

# %% Published mean times regressed on n*log2(n)
import numpy as np

from partlab import fixtures
from partlab.distributions import CAUCHY
from partlab.harness import GridPlan, run_grid
from partlab.statlab import fit_nlogn

n, t = fixtures.table1()
fit = fit_nlogn(n, t)
b0, b1 = fit.coefficients
print(f"published: time = {b0:.4g} + {b1:.4g} n log2 n   R-sq {fit.r_squared:.4f}")

# %% The same model on live runs; counts are machine-independent, times are not
plan = GridPlan("partition", CAUCHY, tuple(range(10_000, 100_001, 10_000)), replicates=20)
records, summary = run_grid(plan)
ns = np.array([row.n for row in summary])
for label, values in (("comparisons", [r.mean_comparisons for r in summary]),
                      ("elapsed_s", [r.mean_elapsed_s for r in summary])):
    live = fit_nlogn(ns, values)
    print(f"live {label:<12} slope {live.coefficients[1]:.4g}  R-sq {live.r_squared:.4f}")
