"""Parameterized complexity: a 3x3x3 Binomial(m, p) factorial and its ANOVA.

Run: python demos/04_factorial_anova.py  (the live run takes ~10 s)
"""

# %% The published cell means, each repeated three times
from partlab import fixtures
from partlab.harness import run_factorial
from partlab.statlab import anova_3factor, anova_cells

published = anova_cells(fixtures.table2_cells(3), names=("n", "m", "p"),
                        levels=((50000, 100000, 150000), (100, 1000, 1500), (0.2, 0.5, 0.8)))
print(published.to_text())
# identical replicates leave no error variance, so every F is infinite

# %% A fresh desk-scale run, response = comparisons
records = run_factorial((20000, 40000, 60000), (100, 1000, 1500), (0.2, 0.5, 0.8), replicates=3)
table = anova_3factor([r.n for r in records], [r.m for r in records], [r.p for r in records],
                      [r.comparisons for r in records], names=("n", "m", "p"))
print(table.to_text())
