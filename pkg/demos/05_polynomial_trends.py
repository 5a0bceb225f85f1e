"""Trends in m and p: polynomial fits and degree selection on Tables 4 and 5.

Run: python demos/05_polynomial_trends.py
"""

# %% Time against m: increasing, flattening
from partlab import fixtures
from partlab.statlab import fit_poly, select_degree

m, t = fixtures.table4()
print(select_degree(m, t, 4).report())
cubic = fit_poly(m, t, 3)
print("cubic slope at m = 100, 800, 1500:", cubic.derivative([100, 800, 1500]))

# %% Time against p: a concave bump centred near p = 0.5
p, t = fixtures.table5()
quad = fit_poly(p, t, 2)
c0, c1, c2 = quad.coefficients
print(f"time = {c0:.4f} + {c1:.4f} p {c2:+.4f} p^2, vertex at p = {-c1 / (2 * c2):.3f}")
print(select_degree(p, t, 4).report())
