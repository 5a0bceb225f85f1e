"""Seeded input generators: uniform bits, Box-Muller normals, Cauchy, Binomial.

Run: python demos/02_generators.py
"""

# %% Reproducible streams
import math

import numpy as np

from partlab.distributions import DistributionSpec, RngState, box_muller, generate_array

print(RngState(42).uniforms(3), "==", RngState(42).uniforms(3))

# %% Box-Muller maps (u1, u2) to a pair of normals
print(box_muller(math.exp(-0.5), 0.0))   # (1, 0)
print(box_muller(math.exp(-2.0), 0.5))   # (-2, ~0)

# %% Sample moments
z = RngState(1).normals(100_000)
print(f"normal:   mean {z.mean():+.4f}  var {z.var():.4f}")

c = RngState(8).cauchys(100_000)
print(f"cauchy:   median {np.median(c):+.4f}  P(|X|<=1) {np.mean(np.abs(c) <= 1):.4f}  "
      f"sample mean {c.mean():+.2f} (unstable: no expectation exists)")

k = RngState(1000).binomials(100_000, 1000, 0.3)
print(f"binomial: mean {k.mean():.3f} (300)  var {k.var(ddof=1):.2f} (210)")

# %% Arrays for the harness
spec = DistributionSpec.binomial(100, 0.5)
keys = generate_array(spec, 10, RngState(7))
print(spec, keys.dtype, keys)
