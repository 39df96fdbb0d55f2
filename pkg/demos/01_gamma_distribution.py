"""Tour of the gamma distribution utilities.

The oversampler draws a random scalar t from Gamma(alpha, theta) and shifts
it by the mode, so most draws land near zero (the source point) and a
long right tail reaches towards, and past, the neighbour.

Run:  python demos/01_gamma_distribution.py
"""

import numpy as np

from gamma_balance import gamma_dist as G

for alpha, theta in [(2.0, 0.125), (5.0, 0.125), (3.0, 1.0)]:
    p = G.GammaParams(alpha, theta)
    print(f"Gamma(alpha={alpha}, theta={theta}): mode={p.mode:.4f} mean={p.mean:.4f} "
          f"var={p.variance:.5f} pdf(mode)={G.pdf(p.mode, p):.4f}")

# Default parameters: how often does a draw move forwards (t > mode)?
p = G.GammaParams()
print(f"\nP(t > mode) = {1 - G.cdf(p.mode, p):.4f}")
print(f"median      = {G.quantile(0.5, p):.4f}")
print(f"99th pct    = {G.quantile(0.99, p):.4f}")

# The sampler is seedable and vectorised.
draws = G.sample(p, np.random.default_rng(0), size=100_000)
print(f"\n100k draws: mean={draws.mean():.4f} var={draws.var():.5f}")

# A crude text histogram of the shifted step t - m.
steps = draws - p.mode
counts, edges = np.histogram(steps, bins=12, range=(-0.125, 0.875))
for c, lo in zip(counts, edges):
    print(f"{lo:+.3f} | {'#' * int(60 * c / counts.max())}")
