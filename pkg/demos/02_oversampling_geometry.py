"""Where do synthetic points land?  SMOTE versus the gamma oversampler.

Both methods place a new point on the line through a minority point p and
one of its minority neighbours p'.  SMOTE picks a uniform position on the
segment; the gamma method concentrates points around p and occasionally
steps behind p or beyond p'.

Run:  python demos/02_oversampling_geometry.py
"""

import numpy as np

from gamma_balance import LabeledDataset, SamplerSpec, fit_resample

rng = np.random.default_rng(3)
minority = rng.normal(0.0, 1.0, size=(20, 2))
majority = rng.normal(0.0, 3.0, size=(120, 2))
ds = LabeledDataset(np.vstack([minority, majority]),
                    np.r_[np.ones(20, int), np.zeros(120, int)])

for method in ("smote", "gamma"):
    res = fit_resample(ds, SamplerSpec(method, seed=1))
    step = res.provenance.step
    print(f"{method:>6}: {res.n_synthetic} synthetic points")
    print(f"        step quantiles (5/50/95%): {np.percentile(step, [5, 50, 95]).round(3)}")
    print(f"        behind source: {np.mean(step < 0):.1%}  beyond neighbour: {np.mean(step > 1):.1%}")
    # every synthetic point is recoverable from its provenance
    p = ds.features[res.provenance.source]
    pp = ds.features[res.provenance.neighbor]
    q = res.dataset.features[res.synthetic]
    err = np.abs(q - (p + step[:, None] * (pp - p))).max()
    print(f"        max reconstruction error: {err:.1e}")
