"""Resampling methods sharing one ``fit_resample(ds, spec)`` interface.

``gamma`` is the gamma-distribution oversampler: a new minority point is
placed on the line through a minority point ``p`` and one of its minority
neighbours ``p'``::

    q = p + (t - m) * (p' - p),   t ~ Gamma(alpha, theta),  m = theta * (alpha - 1)

Because ``t`` concentrates around its mode ``m``, new points cluster at
``p``; the right skew of the gamma pushes most of them toward ``p'`` while
draws below the mode land behind ``p``. ``smote``, ``adasyn``, ``ros`` and
``rus`` are the usual baselines; ``none`` returns the input unchanged.

All oversamplers keep the input rows untouched and append the synthetic rows
after them, so ``result.dataset.features[:n_input]`` equals the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import gamma_dist
from .dataset import (
    LabeledDataset,
    apply_min_max,
    class_counts,
    fit_min_max,
    split_by_class,
)
from .exceptions import ConfigError, TooFewMinority
from .neighbors import NeighborIndex

METHODS = ("none", "gamma", "smote", "adasyn", "ros", "rus")


@dataclass(frozen=True)
class SamplerSpec:
    """Which resampler to run and with which hyperparameters.

    Defaults follow the reference setup: three nearest neighbours and a base
    Gamma(alpha=2, theta=1/8) whose mode is 0.125.
    """

    method: str = "gamma"
    alpha: float = 2.0
    theta: float = 0.125
    k_neighbors: int = 3
    seed: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}; choose from {METHODS}")
        if int(self.k_neighbors) != self.k_neighbors or self.k_neighbors < 1:
            raise ConfigError(f"k_neighbors must be a positive integer, got {self.k_neighbors}")
        if not self.theta > 0:
            raise ConfigError(f"theta must be positive, got {self.theta}")
        if self.method == "gamma" and not self.alpha >= 1:
            raise ConfigError(f"gamma sampler needs alpha >= 1, got {self.alpha}")

    @property
    def gamma_params(self) -> gamma_dist.GammaParams:
        return gamma_dist.GammaParams(self.alpha, self.theta)

    def hyperparameters(self) -> dict:
        out = {"method": self.method, "seed": self.seed}
        if self.method in ("gamma", "smote", "adasyn"):
            out["k_neighbors"] = self.k_neighbors
        if self.method == "gamma":
            out.update(alpha=self.alpha, theta=self.theta)
        return out


@dataclass(frozen=True)
class Provenance:
    """How each synthetic row was built, aligned with the synthetic rows.

    ``source`` and ``neighbor`` index rows of the *input* dataset; ``draw``
    is the random scalar that was sampled (gamma ``t``, SMOTE/ADASYN gap,
    NaN for ROS) and ``step`` the resulting interpolation factor ``s`` in
    ``q = p + s * (p' - p)``.
    """

    source: np.ndarray
    neighbor: np.ndarray
    draw: np.ndarray
    step: np.ndarray

    def __len__(self):
        return self.source.shape[0]

    @classmethod
    def empty(cls):
        return cls(
            np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0), np.empty(0)
        )


@dataclass(frozen=True, eq=False)
class ResampleResult:
    dataset: LabeledDataset
    synthetic: np.ndarray
    provenance: Provenance
    origin: np.ndarray = field(repr=False)
    """Input row copied into each output row; -1 for synthetic rows."""

    @property
    def n_synthetic(self) -> int:
        return int(np.count_nonzero(self.synthetic))


def synth_point(p, p_prime, t: float, m: float):
    """Point ``p + (t - m) * (p_prime - p)``."""
    p = np.asarray(p, dtype=np.float64)
    return p + (t - m) * (np.asarray(p_prime, dtype=np.float64) - p)


def _interpolate(X, source, neighbor, step):
    p = X[source]
    return p + step[:, None] * (X[neighbor] - p)


def _oversample(ds, minority_label, prov: Provenance):
    n, n_new = ds.n_samples, len(prov)
    new_X = _interpolate(ds.features, prov.source, prov.neighbor, prov.step)
    out = replace(
        ds,
        features=np.vstack([ds.features, new_X]) if n_new else ds.features,
        labels=np.concatenate([ds.labels, np.full(n_new, minority_label, np.int64)]),
    )
    synthetic = np.zeros(n + n_new, dtype=bool)
    synthetic[n:] = True
    origin = np.concatenate([np.arange(n), np.full(n_new, -1)])
    return ResampleResult(out, synthetic, prov, origin)


def _identity(ds):
    n = ds.n_samples
    return ResampleResult(ds, np.zeros(n, dtype=bool), Provenance.empty(), np.arange(n))


def _minority_neighbors(ds, minority_rows, k):
    if minority_rows.size < 2:
        raise TooFewMinority(
            f"need at least 2 minority samples to interpolate, got {minority_rows.size}"
        )
    ix = NeighborIndex(ds.features[minority_rows])
    return ix.kneighbors_of_rows(k)


def _pick_neighbors(rng, table, local_sources, minority_rows):
    kk = table.shape[1]
    choice = rng.integers(0, kk, size=local_sources.size)
    return minority_rows[table[local_sources, choice]]


def _gamma_provenance(ds, spec, summary, rng):
    mino, _ = split_by_class(ds, summary.minority_label)
    table = _minority_neighbors(ds, mino, spec.k_neighbors)
    n_new = summary.deficit
    local = rng.integers(0, mino.size, size=n_new)
    neighbor = _pick_neighbors(rng, table, local, mino)
    gp = spec.gamma_params
    t = gamma_dist.sample(gp, rng, n_new)
    return Provenance(mino[local], neighbor, t, t - gamma_dist.mode(gp))


def _smote_provenance(ds, spec, summary, rng):
    mino, _ = split_by_class(ds, summary.minority_label)
    table = _minority_neighbors(ds, mino, spec.k_neighbors)
    n_new = summary.deficit
    local = rng.integers(0, mino.size, size=n_new)
    neighbor = _pick_neighbors(rng, table, local, mino)
    u = rng.random(n_new)
    return Provenance(mino[local], neighbor, u, u.copy())


def largest_remainder(weights, total: int) -> np.ndarray:
    """Integer allocation proportional to ``weights`` summing exactly to ``total``.

    Leftover units go to the largest fractional parts, lower index first on ties.
    """
    w = np.asarray(weights, dtype=np.float64)
    share = w / w.sum() * total
    alloc = np.floor(share).astype(np.int64)
    left = total - int(alloc.sum())
    if left > 0:
        frac = share - alloc
        order = np.argsort(-frac, kind="stable")
        alloc[order[:left]] += 1
    return alloc


def border_ratios(ds, minority_rows, k, minority_label):
    """Fraction of majority rows among each minority row's k nearest (full data)."""
    ix = NeighborIndex(ds.features)
    nbrs = ix.kneighbors_of_rows(k, minority_rows)
    return np.mean(ds.labels[nbrs] != minority_label, axis=1)


def _adasyn_provenance(ds, spec, summary, rng):
    mino, _ = split_by_class(ds, summary.minority_label)
    table = _minority_neighbors(ds, mino, spec.k_neighbors)
    r = border_ratios(ds, mino, spec.k_neighbors, summary.minority_label)
    if r.sum() == 0:
        r = np.ones_like(r)
    counts = largest_remainder(r, summary.deficit)
    local = np.repeat(np.arange(mino.size), counts)
    neighbor = _pick_neighbors(rng, table, local, mino)
    u = rng.random(local.size)
    return Provenance(mino[local], neighbor, u, u.copy())


def _ros_provenance(ds, spec, summary, rng):
    mino, _ = split_by_class(ds, summary.minority_label)
    src = mino[rng.integers(0, mino.size, size=summary.deficit)]
    return Provenance(src, src.copy(), np.full(src.size, np.nan), np.zeros(src.size))


_PROVENANCE = {
    "gamma": _gamma_provenance,
    "smote": _smote_provenance,
    "adasyn": _adasyn_provenance,
    "ros": _ros_provenance,
}


def _rus(ds, summary, rng):
    mino, majo = split_by_class(ds, summary.minority_label)
    keep = np.sort(rng.choice(majo, size=mino.size, replace=False))
    rows = np.sort(np.concatenate([mino, keep]))
    return ResampleResult(
        ds.subset(rows), np.zeros(rows.size, dtype=bool), Provenance.empty(), rows
    )


def fit_resample(ds: LabeledDataset, spec: SamplerSpec) -> ResampleResult:
    """Balance ``ds`` with the method named in ``spec``."""
    if spec.method == "none":
        return _identity(ds)
    summary = class_counts(ds)
    if summary.deficit == 0:
        return _identity(ds)
    rng = np.random.default_rng(spec.seed)
    if spec.method == "rus":
        return _rus(ds, summary, rng)
    prov = _PROVENANCE[spec.method](ds, spec, summary, rng)
    return _oversample(ds, summary.minority_label, prov)


def gamma_fit_resample(ds, spec=None):
    return fit_resample(ds, spec or SamplerSpec("gamma"))


def smote_fit_resample(ds, spec=None):
    spec = spec or SamplerSpec("smote")
    return fit_resample(ds, replace(spec, method="smote"))


def adasyn_fit_resample(ds, spec=None):
    spec = spec or SamplerSpec("adasyn")
    return fit_resample(ds, replace(spec, method="adasyn"))


def ros_fit_resample(ds, spec=None):
    spec = spec or SamplerSpec("ros")
    return fit_resample(ds, replace(spec, method="ros"))


def rus_fit_resample(ds, spec=None):
    spec = spec or SamplerSpec("rus")
    return fit_resample(ds, replace(spec, method="rus"))


def balance_dataset(ds: LabeledDataset, spec: SamplerSpec, scale: bool = True) -> ResampleResult:
    """Resample with neighbour search in min-max scaled space, output in original units.

    Input rows are returned bit-for-bit; synthetic rows are rebuilt from the
    original coordinates using the recorded provenance, which is exact since
    min-max scaling is affine per feature.
    """
    if not scale:
        return fit_resample(ds, spec)
    scaled = fit_resample(apply_min_max(ds, fit_min_max(ds)), spec)
    if spec.method == "rus" or scaled.n_synthetic == 0:
        rows = scaled.origin
        return replace(scaled, dataset=ds.subset(rows))
    minority = int(scaled.dataset.labels[-1])
    return _oversample(ds, minority, scaled.provenance)
