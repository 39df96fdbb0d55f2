"""Synthetic benchmark: a noisy majority line flanked by two minority bands.

Majority points scatter around ``y = x``; minority points sit on the parallel
lines ``y = x + offset`` and ``y = x - offset``. Minority neighbours on
opposite flanks are separated by the majority band, which is the situation
where straight-segment interpolation drops synthetic points among majority
points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dataset import LabeledDataset
from .exceptions import ConfigError


@dataclass(frozen=True)
class SynthSpec:
    """Geometry of the synthetic set.

    The defaults keep each minority flank sparse along a long line, so a
    minority point's nearest minority neighbours frequently lie on the
    opposite flank with the majority band in between.
    """

    n_total: int = 5500
    minority_frac: float = 0.10
    length: float = 200.0
    majority_noise: float = 0.1
    offset: float = 0.6
    minority_noise: float = 0.1
    seed: Optional[int] = 0

    def __post_init__(self):
        if self.n_total < 1:
            raise ConfigError("n_total must be positive")
        if not 0.0 < self.minority_frac < 1.0:
            raise ConfigError("minority_frac must lie in (0, 1)")
        if self.n_minority < 2:
            raise ConfigError("spec yields fewer than 2 minority points")
        if self.n_minority >= self.n_total:
            raise ConfigError("spec yields no majority points")
        if self.length <= 0 or self.majority_noise < 0 or self.minority_noise < 0:
            raise ConfigError("length must be positive and noise levels non-negative")
        if not self.offset > 2 * self.majority_noise:
            raise ConfigError("offset must exceed twice the majority noise")

    @property
    def n_minority(self) -> int:
        return int(round(self.n_total * self.minority_frac))

    @property
    def n_majority(self) -> int:
        return self.n_total - self.n_minority


def generate(spec: SynthSpec = SynthSpec()) -> LabeledDataset:
    """Draw the dataset; minority label is 1. Rows come out shuffled."""
    rng = np.random.default_rng(spec.seed)
    n_maj, n_min = spec.n_majority, spec.n_minority

    x = rng.uniform(0.0, spec.length, n_maj)
    majority = np.column_stack([x, x + rng.normal(0.0, spec.majority_noise, n_maj)])

    n_upper = n_min // 2
    side = np.where(np.arange(n_min) < n_upper, 1.0, -1.0)
    x = rng.uniform(0.0, spec.length, n_min)
    jitter = rng.normal(0.0, spec.minority_noise, n_min) / np.sqrt(2.0)
    minority = np.column_stack([x - jitter, x + side * spec.offset + jitter])

    X = np.vstack([majority, minority])
    y = np.concatenate([np.zeros(n_maj, np.int64), np.ones(n_min, np.int64)])
    perm = rng.permutation(X.shape[0])
    return LabeledDataset(X[perm], y[perm], positive_class=1, feature_names=("x", "y"))
