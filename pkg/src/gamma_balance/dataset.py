"""Labeled binary datasets, class bookkeeping and min-max scaling."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .exceptions import DataError, EmptyClass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Dense feature matrix with binary labels in {0, 1}.

    Parameters
    ----------
    features : array-like, shape (n_samples, n_features)
    labels : array-like of {0, 1}, shape (n_samples,)
    positive_class : {0, 1} or None
        Class treated as positive/minority. ``None`` picks the less frequent
        label (label 1 on a tie).
    feature_names : sequence of str, optional
    label_tokens : pair of str, optional
        Original spelling of labels 0 and 1, kept so files round-trip.
    label_name, label_position : optional
        Header and column position of the label in the source file.

    Arrays are copied and made read-only on construction.
    """

    features: np.ndarray
    labels: np.ndarray
    positive_class: Optional[int] = None
    feature_names: Optional[tuple] = None
    label_tokens: Optional[tuple] = None
    label_name: Optional[str] = None
    label_position: Optional[int] = None

    def __post_init__(self):
        X = np.asarray(self.features, dtype=np.float64)
        y = np.asarray(self.labels)
        if X.ndim != 2:
            raise DataError(f"features must be 2-D, got shape {X.shape}")
        if X.shape[1] < 1:
            raise DataError("features must have at least one column")
        if y.ndim != 1 or y.shape[0] != X.shape[0]:
            raise DataError(
                f"labels length {y.shape} does not match {X.shape[0]} feature rows"
            )
        if not np.all(np.isfinite(X)):
            raise DataError("features contain NaN or infinite values")
        if y.size and not np.all(np.isin(y, (0, 1))):
            raise DataError("labels must be 0 or 1")
        y = y.astype(np.int64)
        pos = self.positive_class
        if pos is None:
            n1 = int(y.sum())
            n0 = y.size - n1
            pos = 0 if n0 < n1 else 1
        if pos not in (0, 1):
            raise DataError(f"positive_class must be 0 or 1, got {pos!r}")
        if self.feature_names is not None and len(self.feature_names) != X.shape[1]:
            raise DataError("feature_names length does not match feature count")
        if self.label_tokens is not None and len(self.label_tokens) != 2:
            raise DataError("label_tokens must hold exactly two tokens")
        object.__setattr__(self, "features", _frozen(X))
        object.__setattr__(self, "labels", _frozen(y))
        object.__setattr__(self, "positive_class", int(pos))
        if self.feature_names is not None:
            object.__setattr__(self, "feature_names", tuple(self.feature_names))
        if self.label_tokens is not None:
            object.__setattr__(self, "label_tokens", tuple(self.label_tokens))

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def subset(self, rows) -> "LabeledDataset":
        """Rows ``rows`` (indices or boolean mask), metadata kept."""
        rows = np.asarray(rows)
        return replace(self, features=self.features[rows], labels=self.labels[rows])

    def with_features(self, features) -> "LabeledDataset":
        return replace(self, features=features)


@dataclass(frozen=True)
class ClassSummary:
    majority_count: int
    minority_count: int
    minority_label: int
    majority_label: int

    @property
    def deficit(self) -> int:
        """Number of minority points needed for balance."""
        return self.majority_count - self.minority_count

    @property
    def ratio(self) -> float:
        return self.majority_count / self.minority_count


@dataclass(frozen=True)
class ScalingParams:
    minimum: np.ndarray
    maximum: np.ndarray

    def __post_init__(self):
        lo = _frozen(np.asarray(self.minimum, dtype=np.float64))
        hi = _frozen(np.asarray(self.maximum, dtype=np.float64))
        if lo.shape != hi.shape or lo.ndim != 1:
            raise DataError("scaling bounds must be 1-D vectors of equal length")
        if np.any(lo > hi):
            raise DataError("scaling minimum exceeds maximum")
        object.__setattr__(self, "minimum", lo)
        object.__setattr__(self, "maximum", hi)

    @classmethod
    def identity(cls, n_features: int) -> "ScalingParams":
        return cls(np.zeros(n_features), np.ones(n_features))


def class_counts(ds: LabeledDataset) -> ClassSummary:
    """Tally both classes; the less frequent one is the minority.

    On a tie the dataset's ``positive_class`` is reported as the minority.
    Raises :class:`EmptyClass` when either class has no rows.
    """
    n1 = int(np.count_nonzero(ds.labels == 1))
    n0 = ds.n_samples - n1
    if n0 == 0 or n1 == 0:
        raise EmptyClass(f"both classes need samples, got counts 0:{n0} 1:{n1}")
    if n0 == n1:
        minority = ds.positive_class
    else:
        minority = 0 if n0 < n1 else 1
    counts = (n0, n1)
    return ClassSummary(
        majority_count=counts[1 - minority],
        minority_count=counts[minority],
        minority_label=minority,
        majority_label=1 - minority,
    )


def split_by_class(ds: LabeledDataset, minority_label: Optional[int] = None):
    """Row indices of the minority and majority classes, in original order."""
    if minority_label is None:
        minority_label = class_counts(ds).minority_label
    is_min = ds.labels == minority_label
    return np.flatnonzero(is_min), np.flatnonzero(~is_min)


def fit_min_max(ds) -> ScalingParams:
    X = ds.features if isinstance(ds, LabeledDataset) else np.asarray(ds, dtype=float)
    return ScalingParams(X.min(axis=0), X.max(axis=0))


def _span(params: ScalingParams) -> np.ndarray:
    span = params.maximum - params.minimum
    return np.where(span > 0, span, 1.0)


def scale_features(X, params: ScalingParams) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    span = params.maximum - params.minimum
    out = (X - params.minimum) / _span(params)
    # constant features collapse to zero
    out[:, span == 0] = 0.0
    return out


def unscale_features(Z, params: ScalingParams) -> np.ndarray:
    """Inverse of :func:`scale_features` (constant features return to their value)."""
    Z = np.asarray(Z, dtype=np.float64)
    return Z * (params.maximum - params.minimum) + params.minimum


def apply_min_max(ds: LabeledDataset, params: ScalingParams) -> LabeledDataset:
    """Map every feature to ``(x - min) / (max - min)``. No clipping."""
    return ds.with_features(scale_features(ds.features, params))


def concat(parts: Sequence[LabeledDataset]) -> LabeledDataset:
    first = parts[0]
    return replace(
        first,
        features=np.vstack([p.features for p in parts]),
        labels=np.concatenate([p.labels for p in parts]),
    )
