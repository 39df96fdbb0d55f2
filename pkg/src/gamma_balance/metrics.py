"""Binary classification metrics.

Degenerate ratios (0/0) evaluate to 0, so folds where a classifier never
predicts the positive class report precision = recall = F1 = 0 rather than
NaN.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import rankdata

from .exceptions import UndefinedMetric


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @classmethod
    def from_predictions(cls, y_true, y_pred) -> "ConfusionCounts":
        t = np.asarray(y_true).astype(bool)
        p = np.asarray(y_pred).astype(bool)
        return cls(
            tp=int(np.count_nonzero(t & p)),
            fp=int(np.count_nonzero(~t & p)),
            tn=int(np.count_nonzero(~t & ~p)),
            fn=int(np.count_nonzero(t & ~p)),
        )


METRIC_NAMES = ("precision", "recall", "f1", "roc_auc", "avg_precision")


@dataclass(frozen=True)
class MetricBundle:
    precision: float
    recall: float
    f1: float
    roc_auc: float
    avg_precision: float

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def mean(cls, bundles) -> "MetricBundle":
        bundles = list(bundles)
        return cls(**{
            name: float(np.mean([getattr(b, name) for b in bundles]))
            for name in METRIC_NAMES
        })


def _ratio(num, den) -> float:
    return num / den if den else 0.0


def prf(c: ConfusionCounts):
    """Precision, recall and their harmonic mean F1."""
    precision = _ratio(c.tp, c.tp + c.fp)
    recall = _ratio(c.tp, c.tp + c.fn)
    f1 = _ratio(2.0 * precision * recall, precision + recall)
    return precision, recall, f1


def _check(scores, labels):
    s = np.asarray(scores, dtype=np.float64).ravel()
    y = np.asarray(labels).astype(bool).ravel()
    if s.shape != y.shape:
        raise ValueError("scores and labels must have the same length")
    return s, y


def roc_auc(scores, labels) -> float:
    """Area under the ROC curve as the Mann-Whitney statistic.

    Counts positive/negative pairs ordered correctly, ties as one half, over
    all ``P * N`` pairs.
    """
    s, y = _check(scores, labels)
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise UndefinedMetric("ROC AUC needs at least one positive and one negative")
    ranks = rankdata(s)
    # doubled to keep the half-integer rank sum exact
    u2 = 2.0 * ranks[y].sum() - n_pos * (n_pos + 1)
    return float(u2 / 2.0) / (n_pos * n_neg)


def average_precision(scores, labels) -> float:
    """Mean precision at the rank of each positive.

    Scores are scanned in descending order, ties broken by ascending sample
    index.
    """
    s, y = _check(scores, labels)
    n_pos = int(y.sum())
    if n_pos == 0:
        raise UndefinedMetric("average precision needs at least one positive")
    order = np.lexsort((np.arange(s.size), -s))
    hits = y[order]
    ranks = np.flatnonzero(hits) + 1.0
    return float(np.mean(np.arange(1, n_pos + 1) / ranks))


def evaluate(scores, labels, threshold: float = 0.5) -> MetricBundle:
    """All metrics for positive-class ``scores``; predicted positive iff score >= threshold."""
    s, y = _check(scores, labels)
    p, r, f = prf(ConfusionCounts.from_predictions(y, s >= threshold))
    return MetricBundle(p, r, f, roc_auc(s, y), average_precision(s, y))
