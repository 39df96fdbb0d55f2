"""Cross-validated comparison of samplers and classifiers.

Protocol per fold: fit min-max scaling on the training part, resample the
training part only, fit every classifier on the balanced data and score the
untouched (still imbalanced) test part. Reported numbers are means of the
per-fold metrics.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field, replace
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .classifiers import ClassifierSpec
from .dataset import LabeledDataset, apply_min_max, class_counts, fit_min_max
from .exceptions import ConfigError, GammaBalanceError, TooFewSamples
from .metrics import MetricBundle, evaluate
from .samplers import SamplerSpec, fit_resample


def stratified_folds(ds: LabeledDataset, n_folds: int = 5, seed: int = 0):
    """Shuffled stratified K-fold split.

    Each class is shuffled and dealt round-robin over the folds; the second
    class continues where the first stopped so fold sizes stay within one of
    each other. Returns a list of ``(train_idx, test_idx)`` sorted arrays.
    """
    if n_folds < 2:
        raise ConfigError("n_folds must be >= 2")
    rng = np.random.default_rng(seed)
    fold_of = np.empty(ds.n_samples, dtype=np.int64)
    offset = 0
    for cls in (ds.positive_class, 1 - ds.positive_class):
        rows = np.flatnonzero(ds.labels == cls)
        if rows.size < n_folds:
            raise TooFewSamples(
                f"class {cls} has {rows.size} samples, fewer than {n_folds} folds"
            )
        rows = rng.permutation(rows)
        fold_of[rows] = (offset + np.arange(rows.size)) % n_folds
        offset += rows.size
    idx = np.arange(ds.n_samples)
    return [(idx[fold_of != f], idx[fold_of == f]) for f in range(n_folds)]


def derive_seed(root: int, *parts) -> int:
    """Independent 63-bit seed for a named unit of work."""
    key = tuple(p if isinstance(p, int) else zlib.crc32(str(p).encode()) for p in parts)
    ss = np.random.SeedSequence(entropy=int(root) & (2**128 - 1), spawn_key=key)
    return int(ss.generate_state(1, np.uint64)[0] >> np.uint64(1))


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: LabeledDataset
    samplers: Sequence[SamplerSpec]
    classifiers: Sequence[ClassifierSpec]
    n_folds: int = 5
    seed: int = 0
    scale: bool = True
    dataset_name: str = "dataset"

    def __post_init__(self):
        if self.n_folds < 2:
            raise ConfigError("n_folds must be >= 2")
        methods = [s.method for s in self.samplers]
        names = [c.name for c in self.classifiers]
        if not methods or not names:
            raise ConfigError("need at least one sampler and one classifier")
        if len(set(methods)) != len(methods) or len(set(names)) != len(names):
            raise ConfigError("sampler methods and classifier names must be unique")


@dataclass
class CellResult:
    folds: List[MetricBundle]

    @property
    def mean(self) -> MetricBundle:
        return MetricBundle.mean(self.folds)


@dataclass
class FoldAudit:
    """Dataset rows that fed one balanced training set, for leak checks."""

    fold: int
    sampler: str
    test_rows: np.ndarray
    train_rows: np.ndarray


@dataclass
class ExperimentReport:
    dataset_name: str
    header: dict
    samplers: List[str]
    classifiers: List[str]
    cells: Dict[Tuple[str, str], CellResult]
    audits: List[FoldAudit] = field(default_factory=list, repr=False)

    def cell(self, sampler: str, classifier: str) -> CellResult:
        return self.cells[(sampler, classifier)]


def _header(cfg: ExperimentConfig) -> dict:
    summary = class_counts(cfg.dataset)
    return {
        "dataset": {
            "name": cfg.dataset_name,
            "n_samples": cfg.dataset.n_samples,
            "n_features": cfg.dataset.n_features,
            "majority_count": summary.majority_count,
            "minority_count": summary.minority_count,
            "imbalance_ratio": summary.ratio,
        },
        "protocol": {
            "n_folds": cfg.n_folds,
            "stratified": True,
            "root_seed": cfg.seed,
            "min_max_scaling": cfg.scale,
            "aggregation": "mean of per-fold metrics",
            "decision_threshold": 0.5,
        },
        "samplers": [
            {k: v for k, v in s.hyperparameters().items() if k != "seed"} for s in cfg.samplers
        ],
        "classifiers": [c.hyperparameters() for c in cfg.classifiers],
    }


def _annotate(err: Exception, fold: int, cell: str) -> Exception:
    msg = f"{err} [fold {fold}, {cell}]"
    try:
        return type(err)(msg)
    except TypeError:
        return GammaBalanceError(msg)


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    ds = cfg.dataset
    positive = ds.positive_class
    folds = stratified_folds(ds, cfg.n_folds, derive_seed(cfg.seed, "folds"))
    methods = [s.method for s in cfg.samplers]
    names = [c.name for c in cfg.classifiers]
    cells = {(m, c): CellResult([]) for m in methods for c in names}
    audits = []

    for f, (tr, te) in enumerate(folds):
        train, test = ds.subset(tr), ds.subset(te)
        if cfg.scale:
            params = fit_min_max(train)
            train, test = apply_min_max(train, params), apply_min_max(test, params)
        y_test = test.labels == positive

        for spec in cfg.samplers:
            spec = replace(spec, seed=derive_seed(cfg.seed, spec.method, f))
            try:
                res = fit_resample(train, spec)
            except GammaBalanceError as err:
                raise _annotate(err, f, f"sampler {spec.method}") from err
            prov = res.provenance
            used = np.concatenate(
                [res.origin[res.origin >= 0], prov.source, prov.neighbor]
            )
            audits.append(FoldAudit(f, spec.method, te, np.unique(tr[used])))

            for clf in cfg.classifiers:
                cell = f"{spec.method}/{clf.name}"
                try:
                    model = clf.fit(res.dataset, seed=derive_seed(cfg.seed, spec.method, clf.name, f))
                    bundle = evaluate(model.score(test.features), y_test)
                except GammaBalanceError as err:
                    raise _annotate(err, f, cell) from err
                cells[(spec.method, clf.name)].folds.append(bundle)

    return ExperimentReport(cfg.dataset_name, _header(cfg), methods, names, cells, audits)
