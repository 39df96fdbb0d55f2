"""k-nearest-neighbour vote and a CART random forest.

Both expose ``score(X)``, the estimated probability of the positive class,
and ``predict(X) = score(X) >= 0.5``.

The forest grows each tree level by level: at every depth the best Gini
split of all open nodes is found in one vectorised pass per feature, which
keeps pure-numpy training fast enough for cross-validation on a few
thousand rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dataset import LabeledDataset
from .exceptions import ConfigError, EmptyClass
from .neighbors import NeighborIndex


def _targets(train: LabeledDataset) -> np.ndarray:
    return (train.labels == train.positive_class).astype(np.float64)


class KnnModel:
    def __init__(self, train: LabeledDataset, k_vote: int = 5, index: Optional[NeighborIndex] = None):
        if train.n_samples < 1:
            raise ConfigError("k-NN needs a non-empty training set")
        if k_vote < 1 or k_vote > train.n_samples:
            raise ConfigError(f"k_vote must be in [1, {train.n_samples}], got {k_vote}")
        self.k_vote = int(k_vote)
        self.index = index if index is not None else NeighborIndex(train.features)
        self.targets = _targets(train)

    def score(self, X) -> np.ndarray:
        nbrs = self.index.kneighbors(X, self.k_vote)
        return self.targets[nbrs].mean(axis=1)

    def predict(self, X) -> np.ndarray:
        return self.score(X) >= 0.5


def fit_knn(train: LabeledDataset, k_vote: int = 5, ix: Optional[NeighborIndex] = None) -> KnnModel:
    return KnnModel(train, k_vote, ix)


def score_knn(model: KnnModel, X) -> np.ndarray:
    return model.score(X)


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 100
    max_depth: Optional[int] = 12
    min_leaf: int = 1
    features_per_split: Optional[int] = None
    """``None`` means ``ceil(sqrt(n_features))``."""
    bootstrap: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.n_trees < 1:
            raise ConfigError("n_trees must be >= 1")
        if self.max_depth is not None and self.max_depth < 1:
            raise ConfigError("max_depth must be >= 1 or None")
        if self.min_leaf < 1:
            raise ConfigError("min_leaf must be >= 1")
        if self.features_per_split is not None and self.features_per_split < 1:
            raise ConfigError("features_per_split must be >= 1")

    def n_split_features(self, n_features: int) -> int:
        if self.features_per_split is None:
            return max(1, math.ceil(math.sqrt(n_features)))
        return min(self.features_per_split, n_features)


@dataclass
class Tree:
    """Flat binary tree; ``feature == -1`` marks a leaf."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    def apply(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        node = np.zeros(X.shape[0], dtype=np.int64)
        rows = np.arange(X.shape[0])
        while True:
            f = self.feature[node]
            inner = f >= 0
            if not inner.any():
                return node
            r, n = rows[inner], node[inner]
            go_left = X[r, f[inner]] <= self.threshold[n]
            node[r] = np.where(go_left, self.left[n], self.right[n])

    def score(self, X) -> np.ndarray:
        return self.value[self.apply(X)]


def _best_splits(x, y, node, n_nodes, min_leaf):
    """Best threshold per node on a single feature.

    Returns (impurity, threshold) arrays of length ``n_nodes``; impurity is
    ``inf`` where the feature admits no valid split. Impurity is the
    size-weighted Gini ``n_l * G_l + n_r * G_r``.
    """
    order = np.lexsort((x, node))
    xs, ys, ns = x[order], y[order], node[order]
    m = xs.size
    starts = np.flatnonzero(np.r_[True, ns[1:] != ns[:-1]])
    ends = np.r_[starts[1:], m]
    group_nodes = ns[starts]
    sizes = ends - starts

    cum = np.cumsum(ys)
    base = np.repeat(np.r_[0.0, cum[starts[1:] - 1]], sizes)
    pos_left = cum - base
    n_left = np.arange(m) - np.repeat(starts, sizes) + 1
    n_tot = np.repeat(sizes, sizes)
    pos_tot = np.repeat(pos_left[ends - 1], sizes)
    n_right = n_tot - n_left
    pos_right = pos_tot - pos_left

    valid = np.zeros(m, dtype=bool)
    valid[:-1] = (ns[1:] == ns[:-1]) & (xs[1:] > xs[:-1])
    valid &= (n_left >= min_leaf) & (n_right >= min_leaf)

    with np.errstate(divide="ignore", invalid="ignore"):
        imp = 2.0 * (pos_left * (n_left - pos_left) / n_left
                     + pos_right * (n_right - pos_right) / n_right)
    imp = np.where(valid, imp, np.inf)

    best_imp = np.full(n_nodes, np.inf)
    best_thr = np.zeros(n_nodes)
    group_min = np.minimum.reduceat(imp, starts)
    has = np.isfinite(group_min)
    if has.any():
        # first position attaining the group minimum = smallest threshold
        hit = imp == np.repeat(group_min, sizes)
        hit &= np.isfinite(imp)
        first = np.maximum.reduceat(np.where(hit, -np.arange(m), -m), starts)
        pos = -first[has]
        best_imp[group_nodes[has]] = group_min[has]
        mid = 0.5 * (xs[pos] + xs[pos + 1])
        # guard against the midpoint rounding onto the upper value
        best_thr[group_nodes[has]] = np.where(mid < xs[pos + 1], mid, xs[pos])
    return best_imp, best_thr


def grow_tree(X, y, params: ForestParams, rng: np.random.Generator) -> Tree:
    """Grow one CART tree on ``(X, y)`` with y in {0., 1.}."""
    n, d = X.shape
    mtry = params.n_split_features(d)
    max_depth = params.max_depth if params.max_depth is not None else n
    feature, threshold, left, right, value = [-1], [0.0], [-1], [-1], [float(y.mean())]

    node_of = np.zeros(n, dtype=np.int64)   # global node id per row, -1 once settled
    open_ids = np.array([0])
    depth = 0
    while open_ids.size:
        active = node_of >= 0
        rows = np.flatnonzero(active)
        # compact ids for this level
        local = np.full(len(feature), -1, dtype=np.int64)
        local[open_ids] = np.arange(open_ids.size)
        lnode = local[node_of[rows]]
        counts = np.bincount(lnode, minlength=open_ids.size)
        pos = np.bincount(lnode, weights=y[rows], minlength=open_ids.size)
        can_split = (pos > 0) & (pos < counts) & (counts >= 2 * params.min_leaf) & (depth < max_depth)

        best_imp = np.full(open_ids.size, np.inf)
        best_feat = np.full(open_ids.size, -1, dtype=np.int64)
        best_thr = np.zeros(open_ids.size)
        if can_split.any():
            if mtry < d:
                keys = rng.random((open_ids.size, d))
                chosen = np.zeros((open_ids.size, d), dtype=bool)
                np.put_along_axis(chosen, np.argsort(keys, axis=1)[:, :mtry], True, axis=1)
            else:
                chosen = np.ones((open_ids.size, d), dtype=bool)
            split_rows = can_split[lnode]
            r, ln = rows[split_rows], lnode[split_rows]
            for j in range(d):
                if not chosen[:, j].any():
                    continue
                imp, thr = _best_splits(X[r, j], y[r], ln, open_ids.size, params.min_leaf)
                imp = np.where(chosen[:, j] & can_split, imp, np.inf)
                better = imp < best_imp
                best_imp[better] = imp[better]
                best_feat[better] = j
                best_thr[better] = thr[better]

        splitting = best_feat >= 0
        new_open = []
        for li in np.flatnonzero(splitting):
            gid = open_ids[li]
            feature[gid] = int(best_feat[li])
            threshold[gid] = float(best_thr[li])
            for side in (left, right):
                side[gid] = len(feature)
                new_open.append(len(feature))
                feature.append(-1)
                threshold.append(0.0)
                left.append(-1)
                right.append(-1)
                value.append(0.0)

        # route rows
        settled = ~splitting[lnode]
        node_of[rows[settled]] = -1
        mv = rows[~settled]
        if mv.size:
            gid = node_of[mv]
            fj = np.asarray(feature)[gid]
            go_left = X[mv, fj] <= np.asarray(threshold)[gid]
            node_of[mv] = np.where(go_left, np.asarray(left)[gid], np.asarray(right)[gid])
            new_ids = np.asarray(new_open, dtype=np.int64)
            cnt = np.bincount(node_of[mv], minlength=len(feature))[new_ids]
            psum = np.bincount(node_of[mv], weights=y[mv], minlength=len(feature))[new_ids]
            val = np.asarray(value)
            val[new_ids] = psum / cnt
            value = val.tolist()
        open_ids = np.asarray(new_open, dtype=np.int64)
        depth += 1

    return Tree(
        np.asarray(feature, dtype=np.int64),
        np.asarray(threshold, dtype=np.float64),
        np.asarray(left, dtype=np.int64),
        np.asarray(right, dtype=np.int64),
        np.asarray(value, dtype=np.float64),
    )


class ForestModel:
    def __init__(self, trees, params: ForestParams):
        self.trees = list(trees)
        self.params = params

    def score(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        total = np.zeros(X.shape[0])
        for tree in self.trees:
            total += tree.score(X)
        return total / len(self.trees)

    def predict(self, X) -> np.ndarray:
        return self.score(X) >= 0.5


def fit_forest(train: LabeledDataset, params: ForestParams = ForestParams()) -> ForestModel:
    """Bagged CART trees with per-split random feature subsets."""
    if train.n_samples < 2:
        raise EmptyClass("forest needs at least two training rows")
    y = _targets(train)
    if y.min() == y.max():
        raise EmptyClass("forest needs both classes in the training set")
    X = train.features
    n = X.shape[0]
    children = np.random.SeedSequence(params.seed).spawn(params.n_trees)
    trees = []
    for ss in children:
        rng = np.random.default_rng(ss)
        if params.bootstrap:
            rows = rng.integers(0, n, size=n)
            trees.append(grow_tree(X[rows], y[rows], params, rng))
        else:
            trees.append(grow_tree(X, y, params, rng))
    return ForestModel(trees, params)


def score_forest(model: ForestModel, X) -> np.ndarray:
    return model.score(X)


class MajorityModel:
    """Always scores the training-majority class; a degenerate baseline for checks."""

    def __init__(self, train: LabeledDataset):
        y = _targets(train)
        self.value = 1.0 if y.mean() > 0.5 else 0.0

    def score(self, X) -> np.ndarray:
        return np.full(np.atleast_2d(X).shape[0], self.value)

    def predict(self, X) -> np.ndarray:
        return self.score(X) >= 0.5


CLASSIFIERS = ("knn", "forest", "majority")


@dataclass(frozen=True)
class ClassifierSpec:
    name: str = "knn"
    k_vote: int = 5
    forest: ForestParams = field(default_factory=ForestParams)

    def __post_init__(self):
        if self.name not in CLASSIFIERS:
            raise ConfigError(f"unknown classifier {self.name!r}; choose from {CLASSIFIERS}")
        if self.k_vote < 1:
            raise ConfigError("k_vote must be >= 1")

    def fit(self, train: LabeledDataset, seed: int = 0):
        if self.name == "knn":
            return fit_knn(train, self.k_vote)
        if self.name == "forest":
            from dataclasses import replace
            return fit_forest(train, replace(self.forest, seed=seed))
        return MajorityModel(train)

    def hyperparameters(self) -> dict:
        if self.name == "knn":
            return {"name": "knn", "k_vote": self.k_vote}
        if self.name == "forest":
            f = self.forest
            return {
                "name": "forest",
                "n_trees": f.n_trees,
                "max_depth": f.max_depth,
                "min_leaf": f.min_leaf,
                "features_per_split": f.features_per_split or "ceil(sqrt(d))",
                "bootstrap": f.bootstrap,
            }
        return {"name": self.name}
