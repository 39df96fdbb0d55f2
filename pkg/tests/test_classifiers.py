import numpy as np
import pytest

from gamma_balance import classifiers as C
from gamma_balance.dataset import LabeledDataset
from gamma_balance.exceptions import ConfigError, EmptyClass

from conftest import make_dataset
from oracles import brute_knn_vote


def test_knn_single_positive():
    m = C.fit_knn(LabeledDataset([[0.0, 0.0]], [1], positive_class=1), k_vote=1)
    assert m.score([[5.0, -3.0]]).tolist() == [1.0]


def test_knn_tie_predicts_positive():
    train = LabeledDataset([[-1.0], [1.0]], [1, 0], positive_class=1)
    m = C.fit_knn(train, k_vote=2)
    assert m.score([[0.0]]).tolist() == [0.5]
    assert m.predict([[0.0]]).tolist() == [True]


def test_knn_k_too_large():
    with pytest.raises(ConfigError):
        C.fit_knn(make_dataset(2, 2), k_vote=5)


def test_knn_matches_brute_vote(rng):
    X = rng.normal(size=(20, 2))
    y = (rng.random(20) < 0.4).astype(int)
    y[:2] = [0, 1]
    ds = LabeledDataset(X, y, positive_class=1)
    m = C.fit_knn(ds, k_vote=3)
    Q = rng.normal(size=(10, 2))
    assert m.score(Q).tolist() == [brute_knn_vote(X, y, q, 3) for q in Q]


def test_knn_permutation_invariant_labels(rng):
    ds = make_dataset(30, 60, seed=4)
    Q = rng.normal(size=(40, 2))
    perm = rng.permutation(ds.n_samples)
    a = C.fit_knn(ds, 5).predict(Q)
    b = C.fit_knn(ds.subset(perm), 5).predict(Q)
    assert np.array_equal(a, b)


def test_forest_separable_blobs():
    r = np.random.default_rng(0)
    X = np.vstack([r.normal([-3, -3], 0.5, (100, 2)), r.normal([3, 3], 0.5, (100, 2))])
    y = np.r_[np.zeros(100, int), np.ones(100, int)]
    ds = LabeledDataset(X, y, positive_class=1)
    m = C.fit_forest(ds, C.ForestParams(n_trees=25, seed=1))
    assert np.mean(m.predict(X) == (y == 1)) >= 0.99


def test_forest_rejects_single_class():
    with pytest.raises(EmptyClass):
        C.fit_forest(LabeledDataset(np.zeros((4, 2)), [1, 1, 1, 1]))


def test_forest_params_validate():
    with pytest.raises(ConfigError):
        C.ForestParams(n_trees=0)
    with pytest.raises(ConfigError):
        C.ForestParams(max_depth=0)


def test_forest_deterministic(rng):
    ds = make_dataset(40, 80, d=4, seed=2)
    probe = rng.normal(size=(30, 4))
    p = C.ForestParams(n_trees=15, seed=9)
    assert np.array_equal(C.fit_forest(ds, p).score(probe), C.fit_forest(ds, p).score(probe))


@pytest.mark.parametrize("seed", range(5))
def test_single_cart_fits_consistent_data(seed):
    r = np.random.default_rng(seed)
    X = r.normal(size=(300, 3))
    y = (r.random(300) < 0.3).astype(int)
    ds = LabeledDataset(X, y, positive_class=1)
    p = C.ForestParams(n_trees=1, max_depth=None, min_leaf=1, features_per_split=3, bootstrap=False)
    m = C.fit_forest(ds, p)
    assert np.array_equal(m.predict(X), y == 1)


def test_scores_in_unit_interval(rng):
    ds = make_dataset(30, 70, d=3)
    Q = rng.normal(size=(50, 3)) * 3
    for m in (C.fit_knn(ds, 5), C.fit_forest(ds, C.ForestParams(n_trees=10))):
        s = m.score(Q)
        assert np.all((s >= 0) & (s <= 1))
        assert np.array_equal(m.predict(Q), s >= 0.5)


def test_tree_split_is_gini_optimal():
    # one feature, labels 0 0 0 1 1: best split between 3 and 4
    X = np.array([[1.0], [2.0], [3.0], [4.0], [5.0]])
    y = np.array([0.0, 0, 0, 1, 1])
    t = C.grow_tree(X, y, C.ForestParams(max_depth=1, features_per_split=1), np.random.default_rng(0))
    assert t.feature[0] == 0 and t.threshold[0] == 3.5
    assert t.value[t.left[0]] == 0.0 and t.value[t.right[0]] == 1.0


def test_min_leaf_respected():
    X = np.arange(10.0).reshape(10, 1)
    y = np.array([1.0] + [0.0] * 9)
    t = C.grow_tree(X, y, C.ForestParams(max_depth=None, min_leaf=3), np.random.default_rng(0))
    leaves = t.apply(X)
    assert np.bincount(leaves)[np.unique(leaves)].min() >= 3


def test_majority_dummy():
    m = C.MajorityModel(make_dataset(5, 20))
    assert m.predict(np.zeros((3, 2))).tolist() == [False] * 3
