import numpy as np
import pytest

from gamma_balance.exceptions import EmptyInput
from gamma_balance.neighbors import NeighborIndex, build, k_nearest

from oracles import brute_knn


def test_single_point_has_no_neighbors():
    assert k_nearest(build([[1.0, 2.0]]), 0, 3) == []


def test_line_example():
    ix = build(np.array([[0.0], [1.0], [3.0], [7.0]]))
    assert k_nearest(ix, 0, 2) == [1, 2]


def test_duplicate_comes_first():
    ix = build(np.array([[0.0], [5.0], [0.0], [1.0]]))
    assert k_nearest(ix, 0, 2) == [2, 3]
    assert k_nearest(ix, 2, 1) == [0]


def test_k_equal_n_minus_one_returns_all_sorted():
    pts = np.array([[0.0], [4.0], [1.0], [9.0], [2.0]])
    assert k_nearest(build(pts), 0, 4) == [2, 4, 1, 3]
    assert k_nearest(build(pts), 0, 10) == [2, 4, 1, 3]


def test_ties_broken_by_row_index():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    assert k_nearest(build(pts), 0, 3) == [1, 2, 3]


def test_empty_input():
    with pytest.raises(EmptyInput):
        NeighborIndex(np.empty((0, 2)))


def test_synthetic_minority_index(synthetic):
    assert len(build(synthetic.features[synthetic.labels == 1])) == 550


def test_permutation_gives_same_neighbor_sets(rng):
    pts = rng.normal(size=(60, 3))
    perm = rng.permutation(60)
    a = build(pts).kneighbors_of_rows(4)
    b = build(pts[perm]).kneighbors_of_rows(4)
    inv = np.argsort(perm)
    for i in range(60):
        assert set(perm[b[inv[i]]]) == set(a[i])


@pytest.mark.parametrize("seed", range(15))
def test_matches_brute_force(seed):
    r = np.random.default_rng(seed)
    n, d = int(r.integers(2, 120)), int(r.integers(1, 8))
    pts = r.normal(size=(n, d))
    ix = build(pts)
    for k in (1, 3, 5):
        got = ix.kneighbors_of_rows(k)
        for q in range(n):
            assert got[q].tolist() == brute_knn(pts, q, k)


def test_properties(rng):
    pts = rng.integers(0, 4, size=(80, 2)).astype(float)   # many exact ties
    ix = build(pts)
    nb = ix.kneighbors_of_rows(6)
    for q in range(80):
        assert q not in nb[q]
        d = ((pts[nb[q]] - pts[q]) ** 2).sum(1)
        assert np.all(np.diff(d) >= 0)
        assert nb[q].tolist() == brute_knn(pts, q, 6)


def test_external_queries(rng):
    pts = rng.normal(size=(50, 2))
    q = rng.normal(size=(7, 2))
    got = build(pts).kneighbors(q, 3)
    for i in range(7):
        assert got[i].tolist() == brute_knn(np.vstack([pts, q[i:i + 1]]), 50, 3)
