"""Exact Euclidean k-nearest-neighbour search by brute force.

Ordering is fully deterministic: ascending distance, exact ties broken by
ascending row index. Self-exclusion is by row identity, so a duplicated point
is still a valid (distance zero) neighbour of its twin.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

from .exceptions import EmptyInput

# bound on the number of distance entries held in memory per block
_BLOCK_ENTRIES = 4_000_000


class NeighborIndex:
    """Immutable point set answering k-NN queries."""

    def __init__(self, points):
        pts = np.array(points, dtype=np.float64, copy=True)
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise EmptyInput("neighbor index needs at least one point")
        if not np.all(np.isfinite(pts)):
            raise EmptyInput("neighbor index points must be finite")
        pts.setflags(write=False)
        self.points = pts

    def __len__(self):
        return self.points.shape[0]

    def sq_distances(self, queries) -> np.ndarray:
        return cdist(np.atleast_2d(queries), self.points, "sqeuclidean")

    def kneighbors_of_rows(self, k: int, rows=None) -> np.ndarray:
        """Neighbours of indexed rows, excluding each row itself.

        Returns an int array of shape ``(len(rows), min(k, n - 1))``.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        n = len(self)
        rows = np.arange(n) if rows is None else np.asarray(rows, dtype=np.int64)
        kk = min(k, n - 1)
        if kk == 0:
            return np.empty((rows.size, 0), dtype=np.int64)
        out = np.empty((rows.size, kk), dtype=np.int64)
        for start, stop in _blocks(rows.size, n):
            d2 = self.sq_distances(self.points[rows[start:stop]])
            d2[np.arange(stop - start), rows[start:stop]] = np.inf
            out[start:stop] = _smallest_k(d2, kk)
        return out

    def kneighbors(self, queries, k: int) -> np.ndarray:
        """Neighbours of external query points (nothing excluded)."""
        if k < 1:
            raise ValueError("k must be >= 1")
        q = np.atleast_2d(np.asarray(queries, dtype=np.float64))
        kk = min(k, len(self))
        out = np.empty((q.shape[0], kk), dtype=np.int64)
        for start, stop in _blocks(q.shape[0], len(self)):
            out[start:stop] = _smallest_k(self.sq_distances(q[start:stop]), kk)
        return out


def build(points) -> NeighborIndex:
    return NeighborIndex(points)


def k_nearest(ix: NeighborIndex, query_row: int, k: int) -> list:
    """Row indices of the ``k`` nearest other rows to ``query_row``."""
    return ix.kneighbors_of_rows(k, [query_row])[0].tolist()


def _blocks(n_queries, n_points):
    step = max(1, _BLOCK_ENTRIES // max(1, n_points))
    for start in range(0, n_queries, step):
        yield start, min(start + step, n_queries)


def _smallest_k(d2: np.ndarray, k: int) -> np.ndarray:
    """Column indices of the k smallest entries per row, ordered by (value, index)."""
    n = d2.shape[1]
    if k >= n:
        return np.argsort(d2, axis=1, kind="stable")[:, :k]
    part = np.argpartition(d2, k - 1, axis=1)[:, :k]
    vals = np.take_along_axis(d2, part, axis=1)
    # lexsort: last key is primary
    order = np.lexsort((part, vals), axis=1)
    part = np.take_along_axis(part, order, axis=1)
    vals = np.take_along_axis(vals, order, axis=1)
    # argpartition may pick an arbitrary member of a tie at the k-th value;
    # redo those rows with a stable full sort
    kth = vals[:, -1]
    ambiguous = np.count_nonzero(d2 <= kth[:, None], axis=1) > k
    if ambiguous.any():
        rows = np.flatnonzero(ambiguous)
        part[rows] = np.argsort(d2[rows], axis=1, kind="stable")[:, :k]
    return part
