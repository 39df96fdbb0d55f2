"""Slow, obviously-correct reference implementations used only by tests."""

import math


def brute_knn(points, query, k):
    """Indices of the k nearest other rows to ``query``, by (distance, index)."""
    q = points[query]
    cands = []
    for j, p in enumerate(points):
        if j == query:
            continue
        d2 = 0.0
        for a, b in zip(q, p):
            d2 += (a - b) ** 2
        cands.append((d2, j))
    cands.sort()
    return [j for _, j in cands[:k]]


def brute_knn_vote(train_x, train_y, x, k):
    cands = sorted((sum((a - b) ** 2 for a, b in zip(row, x)), j) for j, row in enumerate(train_x))
    return sum(train_y[j] for _, j in cands[:k]) / k


def pair_auc(scores, labels):
    pos = [s for s, y in zip(scores, labels) if y]
    neg = [s for s, y in zip(scores, labels) if not y]
    good = 0.0
    for p in pos:
        for n in neg:
            if p > n:
                good += 1.0
            elif p == n:
                good += 0.5
    return good / (len(pos) * len(neg))


def scan_average_precision(scores, labels):
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    hits, total = 0, 0.0
    for rank, i in enumerate(order, start=1):
        if labels[i]:
            hits += 1
            total += hits / rank
    return total / hits


def recount(labels, preds):
    tp = sum(1 for y, p in zip(labels, preds) if y and p)
    fp = sum(1 for y, p in zip(labels, preds) if not y and p)
    fn = sum(1 for y, p in zip(labels, preds) if y and not p)
    prec = tp / (tp + fp) if tp + fp else 0.0
    rec = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
    return prec, rec, f1


def ks_statistic(sorted_draws, cdf_values):
    n = len(sorted_draws)
    d = 0.0
    for i, c in enumerate(cdf_values):
        d = max(d, (i + 1) / n - c, c - i / n)
    return d


def ks_critical_1pct(n):
    # asymptotic Kolmogorov quantile at 0.99
    return 1.6276236115189573 / math.sqrt(n)
