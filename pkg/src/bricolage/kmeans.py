"""Seeded, fully deterministic k-means (k-means++ init, Lloyd iterations).

Shared by palette extraction, size clustering, and color auto-piling, all of
which need reproducible clusterings: same inputs and seed give bit-identical
centroids and labels. Assignment ties always resolve to the lowest cluster
index, and emptied clusters are reseeded from the point farthest from its
centroid, so the result has exactly ``k`` non-empty clusters whenever there
are at least ``k`` distinct points (callers clamp ``k`` accordingly).
"""

from dataclasses import dataclass

import numpy as np

_MAX_ITER = 300


@dataclass(frozen=True)
class KMeansResult:
    centroids: np.ndarray  # (k, d)
    labels: np.ndarray  # (n,) index into centroids
    inertia: float  # sum of weighted squared distances


def _sq_dists(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Squared Euclidean distance matrix, shape (n, k)."""
    diff = points[:, None, :] - centroids[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _plus_plus_init(points, k, weights, rng) -> np.ndarray:
    """k-means++ seeding; weighted points count with their multiplicity."""
    n = points.shape[0]
    chosen = np.empty((k, points.shape[1]), dtype=np.float64)
    probs = weights / weights.sum()
    idx = int(rng.choice(n, p=probs))
    chosen[0] = points[idx]
    d2 = _sq_dists(points, chosen[:1]).ravel()
    for j in range(1, k):
        total = float((weights * d2).sum())
        if total <= 0.0:
            # all remaining mass sits on already-chosen points; any distinct
            # point is exhausted, caller guaranteed k <= distinct so pick
            # the first unchosen point deterministically
            remaining = np.flatnonzero(d2 > 0.0)
            idx = int(remaining[0]) if remaining.size else 0
        else:
            p = (weights * d2) / total
            idx = int(rng.choice(n, p=p))
        chosen[j] = points[idx]
        d2 = np.minimum(d2, _sq_dists(points, chosen[j : j + 1]).ravel())
    return chosen


def lloyd(points, centroids, weights) -> KMeansResult:
    """Run Lloyd iterations to convergence from the given centroids.

    Converges to a fixpoint where the returned labels are exactly the
    lowest-index nearest-centroid assignment of the returned centroids.
    """
    k = centroids.shape[0]
    n = points.shape[0]
    centroids = centroids.copy()
    labels = np.full(n, -1, dtype=np.int64)
    point_d2 = np.zeros(n)
    for _ in range(_MAX_ITER):
        d2 = _sq_dists(points, centroids)
        labels = np.argmin(d2, axis=1)  # argmin takes lowest index on ties
        point_d2 = d2[np.arange(n), labels]
        # reseed emptied clusters with the farthest point from its centroid
        repaired = False
        for j in range(k):
            if not np.any(labels == j):
                far = int(np.argmax(point_d2))
                centroids[j] = points[far]
                labels[far] = j
                point_d2[far] = 0.0
                repaired = True
        means = np.empty_like(centroids)
        for j in range(k):
            mask = labels == j
            w = weights[mask]
            means[j] = (points[mask] * w[:, None]).sum(axis=0) / w.sum()
        if not repaired and np.array_equal(means, centroids):
            break
        centroids = means
    inertia = float((weights * point_d2).sum())
    return KMeansResult(centroids=centroids, labels=labels, inertia=inertia)


def _validate(points, k, weights):
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[0] == 0:
        raise ValueError("points must be a non-empty (n, d) array")
    if weights is None:
        weights = np.ones(points.shape[0], dtype=np.float64)
    else:
        weights = np.asarray(weights, dtype=np.float64)
    if not 1 <= k <= points.shape[0]:
        raise ValueError(f"k={k} out of range for {points.shape[0]} points")
    return points, weights


def kmeans(points, k: int, seed: int = 0, weights=None) -> KMeansResult:
    """Cluster ``points`` (n, d) into exactly ``k`` groups.

    ``weights`` are per-point multiplicities (default 1). ``k`` must not
    exceed the number of distinct points.
    """
    points, weights = _validate(points, k, weights)
    rng = np.random.default_rng(seed)
    init = _plus_plus_init(points, k, weights, rng)
    return lloyd(points, init, weights)


def kmeans_best(points, k: int, seed: int = 0, weights=None,
                restarts: int = 1, inits=None) -> KMeansResult:
    """Deterministic multi-start k-means; returns the lowest-inertia run.

    Starts comprise ``restarts`` k-means++ seedings (seeds ``seed`` through
    ``seed + restarts - 1``) plus any explicit ``inits`` (iterable of (k, d)
    centroid arrays). Ties keep the earliest start, so the outcome is a pure
    function of the inputs.
    """
    points, weights = _validate(points, k, weights)
    best: KMeansResult | None = None
    for offset in range(restarts):
        rng = np.random.default_rng(seed + offset)
        init = _plus_plus_init(points, k, weights, rng)
        result = lloyd(points, init, weights)
        if best is None or result.inertia < best.inertia:
            best = result
    for init in inits or ():
        result = lloyd(points, np.asarray(init, dtype=np.float64), weights)
        if best is None or result.inertia < best.inertia:
            best = result
    assert best is not None
    return best
