"""Reduced-set density estimators.

A reduced set replaces the n-point sample by m weighted centers whose
weighted kernel sum approximates the kernel density estimate.  Four
selectors are provided:

* shadow_select -- single-pass absorption: take the first remaining point,
  absorb everything strictly within radius sigma/ell of it, repeat.  The
  shadow sets partition the data and each weight counts the absorbed
  points, so the density estimate is exact on the quantized sample.
* kmeans_select -- Lloyd centroids with cluster sizes as weights.
* pare_select   -- uniform subsample with flat weights n/m.
* herd_select   -- greedy kernel herding over the sample, flat weights.

All selectors return a ReducedSet whose weights sum to n and whose
assignment maps every original point to a center (nearest-center for the
non-shadow selectors).  Shadow selection is order-dependent by design:
reproducibility comes from a fixed input order, not canonicalization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from rskpca import kernels
from rskpca.kernels import KernelConfig

_KMEANS_MAX_ITER = 300
_KMEANS_TOL = 1e-9


@dataclass(frozen=True)
class ReducedSet:
    """m weighted centers plus the data-to-center assignment.

    ``ell`` records the shadow parameter when the set came from
    shadow_select; the bound evaluators require it.
    """

    centers: np.ndarray
    weights: np.ndarray
    assignment: np.ndarray
    source_n: int
    ell: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "centers", np.atleast_2d(np.asarray(self.centers, dtype=float)))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        object.__setattr__(self, "assignment", np.asarray(self.assignment, dtype=int))
        m = self.centers.shape[0]
        if m == 0:
            raise ValueError("reduced set needs at least one center")
        if self.weights.shape != (m,):
            raise ValueError("need exactly one weight per center")
        if np.any(self.weights <= 0):
            raise ValueError("weights must be strictly positive")
        if self.assignment.shape != (self.source_n,):
            raise ValueError("assignment must map every original point")
        if self.assignment.size and (self.assignment.min() < 0 or self.assignment.max() >= m):
            raise ValueError("assignment indices out of range")
        if abs(self.weights.sum() - self.source_n) > 1e-6 * max(self.source_n, 1):
            raise ValueError("weights must sum to the original sample count")

    @property
    def m(self) -> int:
        return self.centers.shape[0]


def _as_points(data) -> np.ndarray:
    pts = np.asarray(getattr(data, "points", data), dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    return pts


def _nearest_assignment(pts: np.ndarray, centers: np.ndarray) -> np.ndarray:
    return np.argmin(cdist(pts, centers), axis=1)


def shadow_select(data, cfg: KernelConfig, ell: float) -> ReducedSet:
    """Single-pass shadow selection with radius sigma/ell.

    Repeatedly takes the first point in presentation order as a center and
    absorbs every remaining point strictly closer than the radius (the
    center absorbs itself at distance zero).  O(m n) distance evaluations.
    """
    pts = _as_points(data)
    n = pts.shape[0]
    if n == 0:
        raise ValueError("cannot reduce an empty dataset")
    eps = kernels.shadow_radius(cfg, ell)
    remaining = np.arange(n)
    assignment = np.empty(n, dtype=int)
    center_idx = []
    weights = []
    while remaining.size:
        c = remaining[0]
        dist = np.linalg.norm(pts[remaining] - pts[c], axis=1)
        absorbed = dist < eps
        shadow = remaining[absorbed]
        assignment[shadow] = len(center_idx)
        center_idx.append(c)
        weights.append(shadow.size)
        remaining = remaining[~absorbed]
    return ReducedSet(
        centers=pts[center_idx].copy(),
        weights=np.asarray(weights, dtype=float),
        assignment=assignment,
        source_n=n,
        ell=float(ell),
    )


def kmeans_select(data, m: int, seed: int) -> ReducedSet:
    """Lloyd's k-means: centroid centers, cluster sizes as weights.

    Initial centers are a seeded sample without replacement.  An empty
    cluster steals the point farthest from its current center (from a
    cluster that can spare one), so every returned weight is positive.
    """
    pts = _as_points(data)
    n = pts.shape[0]
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    rng = np.random.default_rng(seed)
    centers = pts[rng.choice(n, size=m, replace=False)].copy()
    labels = np.zeros(n, dtype=int)
    for _ in range(_KMEANS_MAX_ITER):
        dist = cdist(pts, centers)
        labels = np.argmin(dist, axis=1)
        counts = np.bincount(labels, minlength=m)
        for j in np.flatnonzero(counts == 0):
            order = np.argsort(-dist[np.arange(n), labels], kind="stable")
            for idx in order:
                if counts[labels[idx]] > 1:
                    counts[labels[idx]] -= 1
                    labels[idx] = j
                    counts[j] = 1
                    break
        new_centers = np.empty_like(centers)
        for j in range(m):
            new_centers[j] = pts[labels == j].mean(axis=0)
        shift = float(np.max(np.linalg.norm(new_centers - centers, axis=1)))
        centers = new_centers
        if shift <= _KMEANS_TOL:
            break
    weights = np.bincount(labels, minlength=m).astype(float)
    return ReducedSet(centers=centers, weights=weights, assignment=labels, source_n=n)


def pare_select(data, m: int, seed: int) -> ReducedSet:
    """Uniform subsample of m points, each carrying weight n/m."""
    pts = _as_points(data)
    n = pts.shape[0]
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    rng = np.random.default_rng(seed)
    chosen = rng.choice(n, size=m, replace=False)
    centers = pts[chosen].copy()
    return ReducedSet(
        centers=centers,
        weights=np.full(m, n / m),
        assignment=_nearest_assignment(pts, centers),
        source_n=n,
    )


def herd_select(data, cfg: KernelConfig, m: int) -> ReducedSet:
    """Greedy kernel herding restricted to the sample points.

    Step t+1 picks the maximizer of (1/n) sum_i k(x, x_i) minus the mean
    kernel to the points already chosen, skipping indices chosen before;
    ties go to the lowest index.  Weights are flat n/m.  Cost O(n^2 m).
    """
    pts = _as_points(data)
    n = pts.shape[0]
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    gram = kernels.gram(cfg, pts)
    mean_k = gram.mean(axis=0)
    cum = np.zeros(n)
    chosen = []
    taken = np.zeros(n, dtype=bool)
    for t in range(m):
        objective = mean_k - cum / (t + 1)
        objective[taken] = -np.inf
        pick = int(np.argmax(objective))
        chosen.append(pick)
        taken[pick] = True
        cum += gram[:, pick]
    centers = pts[chosen].copy()
    return ReducedSet(
        centers=centers,
        weights=np.full(m, n / m),
        assignment=_nearest_assignment(pts, centers),
        source_n=n,
    )


def density_eval(rs, cfg: KernelConfig, x) -> float:
    """Kernel-sum density at a point: (1/n) sum_j w_j k(c_j, x).

    Accepts a ReducedSet (weighted centers) or raw points / a dataset
    (uniform weights).  Unnormalized kernel-sum convention: no bandwidth
    volume factor, so the value at an isolated unit-weight center is 1/n.
    """
    probe = np.asarray(x, dtype=float).reshape(1, -1)
    if isinstance(rs, ReducedSet):
        centers, weights, n = rs.centers, rs.weights, rs.source_n
    else:
        centers = _as_points(rs)
        n = centers.shape[0]
        weights = np.ones(n)
    row = kernels.cross_gram(cfg, probe, centers)[0]
    return float(row @ weights / n)
