"""Radially symmetric kernels and Gram-matrix assembly.

Two families are built in, both with unit maximum kappa = k(x, x) = 1:

* gaussian:   k(x, y) = exp(-||x - y||^2 / (2 sigma^2))
* laplacian:  k(x, y) = exp(-||x - y|| / sigma)

Each family carries a profile exponent p (2 for gaussian, 1 for laplacian)
and a smoothness constant (1/(2 sigma^2) gaussian, 1/sigma^2 laplacian) used
by the closed-form error bounds. The bounds also use the profile value
exp(-1/ell^p), a lower envelope for the kernel at the shadow radius
sigma/ell: every point strictly inside the radius sees a kernel value above
it for both families.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.spatial.distance import cdist

if TYPE_CHECKING:
    from rskpca.rsde import ReducedSet

FAMILIES = ("gaussian", "laplacian")


@dataclass(frozen=True)
class KernelConfig:
    """Kernel family plus bandwidth; profile constants are derived."""

    family: str
    sigma: float

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown kernel family {self.family!r}; choose from {FAMILIES}")
        if not self.sigma > 0:
            raise ValueError(f"bandwidth must be positive, got {self.sigma}")

    @property
    def p(self) -> int:
        """Profile exponent: 2 for gaussian, 1 for laplacian."""
        return 2 if self.family == "gaussian" else 1

    @property
    def kappa(self) -> float:
        """Maximum kernel value k(x, x)."""
        return 1.0

    @property
    def profile_constant(self) -> float:
        """Smoothness constant of the profile inequality."""
        if self.family == "gaussian":
            return 1.0 / (2.0 * self.sigma**2)
        return 1.0 / self.sigma**2


def evaluate(cfg: KernelConfig, x: np.ndarray, y: np.ndarray) -> float:
    """Kernel value k(x, y) for two points of equal dimension."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    d = float(np.linalg.norm(x - y))
    if cfg.family == "gaussian":
        return float(np.exp(-(d * d) / (2.0 * cfg.sigma**2)))
    return float(np.exp(-d / cfg.sigma))


def _as_points(x) -> np.ndarray:
    pts = np.asarray(getattr(x, "points", x), dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    return pts


def gram(cfg: KernelConfig, points) -> np.ndarray:
    """Symmetric n x n Gram matrix with exact unit diagonal."""
    pts = _as_points(points)
    if pts.shape[0] == 0:
        raise ValueError("cannot build a Gram matrix from an empty point set")
    k = cross_gram(cfg, pts, pts)
    k = 0.5 * (k + k.T)  # kill round-off asymmetry from cdist
    np.fill_diagonal(k, 1.0)
    return k


def cross_gram(cfg: KernelConfig, points, centers) -> np.ndarray:
    """n x m matrix of k(x_i, c_j)."""
    x = _as_points(points)
    c = _as_points(centers)
    if x.shape[0] == 0 or c.shape[0] == 0:
        raise ValueError("cross_gram requires nonempty point sets")
    if x.shape[1] != c.shape[1]:
        raise ValueError(f"dimension mismatch: {x.shape[1]} vs {c.shape[1]}")
    if cfg.family == "gaussian":
        sq = cdist(x, c, "sqeuclidean")
        return np.exp(-sq / (2.0 * cfg.sigma**2))
    d = cdist(x, c, "euclidean")
    return np.exp(-d / cfg.sigma)


def weighted_gram(cfg: KernelConfig, rs: "ReducedSet") -> np.ndarray:
    """Density-weighted surrogate Gram W K^C W with W = diag(sqrt(w)).

    Entries are sqrt(w_i) k(c_i, c_j) sqrt(w_j); the diagonal is w_i * kappa.
    Positive semidefinite because K^C is.
    """
    weights = np.asarray(rs.weights, dtype=float)
    if np.any(weights <= 0):
        raise ValueError("reduced-set weights must be strictly positive")
    root_w = np.sqrt(weights)
    kc = gram(cfg, rs.centers)
    return root_w[:, None] * kc * root_w[None, :]


def shadow_radius(cfg: KernelConfig, ell: float) -> float:
    """Shadow radius sigma / ell."""
    if not ell > 0:
        raise ValueError(f"ell must be positive, got {ell}")
    return cfg.sigma / ell


def boundary_profile(cfg: KernelConfig, ell: float) -> float:
    """Profile value exp(-1/ell^p) entering the worst-case bounds."""
    if not ell > 0:
        raise ValueError(f"ell must be positive, got {ell}")
    return float(np.exp(-(ell ** (-cfg.p))))
