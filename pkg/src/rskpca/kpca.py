"""Spectral models built on the kernel Gram matrix.

Every variant decomposes a normalized Gram matrix (divided by the sample
count n so eigenvalues are comparable across sizes; the trace of K/n is
kappa = 1) and exposes the same projection interface: a test point's
embedding is the vector of kernel evaluations against the basis points,
weighted per point, times a coefficient matrix.

Variants:

* fit_full       -- eigendecomposition of the full n x n Gram K/n.
* fit_reduced    -- the m x m density-weighted surrogate W K^C W / n from a
                    reduced set; projection touches only the m centers.
* fit_subsampled -- fit_full on a uniform subset.
* fit_nystrom    -- landmark eigendecomposition K_mm/m with the standard
                    extension back to all n points.
* fit_wnystrom   -- Nystrom on k-means landmarks with cluster-size weights.

Coefficient columns are scaled by 1/(sqrt(n) * lambda_i) so the training
projections are orthonormal in the empirical inner product: each projected
component has unit mean square over the training sample.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

import numpy as np

from rskpca import kernels, numerics, rsde
from rskpca.kernels import KernelConfig
from rskpca.rsde import ReducedSet

RANK_TOL = 1e-12
RIDGE = 1e-10

MODEL_FORMAT = "rskpca-model"
MODEL_VERSION = 1

VARIANTS = ("full", "reduced", "subsampled", "nystrom", "wnystrom")


@dataclass(frozen=True)
class KpcaModel:
    """Fitted spectral model supporting out-of-sample projection.

    ``basis_points`` are the points the projection sums kernel values
    over (m centers for the reduced variant, all n points otherwise) and
    ``basis_weights`` the per-point multipliers (sqrt of the reduced-set
    weights, ones otherwise).  ``reduced`` keeps the generating reduced
    set when one exists; it is a training artifact and not serialized.
    """

    variant: str
    kernel: KernelConfig
    basis_points: np.ndarray
    basis_weights: np.ndarray
    eigenvalues: np.ndarray
    coeff_matrix: np.ndarray
    rank: int
    flags: tuple = ()
    reduced: ReducedSet | None = None

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        vals = np.asarray(self.eigenvalues, dtype=float)
        if vals.shape != (self.rank,):
            raise ValueError("need exactly rank eigenvalues")
        if np.any(vals <= 0) or np.any(np.diff(vals) > 0):
            raise ValueError("eigenvalues must be positive and descending")
        if self.coeff_matrix.shape != (self.basis_points.shape[0], self.rank):
            raise ValueError("coefficient matrix must be basis-count x rank")
        if self.basis_weights.shape != (self.basis_points.shape[0],):
            raise ValueError("need one basis weight per basis point")


def _as_points(data) -> np.ndarray:
    pts = np.asarray(getattr(data, "points", data), dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    return pts


def _top_spectrum(mat: np.ndarray, r: int) -> tuple[np.ndarray, np.ndarray]:
    dec = numerics.sym_eig(mat)
    if dec.eigenvalues[r - 1] < RANK_TOL:
        raise ValueError(
            f"rank deficiency: requested rank {r} but eigenvalue {r} is "
            f"{dec.eigenvalues[r - 1]:.3e} (below {RANK_TOL})"
        )
    return dec.eigenvalues[:r].copy(), dec.eigenvectors[:, :r].copy()


def _check_rank(r: int, limit: int, what: str) -> None:
    if not 1 <= r <= limit:
        raise ValueError(f"need 1 <= r <= {what}, got r={r}, {what}={limit}")


def fit_full(data, cfg: KernelConfig, r: int) -> KpcaModel:
    """Full KPCA: top-r eigenpairs of K/n with empirical-norm scaling."""
    pts = _as_points(data)
    n = pts.shape[0]
    _check_rank(r, n, "n")
    vals, vecs = _top_spectrum(kernels.gram(cfg, pts) / n, r)
    coeff = vecs / (np.sqrt(n) * vals)[None, :]
    return KpcaModel(
        variant="full",
        kernel=cfg,
        basis_points=pts.copy(),
        basis_weights=np.ones(n),
        eigenvalues=vals,
        coeff_matrix=coeff,
        rank=r,
    )


def fit_reduced(rs: ReducedSet, cfg: KernelConfig, r: int) -> KpcaModel:
    """Reduced-set KPCA on the density-weighted surrogate W K^C W / n.

    The projection feature vector is (sqrt(w_j) k(c_j, x))_j against the
    surrogate's eigenvectors, so the original data never enters the model;
    the identity reduction (unit weights, centers = data) reproduces
    fit_full exactly.
    """
    n = rs.source_n
    _check_rank(r, rs.m, "m")
    vals, vecs = _top_spectrum(kernels.weighted_gram(cfg, rs) / n, r)
    coeff = vecs / (np.sqrt(n) * vals)[None, :]
    return KpcaModel(
        variant="reduced",
        kernel=cfg,
        basis_points=rs.centers.copy(),
        basis_weights=np.sqrt(rs.weights),
        eigenvalues=vals,
        coeff_matrix=coeff,
        rank=r,
        reduced=rs,
    )


def fit_subsampled(data, cfg: KernelConfig, m: int, r: int, seed: int) -> KpcaModel:
    """Full KPCA on a uniform subset of m points (presentation order kept)."""
    pts = _as_points(data)
    n = pts.shape[0]
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    _check_rank(r, m, "m")
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(n, size=m, replace=False))
    model = fit_full(pts[idx], cfg, r)
    return dataclasses.replace(model, variant="subsampled")


def _landmark_spectrum(gram_norm: np.ndarray, r: int, scale: float):
    """Top-r eigenpairs of a landmark matrix, ridged if singular."""
    dec = numerics.sym_eig(gram_norm)
    flags = ()
    if dec.eigenvalues[-1] < RANK_TOL:
        m = gram_norm.shape[0]
        dec = numerics.sym_eig(gram_norm + (RIDGE / scale) * np.eye(m))
        flags = ("ridged",)
    if dec.eigenvalues[r - 1] < RANK_TOL:
        raise ValueError(
            f"rank deficiency: requested rank {r} but eigenvalue {r} is "
            f"{dec.eigenvalues[r - 1]:.3e} (below {RANK_TOL})"
        )
    return dec.eigenvalues[:r].copy(), dec.eigenvectors[:, :r].copy(), flags


def fit_nystrom(data, cfg: KernelConfig, m: int, r: int, seed: int) -> KpcaModel:
    """Standard Nystrom extension from m uniform landmarks.

    Eigenvalues of K/n are estimated by those of K_mm/m; eigenvectors are
    extended through the n x m cross-Gram, exactly recovering fit_full at
    m = n.  A numerically singular landmark Gram is ridged by 1e-10 and the
    model flagged "ridged".  The basis keeps all n points (storage O(n r)).
    """
    pts = _as_points(data)
    n = pts.shape[0]
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    _check_rank(r, m, "m")
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(n, size=m, replace=False))
    landmarks = pts[idx]
    mu, u, flags = _landmark_spectrum(kernels.gram(cfg, landmarks) / m, r, float(m))
    k_nm = kernels.cross_gram(cfg, pts, landmarks)
    vecs = np.sqrt(m / n) * (k_nm @ u) / (m * mu)[None, :]
    coeff = vecs / (np.sqrt(n) * mu)[None, :]
    return KpcaModel(
        variant="nystrom",
        kernel=cfg,
        basis_points=pts.copy(),
        basis_weights=np.ones(n),
        eigenvalues=mu,
        coeff_matrix=coeff,
        rank=r,
        flags=flags,
    )


def fit_wnystrom(data, cfg: KernelConfig, m: int, r: int, seed: int) -> KpcaModel:
    """Density-weighted Nystrom: k-means landmarks with cluster-size weights.

    Decomposes the weighted landmark Gram W K^C W / n and extends through
    the weighted cross-Gram; with m = n (every point its own cluster, unit
    weights) this also collapses to fit_full.
    """
    pts = _as_points(data)
    n = pts.shape[0]
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    _check_rank(r, m, "m")
    rs = rsde.kmeans_select(pts, m, seed)
    mu, u, flags = _landmark_spectrum(kernels.weighted_gram(cfg, rs) / n, r, float(n))
    weighted_cross = kernels.cross_gram(cfg, pts, rs.centers) * np.sqrt(rs.weights)[None, :]
    vecs = (weighted_cross @ u) / (n * mu)[None, :]
    coeff = vecs / (np.sqrt(n) * mu)[None, :]
    return KpcaModel(
        variant="wnystrom",
        kernel=cfg,
        basis_points=pts.copy(),
        basis_weights=np.ones(n),
        eigenvalues=mu,
        coeff_matrix=coeff,
        rank=r,
        flags=flags,
        reduced=rs,
    )


def project(model: KpcaModel, data) -> np.ndarray:
    """n_test x r embedding of test points.

    Cost per point is O(r * basis count): O(r m) for the reduced variant,
    O(r n) for the others.  Output depends only on kernel values to the
    basis points.
    """
    pts = _as_points(data)
    features = kernels.cross_gram(model.kernel, pts, model.basis_points)
    return (features * model.basis_weights[None, :]) @ model.coeff_matrix


def save_model(model: KpcaModel, path) -> None:
    """Write a model as versioned JSON (training artifacts excluded)."""
    payload = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "variant": model.variant,
        "kernel": {"family": model.kernel.family, "sigma": model.kernel.sigma},
        "rank": model.rank,
        "flags": list(model.flags),
        "basis_points": model.basis_points.tolist(),
        "basis_weights": model.basis_weights.tolist(),
        "eigenvalues": model.eigenvalues.tolist(),
        "coeff_matrix": model.coeff_matrix.tolist(),
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_model(path) -> KpcaModel:
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("format") != MODEL_FORMAT:
        raise ValueError(f"not a model file: {path}")
    if payload.get("version") != MODEL_VERSION:
        raise ValueError(f"unsupported model version {payload.get('version')}")
    return KpcaModel(
        variant=payload["variant"],
        kernel=KernelConfig(**payload["kernel"]),
        basis_points=np.asarray(payload["basis_points"], dtype=float),
        basis_weights=np.asarray(payload["basis_weights"], dtype=float),
        eigenvalues=np.asarray(payload["eigenvalues"], dtype=float),
        coeff_matrix=np.asarray(payload["coeff_matrix"], dtype=float),
        rank=int(payload["rank"]),
        flags=tuple(payload.get("flags", ())),
    )
