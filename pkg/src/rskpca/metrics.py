"""Discrepancy measures between a sample and its quantized stand-in.

Four empirical quantities, each paired with a closed-form worst-case
bound that depends only on the kernel profile and the shadow parameter
ell (radius sigma/ell, boundary profile phi = exp(-1/ell^p)):

* biased MMD between the sample and the quantized sample,
  bounded by sqrt(2 (kappa - phi));
* squared eigenvalue deviation between K/n and the quantized Gram
  Kbar/n, bounded by 2 C (sigma/ell)^2 with C the profile constant
  (1/ell^2 gaussian, 2/ell^2 laplacian);
* Hilbert-Schmidt distance between the empirical extrapolation
  operators, bounded by 2 kappa sqrt(2 (kappa - phi));
* distance between the rank-D spectral projectors, bounded by
  2 sqrt(2 kappa (kappa - phi)) / delta_D with delta_D half the D-th
  eigengap, asserted only when 2 sqrt(kappa) ||eps'|| < delta_D / 2.

HS and projection distances are computed exactly by expanding the
operators in the finite span of the mapped points (no sampling), so the
bounds can be asserted rather than estimated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from rskpca import kernels, numerics
from rskpca.kernels import KernelConfig
from rskpca.rsde import ReducedSet

SLACK = 1e-10
GAP_TOL = 1e-10

CSV_HEADER = "theorem_id,ell,sigma,n,m,D,empirical,bound,satisfied"


@dataclass(frozen=True)
class BoundReport:
    """One empirical quantity against its worst-case bound.

    ``gap_ok`` and ``alt_bound`` only apply to the projection distance:
    when the eigengap condition fails, the bound is not asserted and
    ``satisfied`` is None.  ``alt_bound`` is the data-dependent variant
    2 sqrt(kappa) ||eps'|| / delta_D, logged for comparison.
    """

    theorem_id: str
    ell: float
    sigma: float
    n: int
    m: int
    empirical: float
    bound: float
    D: int | None = None
    gap_ok: bool | None = None
    alt_bound: float | None = None

    def __post_init__(self) -> None:
        if math.isfinite(self.bound) and self.bound < 0:
            raise ValueError("bound must be nonnegative")

    @property
    def satisfied(self) -> bool | None:
        if self.gap_ok is False or not math.isfinite(self.empirical):
            return None
        return bool(self.empirical <= self.bound + SLACK)

    def csv_row(self) -> str:
        sat = self.satisfied
        return ",".join(
            [
                self.theorem_id,
                repr(float(self.ell)),
                repr(float(self.sigma)),
                str(self.n),
                str(self.m),
                "" if self.D is None else str(self.D),
                repr(float(self.empirical)),
                repr(float(self.bound)),
                "" if sat is None else ("true" if sat else "false"),
            ]
        )


def _as_points(data) -> np.ndarray:
    pts = np.asarray(getattr(data, "points", data), dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    return pts


def _require_ell(rs: ReducedSet) -> float:
    if rs.ell is None:
        raise ValueError("bound evaluation needs a shadow reduced set (ell unknown)")
    return rs.ell


def mmd_biased(cfg: KernelConfig, x, y) -> float:
    """Biased maximum mean discrepancy between two equal-size samples."""
    xp = _as_points(x)
    yp = _as_points(y)
    if xp.shape[0] != yp.shape[0]:
        raise ValueError(f"cardinality mismatch: {xp.shape[0]} vs {yp.shape[0]}")
    n = xp.shape[0]
    sq = (
        kernels.gram(cfg, xp).sum()
        + kernels.gram(cfg, yp).sum()
        - 2.0 * kernels.cross_gram(cfg, xp, yp).sum()
    ) / n**2
    return math.sqrt(max(sq, 0.0))


def quantized_dataset(rs: ReducedSet) -> np.ndarray:
    """The n-point sample with each point replaced by its center."""
    return rs.centers[rs.assignment]


def bound_mmd(cfg: KernelConfig, ell: float) -> float:
    """Worst-case MMD between a sample and its shadow quantization."""
    return math.sqrt(2.0 * (cfg.kappa - kernels.boundary_profile(cfg, ell)))


def mmd_quantization(cfg: KernelConfig, x, rs: ReducedSet) -> tuple[float, BoundReport]:
    """Empirical MMD to the quantized sample plus its bound report."""
    ell = _require_ell(rs)
    value = mmd_biased(cfg, x, quantized_dataset(rs))
    report = BoundReport(
        theorem_id="MMD",
        ell=ell,
        sigma=cfg.sigma,
        n=rs.source_n,
        m=rs.m,
        empirical=value,
        bound=bound_mmd(cfg, ell),
    )
    return value, report


def eigen_deviation(cfg: KernelConfig, x, rs: ReducedSet) -> tuple[float, BoundReport]:
    """Sum of squared eigenvalue gaps between K/n and the quantized Gram.

    Both spectra come from n x n matrices, sorted descending, paired by
    rank.  The bound is 2 C (sigma/ell)^2, independent of the data.
    """
    ell = _require_ell(rs)
    pts = _as_points(x)
    n = pts.shape[0]
    lam = numerics.sym_eig(kernels.gram(cfg, pts) / n).eigenvalues
    lam_bar = numerics.sym_eig(kernels.gram(cfg, quantized_dataset(rs)) / n).eigenvalues
    value = float(np.sum((lam - lam_bar) ** 2))
    radius = kernels.shadow_radius(cfg, ell)
    report = BoundReport(
        theorem_id="Eigen",
        ell=ell,
        sigma=cfg.sigma,
        n=n,
        m=rs.m,
        empirical=value,
        bound=2.0 * cfg.profile_constant * radius**2,
    )
    return value, report


def hs_distance(cfg: KernelConfig, x, rs: ReducedSet) -> tuple[float, BoundReport]:
    """Hilbert-Schmidt distance between the extrapolation operators.

    The operators are (1/n) sum_i k_{x_i} (x) k_{x_i} and its quantized
    analogue; the squared distance expands into sums of squared Gram
    entries, so it is computed exactly from three kernel blocks.
    """
    ell = _require_ell(rs)
    pts = _as_points(x)
    n = pts.shape[0]
    qpts = quantized_dataset(rs)
    sq = (
        np.sum(kernels.gram(cfg, pts) ** 2)
        + np.sum(kernels.gram(cfg, qpts) ** 2)
        - 2.0 * np.sum(kernels.cross_gram(cfg, pts, qpts) ** 2)
    ) / n**2
    value = math.sqrt(max(sq, 0.0))
    report = BoundReport(
        theorem_id="HS",
        ell=ell,
        sigma=cfg.sigma,
        n=n,
        m=rs.m,
        empirical=value,
        bound=2.0 * cfg.kappa * bound_mmd(cfg, ell),
    )
    return value, report


def joint_span_operators(cfg: KernelConfig, x_pts, q_pts) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of both extrapolation operators in one orthonormal frame.

    The 2n mapped points span a subspace containing both operators'
    ranges; factoring their Gram matrix G = B B^T gives coordinates in
    which operator algebra (differences, projectors, norms) is exact.
    """
    x_pts = _as_points(x_pts)
    q_pts = _as_points(q_pts)
    n = x_pts.shape[0]
    g = kernels.gram(cfg, np.vstack([x_pts, q_pts]))
    dec = numerics.sym_eig(g)
    keep = dec.eigenvalues > 1e-12 * dec.eigenvalues[0]
    b = dec.eigenvectors[:, keep] * np.sqrt(dec.eigenvalues[keep])[None, :]
    t1 = b[:n].T @ b[:n] / n
    t2 = b[n:].T @ b[n:] / n
    return t1, t2


def projection_distance(
    cfg: KernelConfig, x, rs: ReducedSet, d: int
) -> tuple[float, BoundReport]:
    """Distance between the rank-d spectral projectors of the operators.

    Computed exactly in the joint span of the mapped sample and its
    quantization.  Refuses when the d-th eigengap of K/n is degenerate
    (below 1e-10).  The bound is asserted only under the gap condition
    2 sqrt(kappa) ||eps'|| < delta_d / 2 with ||eps'|| the largest
    feature-space quantization residual; otherwise the report is flagged
    and ``satisfied`` stays undefined.
    """
    ell = _require_ell(rs)
    pts = _as_points(x)
    n = pts.shape[0]
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= D <= n, got D={d}, n={n}")
    qpts = quantized_dataset(rs)

    lam = np.concatenate([numerics.sym_eig(kernels.gram(cfg, pts) / n).eigenvalues, [0.0]])
    gap = lam[d - 1] - lam[d]
    if gap <= GAP_TOL:
        raise ValueError(f"degenerate spectral gap at D={d}: {gap:.3e}")
    delta = gap / 2.0

    t1, t2 = joint_span_operators(cfg, pts, qpts)
    v1 = numerics.sym_eig(t1).eigenvectors[:, :d]
    v2 = numerics.sym_eig(t2).eigenvectors[:, :d]
    value = float(np.linalg.norm(v1 @ v1.T - v2 @ v2.T))

    diff = pts - qpts
    dist = np.linalg.norm(diff, axis=1) if diff.size else np.zeros(n)
    if cfg.family == "gaussian":
        kv = np.exp(-(dist**2) / (2.0 * cfg.sigma**2))
    else:
        kv = np.exp(-dist / cfg.sigma)
    eps_norm = math.sqrt(max(2.0 * (cfg.kappa - kv.min()), 0.0))
    gap_ok = bool(2.0 * math.sqrt(cfg.kappa) * eps_norm < delta / 2.0)

    phi = kernels.boundary_profile(cfg, ell)
    report = BoundReport(
        theorem_id="Projection",
        ell=ell,
        sigma=cfg.sigma,
        n=n,
        m=rs.m,
        empirical=value,
        bound=2.0 * math.sqrt(2.0 * cfg.kappa * (cfg.kappa - phi)) / delta,
        D=d,
        gap_ok=gap_ok,
        alt_bound=2.0 * math.sqrt(cfg.kappa) * eps_norm / delta,
    )
    return value, report


def bound_reports(cfg: KernelConfig, x, rs: ReducedSet, d: int = 1) -> list[BoundReport]:
    """All four bound reports for one shadow reduction.

    A degenerate eigengap turns the projection row into a flagged
    placeholder (NaN empirical/bound, ``satisfied`` undefined) instead of
    aborting the sweep.
    """
    reports = [
        mmd_quantization(cfg, x, rs)[1],
        eigen_deviation(cfg, x, rs)[1],
        hs_distance(cfg, x, rs)[1],
    ]
    try:
        reports.append(projection_distance(cfg, x, rs, d)[1])
    except ValueError:
        reports.append(
            BoundReport(
                theorem_id="Projection",
                ell=_require_ell(rs),
                sigma=cfg.sigma,
                n=rs.source_n,
                m=rs.m,
                empirical=float("nan"),
                bound=float("nan"),
                D=d,
                gap_ok=False,
            )
        )
    return reports


class AlignResult(NamedTuple):
    transform: np.ndarray
    error: float
    rank_deficient: bool


def align_embeddings(o: np.ndarray, o_tilde: np.ndarray) -> AlignResult:
    """Least-squares transform A minimizing ||O - O_tilde A||_F.

    Unconstrained (not orthogonal Procrustes); a rank-deficient O_tilde
    yields the minimum-norm transform and sets the flag.
    """
    o = np.asarray(o, dtype=float)
    o_tilde = np.asarray(o_tilde, dtype=float)
    if o.shape != o_tilde.shape:
        raise ValueError(f"embeddings must share a shape: {o.shape} vs {o_tilde.shape}")
    res = numerics.lstsq(o_tilde, o)
    error = float(np.linalg.norm(o - o_tilde @ res.solution))
    return AlignResult(res.solution, error, res.rank_deficient)
