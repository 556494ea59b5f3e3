"""Dense linear-algebra substrate: symmetric eigendecomposition and least squares.

Both routines are thin, contract-enforcing wrappers over LAPACK (via
numpy.linalg), which is deterministic for a fixed input: repeated calls on
the same matrix yield bitwise-identical results, so golden tests are stable.
LAPACK's internal iteration cap surfaces as ``numpy.linalg.LinAlgError`` on
the (practically unreachable) non-convergence path.

Sign convention: every eigenvector column is flipped so that its
largest-magnitude entry is positive, removing the solver's sign ambiguity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

# Relative asymmetry tolerated before sym_eig refuses the input.
SYMMETRY_RTOL = 1e-10


@dataclass(frozen=True)
class EigenDecomposition:
    """Full spectrum of a symmetric matrix, eigenvalues sorted descending."""

    eigenvalues: np.ndarray  # shape (n,), descending
    eigenvectors: np.ndarray  # shape (n, n), column i pairs with eigenvalues[i]


class LstsqResult(NamedTuple):
    solution: np.ndarray
    rank: int
    rank_deficient: bool


def sym_eig(a: np.ndarray) -> EigenDecomposition:
    """Eigendecompose a symmetric matrix, returning the full descending spectrum.

    Raises ValueError for non-square or non-symmetric input and propagates
    numpy.linalg.LinAlgError if the solver fails to converge.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = np.max(np.abs(a)) if a.size else 0.0
    asym = np.max(np.abs(a - a.T)) if a.size else 0.0
    if asym > SYMMETRY_RTOL * max(scale, 1e-300):
        raise ValueError(
            f"matrix is not symmetric: max|A - A^T| = {asym:.3e} vs scale {scale:.3e}"
        )
    w, v = np.linalg.eigh(a)
    w = w[::-1].copy()
    v = v[:, ::-1]
    v = _fix_signs(v)
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def _fix_signs(v: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive."""
    v = np.array(v, copy=True)
    idx = np.argmax(np.abs(v), axis=0)
    signs = np.sign(v[idx, np.arange(v.shape[1])])
    signs[signs == 0] = 1.0
    return v * signs


def lstsq(b: np.ndarray, y: np.ndarray) -> LstsqResult:
    """Solve argmin_A ||Y - B A||_F.

    B must have at least as many rows as columns. A rank-deficient B yields
    the minimum-norm solution with ``rank_deficient`` set, signalling a
    degenerate alignment.
    """
    b = np.asarray(b, dtype=float)
    y = np.asarray(y, dtype=float)
    if b.ndim != 2:
        raise ValueError("B must be a 2-D matrix")
    if b.shape[0] < b.shape[1]:
        raise ValueError(
            f"underdetermined system: B has {b.shape[0]} rows < {b.shape[1]} columns"
        )
    if y.shape[0] != b.shape[0]:
        raise ValueError("B and Y must have the same number of rows")
    solution, _, rank, _ = np.linalg.lstsq(b, y, rcond=None)
    return LstsqResult(solution=solution, rank=int(rank), rank_deficient=rank < b.shape[1])
