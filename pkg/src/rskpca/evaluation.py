"""Downstream evaluation: k-NN on embeddings, cross-validation, timing.

Classification quality is measured by a k-nearest-neighbour vote in the
embedding space (Euclidean metric) under stratified k-fold
cross-validation.  Wall-clock accounting splits a pipeline into four
phases -- reduced-set selection, Gram assembly, eigendecomposition,
projection -- with training time the sum of the first three and testing
time the projection; speedups are ratios of a baseline's phase times to
a candidate's.  Timings take the median of repeated runs after one
unmeasured warm-up.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from rskpca.dataio import DataSet

PHASES = ("rsde", "gram", "eig", "project")


@dataclass(frozen=True)
class PhaseTiming:
    """Median wall-clock milliseconds per pipeline phase."""

    rsde_ms: float
    gram_ms: float
    eig_ms: float
    project_ms: float
    n: int
    m: int
    r: int

    def __post_init__(self) -> None:
        if min(self.rsde_ms, self.gram_ms, self.eig_ms, self.project_ms) < 0:
            raise ValueError("durations must be nonnegative")

    @property
    def train_ms(self) -> float:
        return self.rsde_ms + self.gram_ms + self.eig_ms

    @property
    def test_ms(self) -> float:
        return self.project_ms


@dataclass(frozen=True)
class TrialResult:
    """One experiment row: a method at one operating point.

    ``m`` may be fractional when averaged across repetitions.  Fields
    that do not apply to an experiment stay None and serialize empty.
    """

    method: str
    ell: float | None
    m: float
    accuracy: float | None
    embedding_error: float | None
    eigenvalue_error: float | None
    train_speedup: float
    test_speedup: float
    total_speedup: float
    retained_fraction: float

    CSV_HEADER = (
        "method,ell,m,accuracy,embedding_error,eigenvalue_error,"
        "train_speedup,test_speedup,total_speedup,retained_fraction"
    )
    DETERMINISTIC_HEADER = "method,ell,m,accuracy,embedding_error,eigenvalue_error,retained_fraction"
    TIMING_HEADER = "method,ell,m,train_speedup,test_speedup,total_speedup"

    def __post_init__(self) -> None:
        if not 0 < self.retained_fraction <= 1:
            raise ValueError(f"retained fraction must be in (0, 1], got {self.retained_fraction}")
        if min(self.train_speedup, self.test_speedup, self.total_speedup) <= 0:
            raise ValueError("speedups must be positive")

    def _cells(self, names) -> list[str]:
        out = []
        for name in names:
            value = getattr(self, name)
            if value is None:
                out.append("")
            elif isinstance(value, str):
                out.append(value)
            elif name == "m" and float(value).is_integer():
                out.append(str(int(value)))
            else:
                out.append(repr(float(value)))
        return out

    def csv_row(self, header: str | None = None) -> str:
        names = (header or self.CSV_HEADER).split(",")
        return ",".join(self._cells(names))


def knn_classify(train_emb, train_labels, test_emb, k: int) -> np.ndarray:
    """Majority vote over the k nearest training embeddings.

    Vote ties are broken by the smaller summed neighbour distance, then
    by the lower label; equidistant neighbours enter in index order.
    """
    train_emb = np.atleast_2d(np.asarray(train_emb, dtype=float))
    test_emb = np.atleast_2d(np.asarray(test_emb, dtype=float))
    labels = np.asarray(train_labels, dtype=int)
    n = train_emb.shape[0]
    if n == 0:
        raise ValueError("empty training set")
    if labels.shape != (n,):
        raise ValueError("need one label per training embedding")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got {k}")
    if train_emb.shape[1] != test_emb.shape[1]:
        raise ValueError("embedding dimensions differ between train and test")
    dist = cdist(test_emb, train_emb)
    order = np.argsort(dist, axis=1, kind="stable")[:, :k]
    out = np.empty(test_emb.shape[0], dtype=int)
    for i, neighbours in enumerate(order):
        votes = labels[neighbours]
        candidates = np.unique(votes)
        counts = np.array([(votes == c).sum() for c in candidates])
        sums = np.array([dist[i, neighbours[votes == c]].sum() for c in candidates])
        best = counts == counts.max()
        tied = candidates[best][sums[best] == sums[best].min()]
        out[i] = tied.min()
    return out


def fold_assignment(labels, folds: int, seed: int) -> np.ndarray:
    """Stratified fold index per sample.

    Folds are dealt round-robin over per-class shuffled indices, so fold
    sizes differ by at most one and every class spreads across folds.
    """
    labels = np.asarray(labels, dtype=int)
    n = labels.shape[0]
    if folds < 2:
        raise ValueError(f"need at least 2 folds, got {folds}")
    if n < folds:
        raise ValueError(f"fewer samples ({n}) than folds ({folds})")
    rng = np.random.default_rng(seed)
    order = np.concatenate(
        [rng.permutation(np.flatnonzero(labels == c)) for c in np.unique(labels)]
    )
    fold_of = np.empty(n, dtype=int)
    fold_of[order] = np.arange(n) % folds
    return fold_of


def kfold_cv(ds: DataSet, pipeline, folds: int, seed: int) -> tuple[float, np.ndarray]:
    """Stratified k-fold cross-validation of a fit-and-predict pipeline.

    ``pipeline(train, test)`` must return predicted labels for ``test``.
    """
    if ds.labels is None:
        raise ValueError("cross-validation needs labels")
    fold_of = fold_assignment(ds.labels, folds, seed)

    def subset(mask):
        return DataSet(points=ds.points[mask], labels=ds.labels[mask], name=ds.name)

    accuracies = np.empty(folds)
    for f in range(folds):
        test_mask = fold_of == f
        predicted = np.asarray(pipeline(subset(~test_mask), subset(test_mask)))
        accuracies[f] = float(np.mean(predicted == ds.labels[test_mask]))
    return float(accuracies.mean()), accuracies


def time_callable(fn, repeats: int = 3) -> tuple[float, float]:
    """Median duration (ms) of repeated runs plus coefficient of variation.

    One warm-up call runs before measurement and is discarded.
    """
    if repeats < 1:
        raise ValueError("need at least one timed run")
    fn()
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append((time.perf_counter() - start) * 1000.0)
    median = statistics.median(samples)
    mean = statistics.fmean(samples)
    cv = statistics.pstdev(samples) / mean if mean > 0 else 0.0
    return median, cv


def time_phases(phases: dict, n: int, m: int, r: int, repeats: int = 3) -> PhaseTiming:
    """Time the supplied phase callables; absent phases count as zero."""
    unknown = set(phases) - set(PHASES)
    if unknown:
        raise ValueError(f"unknown phases: {sorted(unknown)}")
    measured = {name: time_callable(fn, repeats)[0] for name, fn in phases.items()}
    return PhaseTiming(
        rsde_ms=measured.get("rsde", 0.0),
        gram_ms=measured.get("gram", 0.0),
        eig_ms=measured.get("eig", 0.0),
        project_ms=measured.get("project", 0.0),
        n=n,
        m=m,
        r=r,
    )


def speedup(base: PhaseTiming, other: PhaseTiming) -> tuple[float, float, float]:
    """(train, test, total) ratios of baseline time to candidate time."""
    if base.n != other.n or base.r != other.r:
        raise ValueError("speedup requires timings from the same dataset and rank")
    pairs = [
        (base.train_ms, other.train_ms),
        (base.test_ms, other.test_ms),
        (base.train_ms + base.test_ms, other.train_ms + other.test_ms),
    ]
    out = []
    for top, bottom in pairs:
        if bottom == 0:
            raise ValueError("zero-duration phase group; cannot form a ratio")
        out.append(top / bottom)
    return tuple(out)
