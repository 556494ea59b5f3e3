"""Dataset ingestion, splits, and synthetic generators.

Two on-disk formats: a numeric CSV with optional header and an optional
label column, and the sparse "label index:value" text format (1-based
indices, missing entries zero-filled).  Loaders reject non-finite values.
No feature scaling is applied unless minmax_scale is called explicitly.

Also owns the experiment config format: a flat JSON object with dotted
keys (dataset.path, kernel.family, kernel.sigma, sweep.ell_min,
sweep.ell_max, sweep.ell_step, rank, knn.k, cv.folds, seed, ...).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DataSet:
    """n points in R^d with optional integer class labels."""

    points: np.ndarray
    labels: np.ndarray | None = None
    name: str = ""

    def __post_init__(self) -> None:
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        object.__setattr__(self, "points", pts)
        if not np.all(np.isfinite(pts)):
            raise ValueError("dataset contains non-finite values")
        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=int)
            object.__setattr__(self, "labels", labels)
            if labels.shape != (pts.shape[0],):
                raise ValueError("need exactly one label per point")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


def _parse_float(token: str, path, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ValueError(f"{path}:{lineno}: non-numeric value {token!r}") from None


def load_sparse(path) -> DataSet:
    """Read the sparse "label index:value" text format.

    Indices are 1-based (0-based files are detected by the presence of
    index 0); the dimension is the largest index seen, so trailing
    all-zero columns are not representable.
    """
    rows = []
    min_idx = None
    max_idx = 0
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            tokens = line.split()
            if not tokens:
                continue
            label = _parse_float(tokens[0], path, lineno)
            entries = []
            for token in tokens[1:]:
                idx_txt, _, val_txt = token.partition(":")
                if not val_txt:
                    raise ValueError(f"{path}:{lineno}: malformed entry {token!r}")
                try:
                    idx = int(idx_txt)
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: malformed entry {token!r}") from None
                if idx < 0:
                    raise ValueError(f"{path}:{lineno}: negative index {idx}")
                entries.append((idx, _parse_float(val_txt, path, lineno)))
                min_idx = idx if min_idx is None else min(min_idx, idx)
                max_idx = max(max_idx, idx)
            rows.append((int(label), entries))
    if not rows:
        raise ValueError(f"{path}: empty dataset")
    offset = 0 if min_idx == 0 else 1
    d = max(max_idx + 1 - offset, 1)
    points = np.zeros((len(rows), d))
    labels = np.empty(len(rows), dtype=int)
    for i, (label, entries) in enumerate(rows):
        labels[i] = label
        for idx, value in entries:
            points[i, idx - offset] = value
    return DataSet(points=points, labels=labels, name=str(path))


def save_sparse(ds: DataSet, path) -> None:
    """Write the sparse format (1-based indices, zeros omitted)."""
    labels = ds.labels if ds.labels is not None else np.zeros(ds.n, dtype=int)
    with open(path, "w") as fh:
        for label, row in zip(labels, ds.points):
            parts = [str(int(label))]
            parts += [f"{j + 1}:{float(value)!r}" for j, value in enumerate(row) if value != 0.0]
            fh.write(" ".join(parts) + "\n")


def _is_numeric_row(cells) -> bool:
    try:
        for cell in cells:
            float(cell)
    except ValueError:
        return False
    return True


def load_csv(path, label_column=None) -> DataSet:
    """Read a rectangular numeric CSV, optionally extracting a label column.

    A non-numeric first row is treated as a header; ``label_column`` may
    then name a column instead of indexing it.
    """
    import csv as csvmod

    with open(path, newline="") as fh:
        rows = [row for row in csvmod.reader(fh) if row]
    if not rows:
        raise ValueError(f"{path}: empty dataset")
    header = None
    if not _is_numeric_row(rows[0]):
        header = rows[0]
        rows = rows[1:]
        if not rows:
            raise ValueError(f"{path}: header but no data rows")
    width = len(rows[0])
    data = np.empty((len(rows), width))
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"{path}: ragged row {i + 1} ({len(row)} cells, expected {width})")
        if not _is_numeric_row(row):
            raise ValueError(f"{path}: non-numeric cell in row {i + 1}")
        data[i] = [float(cell) for cell in row]
    labels = None
    if label_column is not None:
        if isinstance(label_column, str):
            if header is None or label_column not in header:
                raise ValueError(f"{path}: no column named {label_column!r}")
            col = header.index(label_column)
        else:
            col = int(label_column)
            if not -width <= col < width:
                raise ValueError(f"{path}: label column {col} out of range")
            col %= width
        labels = data[:, col].astype(int)
        data = np.delete(data, col, axis=1)
    return DataSet(points=data, labels=labels, name=str(path))


def split(ds: DataSet, fraction: float, seed: int) -> tuple[DataSet, DataSet]:
    """Seeded train/test split; label-agnostic, disjoint, exhaustive."""
    if not 0 < fraction < 1:
        raise ValueError(f"fraction must be in (0, 1), got {fraction}")
    n_train = int(fraction * ds.n)
    if n_train == 0 or n_train == ds.n:
        raise ValueError(f"split of {ds.n} points at fraction {fraction} leaves a side empty")
    perm = np.random.default_rng(seed).permutation(ds.n)
    train_idx, test_idx = np.sort(perm[:n_train]), np.sort(perm[n_train:])

    def take(idx):
        return DataSet(
            points=ds.points[idx].copy(),
            labels=None if ds.labels is None else ds.labels[idx].copy(),
            name=ds.name,
        )

    return take(train_idx), take(test_idx)


def synth_blobs(n: int, d: int, clusters: int, spread: float, seed: int,
                center_scale: float = 10.0) -> DataSet:
    """Gaussian blobs around uniform random centers, labels = blob index.

    Points are dealt to blobs round-robin, so label counts are balanced
    within one.
    """
    if clusters < 1:
        raise ValueError(f"need at least one cluster, got {clusters}")
    rng = np.random.default_rng(seed)
    centers = rng.uniform(-center_scale, center_scale, size=(clusters, d))
    labels = np.arange(n) % clusters
    points = centers[labels] + rng.normal(0.0, spread, size=(n, d))
    return DataSet(points=points, labels=labels, name=f"blobs-{clusters}x{d}")


def minmax_scale(ds: DataSet) -> DataSet:
    """Rescale each feature to [0, 1]; constant features map to 0."""
    lo = ds.points.min(axis=0)
    span = ds.points.max(axis=0) - lo
    span[span == 0] = 1.0
    return DataSet(points=(ds.points - lo) / span, labels=ds.labels, name=ds.name)


def load_config(path) -> dict:
    """Read a flat dotted-key JSON config; nested objects are rejected."""
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    for key, value in raw.items():
        if isinstance(value, dict):
            raise ValueError(f"{path}: nested object under {key!r}; use flat dotted keys")
    return raw
