"""Core numeric types and vector arithmetic.

Points are 1-D float64 arrays, datasets are (J, d) float64 arrays. All
values are immutable by convention: functions never mutate their inputs
and validated arrays are returned C-contiguous.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def as_point(p) -> np.ndarray:
    """Validate and convert to a finite 1-D float64 coordinate vector."""
    a = np.ascontiguousarray(p, dtype=np.float64)
    if a.ndim != 1 or a.shape[0] < 1:
        raise ValueError(f"point must be a 1-D vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("point coordinates must be finite")
    return a


def as_dataset(x) -> np.ndarray:
    """Validate and convert to a (J, d) float64 matrix, J >= 1, d >= 1."""
    a = np.ascontiguousarray(x, dtype=np.float64)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"dataset must be a (J, d) matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("dataset coordinates must be finite")
    return a


def euclidean_distance(a, b) -> float:
    a = as_point(a)
    b = as_point(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return float(np.linalg.norm(a - b))


def centroid(points) -> np.ndarray:
    """Coordinate-wise arithmetic mean of a non-empty set of points."""
    a = np.asarray(points, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] == 0:
        raise ValueError("centroid requires a non-empty (n, d) array of points")
    return a.mean(axis=0)


@dataclass(frozen=True)
class LabeledDataset:
    """A dataset together with dense ground-truth class labels 0..R-1."""

    data: np.ndarray
    labels: np.ndarray
    n_classes: int = field(init=False)

    def __post_init__(self):
        data = as_dataset(self.data)
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.ndim != 1 or labels.shape[0] != data.shape[0]:
            raise ValueError(
                f"labels length {labels.shape[0]} != dataset size {data.shape[0]}"
            )
        r = int(labels.max()) + 1 if labels.size else 0
        present = np.zeros(r, dtype=bool)
        if labels.min() < 0:
            raise ValueError("labels must be non-negative")
        present[labels] = True
        if not present.all():
            raise ValueError("labels must be dense: every id in 0..R-1 present")
        data.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "n_classes", r)

    def __len__(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]
