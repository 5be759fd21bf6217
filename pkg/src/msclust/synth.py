"""Gaussian-mixture dataset synthesis and the seven built-in benchmark sets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import LabeledDataset


@dataclass(frozen=True)
class ClassSpec:
    mean: np.ndarray  # (d,)
    cov: np.ndarray  # (d, d) symmetric positive definite
    count: int


@dataclass(frozen=True)
class MixtureSpec:
    classes: tuple[ClassSpec, ...]

    def __post_init__(self):
        if not self.classes:
            raise ValueError("mixture needs at least one class")
        d = None
        norm = []
        for r, c in enumerate(self.classes):
            mean = np.ascontiguousarray(c.mean, dtype=np.float64)
            cov = np.ascontiguousarray(c.cov, dtype=np.float64)
            if mean.ndim != 1:
                raise ValueError(f"class {r}: mean must be a vector")
            if d is None:
                d = mean.shape[0]
            if mean.shape != (d,) or cov.shape != (d, d):
                raise ValueError(f"class {r}: mean/covariance shape mismatch with d={d}")
            if not np.allclose(cov, cov.T):
                raise ValueError(f"class {r}: covariance must be symmetric")
            try:
                np.linalg.cholesky(cov)
            except np.linalg.LinAlgError:
                raise ValueError(
                    f"class {r}: covariance is not positive definite"
                ) from None
            if c.count < 1:
                raise ValueError(f"class {r}: count must be >= 1")
            mean.setflags(write=False)
            cov.setflags(write=False)
            norm.append(ClassSpec(mean, cov, int(c.count)))
        object.__setattr__(self, "classes", tuple(norm))

    @property
    def dim(self) -> int:
        return self.classes[0].mean.shape[0]

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(c.count for c in self.classes)

    def scaled(self, count: int) -> "MixtureSpec":
        """Same mixture with every class count replaced by `count`."""
        return MixtureSpec(
            tuple(ClassSpec(c.mean, c.cov, count) for c in self.classes)
        )


def sample_mixture(spec: MixtureSpec, seed: int) -> LabeledDataset:
    """Draw the mixture: class r contributes count_r points mean_r + L_r z.

    L_r is the Cholesky factor of the class covariance and z a vector of
    standard normals from a PCG64 generator seeded with `seed`, so the
    dataset is a pure function of (spec, seed).
    """
    rng = np.random.default_rng(seed)
    blocks = []
    labels = []
    for r, c in enumerate(spec.classes):
        l_factor = np.linalg.cholesky(c.cov)
        z = rng.standard_normal((c.count, spec.dim))
        blocks.append(c.mean + z @ l_factor.T)
        labels.append(np.full(c.count, r, dtype=np.int64))
    return LabeledDataset(np.vstack(blocks), np.concatenate(labels))


def _iso(var: float, d: int) -> np.ndarray:
    return var * np.eye(d)


_SET1_MEANS = ([1.0, 1.0], [-1.0, -1.0], [1.0, -1.0])

_SET6_COVS = (
    _iso(0.64, 2),
    np.array([[0.73, 0.48], [0.48, 0.73]]),
    np.array([[1.09, -0.60], [-0.60, 1.09]]),
)

_SET7_MEANS = ([1.0, 1.0, 1.0], [-1.0, -1.0, 0.0], [1.0, -1.0, 0.0], [-2.0, 2.0, 2.0])

_SET7_COVS = (
    _iso(0.64, 3),
    np.array([[0.74, 0.50, -0.20], [0.50, 0.77, -0.31], [-0.20, -0.31, 0.41]]),
    np.array([[1.09, -0.60, -0.24], [-0.60, 1.73, 1.60], [-0.24, 1.60, 1.64]]),
    np.array([[0.77, 0.58, 0.73], [0.58, 0.56, 0.46], [0.73, 0.46, 0.78]]),
)


def builtin_set(set_id: int) -> MixtureSpec:
    """One of the seven built-in benchmark mixtures (1..7)."""
    if set_id == 1:
        return _three_class(_iso(0.36, 2), (250, 250, 250))
    if set_id == 2:
        return _three_class(_iso(0.64, 2), (250, 250, 250))
    if set_id == 3:
        return _three_class(_iso(0.64, 2), (50, 50, 50))
    if set_id == 4:
        return _three_class(_iso(0.64, 2), (1500, 1500, 1500))
    if set_id == 5:
        return _three_class(_iso(0.64, 2), (100, 300, 20))
    if set_id == 6:
        return MixtureSpec(
            tuple(
                ClassSpec(np.array(m), cov, 250)
                for m, cov in zip(_SET1_MEANS, _SET6_COVS)
            )
        )
    if set_id == 7:
        return MixtureSpec(
            tuple(
                ClassSpec(np.array(m), cov, n)
                for m, cov, n in zip(_SET7_MEANS, _SET7_COVS, (250, 300, 200, 200))
            )
        )
    raise ValueError(f"set id must be 1..7, got {set_id}")


def _three_class(cov: np.ndarray, counts: tuple[int, ...]) -> MixtureSpec:
    return MixtureSpec(
        tuple(
            ClassSpec(np.array(m), cov, n) for m, n in zip(_SET1_MEANS, counts)
        )
    )
