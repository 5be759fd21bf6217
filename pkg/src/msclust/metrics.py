"""External clustering evaluation against ground-truth labels.

Two criteria over the cluster-by-class contingency table:

* G: geometric mean of cluster purity and class purity, each defined by
  the largest intersection only (winner takes all).
* K: geometric mean of the average cluster purity (ACP) and average
  class purity (ASP), which use the full squared-proportion
  distributions. Each per-cluster/per-class purity equals
  1 - Gini of the corresponding normalized count distribution.

Both averages are unweighted over clusters/classes, so small clusters
and classes carry disproportionate weight; that bias is intentional and
kept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ContingencyTable:
    """Q x R matrix of counts n[q, r]: points in cluster q with class r."""

    counts: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64)
        if c.ndim != 2 or c.shape[0] < 1 or c.shape[1] < 1:
            raise ValueError("contingency table must be a non-empty 2-D matrix")
        if (c < 0).any():
            raise ValueError("contingency counts must be non-negative")
        if (c.sum(axis=1) < 1).any():
            raise ValueError("every cluster must contain at least one point")
        if (c.sum(axis=0) < 1).any():
            raise ValueError("every class must contain at least one point")
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    @property
    def cluster_totals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def class_totals(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def n_clusters(self) -> int:
        return self.counts.shape[0]

    @property
    def n_classes(self) -> int:
        return self.counts.shape[1]


@dataclass(frozen=True)
class GScores:
    pur_c: float
    pur_d: float
    g: float


@dataclass(frozen=True)
class KScores:
    acp: float
    asp: float
    k: float
    cluster_purities: np.ndarray  # length Q
    class_purities: np.ndarray  # length R


def build_contingency(predicted, truth) -> ContingencyTable:
    """Tally cluster assignments against ground-truth classes."""
    pred = np.asarray(predicted, dtype=np.int64)
    true = np.asarray(truth, dtype=np.int64)
    if pred.shape != true.shape or pred.ndim != 1:
        raise ValueError(
            f"label vectors must be equal-length 1-D: {pred.shape} vs {true.shape}"
        )
    if pred.min() < 0 or true.min() < 0:
        raise ValueError("labels must be non-negative dense integers")
    q = int(pred.max()) + 1
    r = int(true.max()) + 1
    counts = np.zeros((q, r), dtype=np.int64)
    np.add.at(counts, (pred, true), 1)
    return ContingencyTable(counts)


def g_criterion(t: ContingencyTable) -> GScores:
    n = t.counts
    total = t.total
    pur_c = float(n.max(axis=1).sum()) / total
    pur_d = float(n.max(axis=0).sum()) / total
    return GScores(pur_c, pur_d, math.sqrt(pur_c * pur_d))


def k_criterion(t: ContingencyTable) -> KScores:
    n = t.counts.astype(np.float64)
    p_cluster = (n**2).sum(axis=1) / t.cluster_totals.astype(np.float64) ** 2
    p_class = (n**2).sum(axis=0) / t.class_totals.astype(np.float64) ** 2
    acp = float(p_cluster.mean())
    asp = float(p_class.mean())
    return KScores(acp, asp, math.sqrt(acp * asp), p_cluster, p_class)


def multiclass_gini(distribution) -> float:
    """1 - sum(p_i^2) for a discrete probability vector."""
    p = np.asarray(distribution, dtype=np.float64)
    if p.ndim != 1 or (p < 0).any():
        raise ValueError("distribution must be a 1-D vector of non-negative reals")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"distribution sums to {p.sum()}, expected 1")
    return float(1.0 - (p**2).sum())
