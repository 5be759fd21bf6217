"""Flat-kernel mean-shift clustering engines.

Two engines share the same shift rule (move a point to the mean of its
closed-ball neighborhood) and the same final merge step:

* ``cluster_deterministic``: each datum is iterated to convergence
  against the frozen original positions, independently of the others.
* ``cluster_stochastic``: data indices are drawn uniformly with
  replacement; each draw applies a single shift against the live,
  already-shifted positions, so the whole dataset climbs collectively.

Converged positions within ``th2`` of each other are merged transitively
(single linkage) into clusters.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .geometry import as_dataset, as_point, centroid
from .neighbors import NeighborIndex


@dataclass(frozen=True)
class RunConfig:
    """Hyperparameters for one clustering run.

    ``global_iter_budget`` and ``stagnation_window`` apply to the
    stochastic engine only and default to 100*J and J respectively when
    left unset.
    """

    h: float
    th1: float
    th2: float
    seed: int = 0
    max_inner_iters: int = 500
    global_iter_budget: int | None = None
    stagnation_window: int | None = None

    def __post_init__(self):
        if self.h <= 0 or self.th1 <= 0 or self.th2 <= 0:
            raise ValueError("h, th1 and th2 must all be positive")
        if self.max_inner_iters < 1:
            raise ValueError("max_inner_iters must be >= 1")
        if self.global_iter_budget is not None and self.global_iter_budget < 1:
            raise ValueError("global_iter_budget must be >= 1")
        if self.stagnation_window is not None and self.stagnation_window < 1:
            raise ValueError("stagnation_window must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


@dataclass(frozen=True)
class ClusteringResult:
    """Cluster assignment plus the shifted geometry that produced it."""

    assignments: np.ndarray  # (J,) int64, cluster ids 0..Q-1
    modes: np.ndarray  # (Q, d) centroid of each cluster's final positions
    final_positions: np.ndarray  # (J, d)
    shift_count: int  # total single shifts performed
    trajectories: list[np.ndarray] | None = None  # per-datum (T_j, d) paths

    @property
    def n_clusters(self) -> int:
        return self.modes.shape[0]


def mean_shift_vector(index: NeighborIndex, x) -> np.ndarray:
    """The shift from x to the mean of its closed-ball neighborhood."""
    x = as_point(x)
    idx = index.query(x)
    if idx.size == 0:
        raise ValueError("empty neighborhood: x is not within h of any stored point")
    return centroid(index.positions[idx]) - x


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        p = self.parent
        root = i
        while p[root] != root:
            root = p[root]
        while p[i] != root:
            p[i], i = root, p[i]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def merge_modes(final_positions, th2: float) -> tuple[np.ndarray, np.ndarray]:
    """Single-linkage merge of converged positions into clusters.

    Positions at distance <= th2 are linked; clusters are the connected
    components of the link graph (so chains merge transitively). Returns
    (assignments, modes) with cluster ids numbered by first appearance
    and each mode the centroid of its members' final positions.
    """
    pos = as_dataset(final_positions)
    if th2 <= 0:
        raise ValueError("th2 must be positive")
    J = pos.shape[0]
    dsu = _DisjointSet(J)
    ii, jj = _kernels.pair_edges(pos, th2)
    for a, b in zip(ii.tolist(), jj.tolist()):
        dsu.union(a, b)
    labels = np.empty(J, dtype=np.int64)
    first: dict[int, int] = {}
    for j in range(J):
        root = dsu.find(j)
        if root not in first:
            first[root] = len(first)
        labels[j] = first[root]
    q = len(first)
    modes = np.empty((q, pos.shape[1]))
    for c in range(q):
        modes[c] = pos[labels == c].mean(axis=0)
    return labels, modes


def _one_trajectory(index, x0, th1, max_iters, record):
    x = x0.copy()
    path = [x.copy()] if record else None
    th1sq = th1 * th1
    steps = 0
    for _ in range(max_iters):
        m = mean_shift_vector(index, x)
        x += m
        steps += 1
        if record:
            path.append(x.copy())
        if m @ m <= th1sq:
            break
    return x, steps, path


def cluster_deterministic(
    data,
    config: RunConfig,
    *,
    strategy: str = "auto",
    record_trajectories: bool = False,
    n_threads: int = 1,
) -> ClusteringResult:
    """Shift every datum to convergence against the frozen original data.

    The result partition is invariant under permutation of the input
    (cluster ids may relabel). With ``n_threads > 1`` trajectories are
    evaluated concurrently against the read-only index.
    """
    data = as_dataset(data)
    J = data.shape[0]

    fast = not record_trajectories and n_threads == 1
    grid = None
    if fast and strategy in ("auto", "grid") and data.shape[1] <= 6:
        grid = _kernels.build_frozen_grid(data, config.h)
    if fast and grid is not None:
        finals, total = _kernels.det_trajectories_grid(
            data, grid, config.h, config.th1, config.max_inner_iters
        )
        trajectories = None
    elif fast and strategy in ("auto", "naive"):
        # whole-loop kernel over the frozen positions
        finals, total = _kernels.det_trajectories(
            data, config.h, config.th1, config.max_inner_iters
        )
        trajectories = None
    else:
        index = NeighborIndex(data, config.h, strategy=strategy)
        finals = np.empty_like(data)
        trajectories = [None] * J if record_trajectories else None
        total = 0

        def run(j):
            return _one_trajectory(
                index, data[j], config.th1, config.max_inner_iters, record_trajectories
            )

        if n_threads > 1:
            with ThreadPoolExecutor(max_workers=n_threads) as pool:
                results = list(pool.map(run, range(J)))
        else:
            results = [run(j) for j in range(J)]
        for j, (x, steps, path) in enumerate(results):
            finals[j] = x
            total += steps
            if record_trajectories:
                trajectories[j] = np.asarray(path)

    assignments, modes = merge_modes(finals, config.th2)
    return ClusteringResult(assignments, modes, finals, total, trajectories)


def cluster_stochastic(
    data,
    config: RunConfig,
    *,
    strategy: str = "auto",
    record_trajectories: bool = False,
) -> ClusteringResult:
    """Collective mean-shift: one random single shift per iteration.

    Stops when the last ``stagnation_window`` consecutive shifts all had
    norm <= th1, or after ``global_iter_budget`` shifts. Bit-identical
    output for identical (data, config) including the seed.
    """
    data = as_dataset(data)
    J = data.shape[0]
    budget = config.global_iter_budget or 100 * J
    window = config.stagnation_window or J
    rng = np.random.default_rng(config.seed)
    draws = rng.integers(0, J, size=budget)

    if strategy in ("auto", "naive") and not record_trajectories:
        live = data.copy()
        shifts = int(_kernels.stoch_run(live, draws, config.h, config.th1, window, budget))
        trajectories = None
    else:
        index = NeighborIndex(data, config.h, strategy=strategy)
        trajectories = (
            [[data[j].copy()] for j in range(J)] if record_trajectories else None
        )
        th1sq = config.th1 * config.th1
        streak = 0
        shifts = 0
        for t in range(budget):
            j = int(draws[t])
            m = mean_shift_vector(index, index.positions[j])
            moved = index.positions[j] + m
            index.update(j, moved)
            shifts += 1
            if record_trajectories:
                trajectories[j].append(moved.copy())
            streak = streak + 1 if m @ m <= th1sq else 0
            if streak >= window:
                break
        live = index.positions.copy()
        if record_trajectories:
            trajectories = [np.asarray(p) for p in trajectories]

    assignments, modes = merge_modes(live, config.th2)
    return ClusteringResult(assignments, modes, live, shifts, trajectories)
