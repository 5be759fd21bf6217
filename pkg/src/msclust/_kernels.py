"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The backend is chosen once at import from the ``MSCLUST_BACKEND``
environment variable: ``numba`` (require numba, fail loudly if missing),
``numpy`` (force the fallback), or ``auto``/unset (numba if importable).
`benchmarks/backend_bench.py` times the two paths against each other.

All kernels operate on float64 C-contiguous arrays and sum neighbor
coordinates in ascending index order, so both backends follow the same
arithmetic sequence.
"""

from __future__ import annotations

import os

import numpy as np

_choice = os.environ.get("MSCLUST_BACKEND", "auto").strip().lower()
if _choice == "numpy":
    NUMBA_ENABLED = False
elif _choice == "numba":
    from numba import njit

    NUMBA_ENABLED = True
elif _choice in ("", "auto"):
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False
else:
    raise RuntimeError(
        f"MSCLUST_BACKEND={_choice!r}: expected 'auto', 'numba' or 'numpy'"
    )


def _radius_indices_np(positions, x, h):
    diff = positions - x
    d2 = np.einsum("ij,ij->i", diff, diff)
    return np.flatnonzero(d2 <= h * h).astype(np.int64)


def _radius_subset_np(positions, cand, x, h):
    diff = positions[cand] - x
    d2 = np.einsum("ij,ij->i", diff, diff)
    return cand[d2 <= h * h]


def _det_trajectories_np(positions, h, th1, max_iters):
    J, d = positions.shape
    finals = np.empty_like(positions)
    total = 0
    th1sq = th1 * th1
    hsq = h * h
    for j in range(J):
        x = positions[j].copy()
        for _ in range(max_iters):
            diff = positions - x
            mask = np.einsum("ij,ij->i", diff, diff) <= hsq
            m = positions[mask].mean(axis=0) - x
            x += m
            total += 1
            if m @ m <= th1sq:
                break
        finals[j] = x
    return finals, total


def _stoch_run_np(positions, draws, h, th1, window, budget):
    hsq = h * h
    th1sq = th1 * th1
    streak = 0
    shifts = 0
    for t in range(budget):
        j = draws[t]
        x = positions[j]
        diff = positions - x
        mask = np.einsum("ij,ij->i", diff, diff) <= hsq
        m = positions[mask].mean(axis=0) - x
        positions[j] = x + m
        shifts += 1
        streak = streak + 1 if m @ m <= th1sq else 0
        if streak >= window:
            break
    return shifts


class FrozenGrid:
    """CSR layout of a uniform grid over immutable positions, cell side h.

    Point ids are stored contiguously per cell: cell k (in sorted key
    order) owns ``order[starts[k]:starts[k+1]]``. Returns None from
    `build_frozen_grid` when the key space cannot be linearized safely.
    """

    __slots__ = ("keys", "starts", "order", "cell_min", "cell_max", "strides", "offsets")

    def __init__(self, keys, starts, order, cell_min, cell_max, strides, offsets):
        self.keys = keys
        self.starts = starts
        self.order = order
        self.cell_min = cell_min
        self.cell_max = cell_max
        self.strides = strides
        self.offsets = offsets


def build_frozen_grid(positions, h):
    d = positions.shape[1]
    cells = np.floor(positions / h).astype(np.int64)
    cell_min = cells.min(axis=0)
    cell_max = cells.max(axis=0)
    extents = cell_max - cell_min + 1
    if float(np.prod(extents.astype(np.float64))) > 2**62:
        return None
    strides = np.ones(d, dtype=np.int64)
    for k in range(1, d):
        strides[k] = strides[k - 1] * extents[k - 1]
    keys_all = (cells - cell_min) @ strides
    order = np.argsort(keys_all, kind="stable").astype(np.int64)
    sorted_keys = keys_all[order]
    uniq, first = np.unique(sorted_keys, return_index=True)
    starts = np.append(first, sorted_keys.shape[0]).astype(np.int64)
    offsets = np.array(
        np.meshgrid(*([np.array([-1, 0, 1])] * d), indexing="ij")
    ).reshape(d, -1).T.astype(np.int64)
    return FrozenGrid(uniq, starts, order, cell_min, cell_max, strides, offsets)


def _grid_candidates(grid: FrozenGrid, x, h):
    cx = np.floor(x / h).astype(np.int64)
    chunks = []
    for off in grid.offsets:
        cc = cx + off
        if (cc < grid.cell_min).any() or (cc > grid.cell_max).any():
            continue
        key = (cc - grid.cell_min) @ grid.strides
        i = np.searchsorted(grid.keys, key)
        if i < grid.keys.shape[0] and grid.keys[i] == key:
            chunks.append(grid.order[grid.starts[i]:grid.starts[i + 1]])
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks)


def _det_trajectories_grid_np(positions, grid, h, th1, max_iters):
    J = positions.shape[0]
    finals = np.empty_like(positions)
    total = 0
    hsq = h * h
    th1sq = th1 * th1
    for j in range(J):
        x = positions[j].copy()
        for _ in range(max_iters):
            cand = _grid_candidates(grid, x, h)
            pts = positions[cand]
            diff = pts - x
            m = pts[np.einsum("ij,ij->i", diff, diff) <= hsq].mean(axis=0) - x
            x += m
            total += 1
            if m @ m <= th1sq:
                break
        finals[j] = x
    return finals, total


def _pair_edges_np(positions, th2):
    """Index pairs (i, j), i < j, at Euclidean distance <= th2."""
    J = positions.shape[0]
    out_i: list[np.ndarray] = []
    out_j: list[np.ndarray] = []
    chunk = max(1, 2_000_000 // max(J, 1))
    t2 = th2 * th2
    for lo in range(0, J, chunk):
        hi = min(lo + chunk, J)
        diff = positions[lo:hi, None, :] - positions[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        ii, jj = np.nonzero(d2 <= t2)
        ii += lo
        keep = ii < jj
        out_i.append(ii[keep])
        out_j.append(jj[keep])
    return np.concatenate(out_i), np.concatenate(out_j)


if NUMBA_ENABLED:

    @njit(cache=True)
    def _radius_indices_nb(positions, x, h):  # pragma: no cover - numba
        J, d = positions.shape
        hsq = h * h
        hits = np.empty(J, dtype=np.int64)
        n = 0
        for i in range(J):
            s = 0.0
            for k in range(d):
                t = positions[i, k] - x[k]
                s += t * t
            if s <= hsq:
                hits[n] = i
                n += 1
        return hits[:n].copy()

    @njit(cache=True)
    def _radius_subset_nb(positions, cand, x, h):  # pragma: no cover
        d = positions.shape[1]
        hsq = h * h
        hits = np.empty(cand.shape[0], dtype=np.int64)
        n = 0
        for c in range(cand.shape[0]):
            i = cand[c]
            s = 0.0
            for k in range(d):
                t = positions[i, k] - x[k]
                s += t * t
            if s <= hsq:
                hits[n] = i
                n += 1
        return hits[:n].copy()

    @njit(cache=True)
    def _det_trajectories_nb(positions, h, th1, max_iters):  # pragma: no cover
        J, d = positions.shape
        finals = np.empty_like(positions)
        mean = np.empty(d)
        total = 0
        hsq = h * h
        th1sq = th1 * th1
        for j in range(J):
            x = positions[j].copy()
            for _ in range(max_iters):
                for k in range(d):
                    mean[k] = 0.0
                cnt = 0
                for i in range(J):
                    s = 0.0
                    for k in range(d):
                        t = positions[i, k] - x[k]
                        s += t * t
                    if s <= hsq:
                        cnt += 1
                        for k in range(d):
                            mean[k] += positions[i, k]
                msq = 0.0
                for k in range(d):
                    mk = mean[k] / cnt - x[k]
                    msq += mk * mk
                    x[k] += mk
                total += 1
                if msq <= th1sq:
                    break
            finals[j] = x
        return finals, total

    @njit(cache=True)
    def _stoch_run_nb(positions, draws, h, th1, window, budget):  # pragma: no cover
        J, d = positions.shape
        mean = np.empty(d)
        hsq = h * h
        th1sq = th1 * th1
        streak = 0
        shifts = 0
        for t in range(budget):
            j = draws[t]
            for k in range(d):
                mean[k] = 0.0
            cnt = 0
            for i in range(J):
                s = 0.0
                for k in range(d):
                    tt = positions[i, k] - positions[j, k]
                    s += tt * tt
                if s <= hsq:
                    cnt += 1
                    for k in range(d):
                        mean[k] += positions[i, k]
            msq = 0.0
            for k in range(d):
                mk = mean[k] / cnt - positions[j, k]
                msq += mk * mk
                positions[j, k] += mk
            shifts += 1
            if msq <= th1sq:
                streak += 1
            else:
                streak = 0
            if streak >= window:
                break
        return shifts

    @njit(cache=True)
    def _det_grid_inner(
        positions, keys, starts, order, cell_min, cell_max, strides, offsets,
        h, th1, max_iters,
    ):  # pragma: no cover - numba
        J, d = positions.shape
        ncells = keys.shape[0]
        noff = offsets.shape[0]
        finals = np.empty_like(positions)
        mean = np.empty(d)
        cc = np.empty(d, dtype=np.int64)
        total = 0
        hsq = h * h
        th1sq = th1 * th1
        for j in range(J):
            x = positions[j].copy()
            for _ in range(max_iters):
                for k in range(d):
                    mean[k] = 0.0
                cnt = 0
                for o in range(noff):
                    ok = True
                    key = np.int64(0)
                    for k in range(d):
                        cc[k] = np.int64(np.floor(x[k] / h)) + offsets[o, k]
                        if cc[k] < cell_min[k] or cc[k] > cell_max[k]:
                            ok = False
                            break
                        key += (cc[k] - cell_min[k]) * strides[k]
                    if not ok:
                        continue
                    ci = np.searchsorted(keys, key)
                    if ci >= ncells or keys[ci] != key:
                        continue
                    for t in range(starts[ci], starts[ci + 1]):
                        i = order[t]
                        s = 0.0
                        for k in range(d):
                            tt = positions[i, k] - x[k]
                            s += tt * tt
                        if s <= hsq:
                            cnt += 1
                            for k in range(d):
                                mean[k] += positions[i, k]
                msq = 0.0
                for k in range(d):
                    mk = mean[k] / cnt - x[k]
                    msq += mk * mk
                    x[k] += mk
                total += 1
                if msq <= th1sq:
                    break
            finals[j] = x
        return finals, total

    def _det_trajectories_grid_nb(positions, grid, h, th1, max_iters):
        return _det_grid_inner(
            positions, grid.keys, grid.starts, grid.order, grid.cell_min,
            grid.cell_max, grid.strides, grid.offsets, h, th1, max_iters,
        )

    radius_indices = _radius_indices_nb
    radius_subset = _radius_subset_nb
    det_trajectories = _det_trajectories_nb
    det_trajectories_grid = _det_trajectories_grid_nb
    stoch_run = _stoch_run_nb
else:
    radius_indices = _radius_indices_np
    radius_subset = _radius_subset_np
    det_trajectories = _det_trajectories_np
    det_trajectories_grid = _det_trajectories_grid_np
    stoch_run = _stoch_run_np

pair_edges = _pair_edges_np
