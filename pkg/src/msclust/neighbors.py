"""Exact radius (closed-ball) neighbor queries over mutable point positions.

Two interchangeable strategies return identical index sets:

* ``naive``: linear scan over all positions.
* ``grid``: uniform hash grid with cell side h; a query inspects the
  3^d cells around the query point, which covers every point within a
  closed ball of radius h exactly. For d > 6 the grid silently falls
  back to the naive scan (3^d cell fan-out stops paying off).

Datum ids are stable across position updates.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import _kernels
from .geometry import as_dataset, as_point

_GRID_MAX_DIM = 6

STRATEGIES = ("auto", "naive", "grid")


class NeighborIndex:
    """Radius-h neighbor index over J mutable point slots."""

    def __init__(self, positions, h: float, strategy: str = "auto"):
        if h <= 0:
            raise ValueError(f"bandwidth h must be positive, got {h}")
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}, expected {STRATEGIES}")
        self._pos = as_dataset(positions).copy()
        self.h = float(h)
        d = self._pos.shape[1]
        if strategy == "auto":
            strategy = "grid" if d <= _GRID_MAX_DIM else "naive"
        elif strategy == "grid" and d > _GRID_MAX_DIM:
            strategy = "naive"
        self.strategy = strategy
        if strategy == "grid":
            self._offsets = list(itertools.product((-1, 0, 1), repeat=d))
            self._cells: dict[tuple, list[int]] = {}
            self._cell_of: list[tuple] = []
            for i in range(self._pos.shape[0]):
                c = self._cell(self._pos[i])
                self._cells.setdefault(c, []).append(i)
                self._cell_of.append(c)

    def __len__(self) -> int:
        return self._pos.shape[0]

    @property
    def dim(self) -> int:
        return self._pos.shape[1]

    @property
    def positions(self) -> np.ndarray:
        """Current positions; view, do not mutate (use update)."""
        return self._pos

    def _cell(self, p) -> tuple:
        return tuple(np.floor(p / self.h).astype(np.int64))

    def query(self, x) -> np.ndarray:
        """Ascending indices i with ||x - position(i)|| <= h (closed ball)."""
        x = as_point(x)
        if x.shape[0] != self.dim:
            raise ValueError(f"dimension mismatch: query {x.shape[0]}, index {self.dim}")
        if self.strategy == "naive":
            return _kernels.radius_indices(self._pos, x, self.h)
        base = self._cell(x)
        cand: list[int] = []
        for off in self._offsets:
            cell = tuple(b + o for b, o in zip(base, off))
            got = self._cells.get(cell)
            if got:
                cand.extend(got)
        if not cand:
            return np.empty(0, dtype=np.int64)
        cand_arr = np.array(sorted(cand), dtype=np.int64)
        return _kernels.radius_subset(self._pos, cand_arr, x, self.h)

    def update(self, i: int, p) -> None:
        """Move datum i to position p; later queries see the new position."""
        if not 0 <= i < len(self):
            raise IndexError(f"datum index {i} out of range 0..{len(self) - 1}")
        p = as_point(p)
        if p.shape[0] != self.dim:
            raise ValueError(f"dimension mismatch: point {p.shape[0]}, index {self.dim}")
        self._pos[i] = p
        if self.strategy == "grid":
            new = self._cell(p)
            old = self._cell_of[i]
            if new != old:
                self._cells[old].remove(i)
                if not self._cells[old]:
                    del self._cells[old]
                self._cells.setdefault(new, []).append(i)
                self._cell_of[i] = new
