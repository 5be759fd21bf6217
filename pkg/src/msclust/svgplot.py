"""SVG rendering of 2-D clustering results: points, trajectories, modes.

Hand-rolled SVG text output; no display dependency.
"""

from __future__ import annotations

import numpy as np

_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)

_SIZE = 640.0
_MARGIN = 40.0


def render_svg(data, assignments, modes, trajectories=None) -> str:
    """SVG document: data colored by cluster, per-datum paths, mode markers."""
    data = np.asarray(data, dtype=np.float64)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError(f"plotting requires 2-D data, got dimension {data.shape[1]}")
    assignments = np.asarray(assignments, dtype=np.int64)
    modes = np.asarray(modes, dtype=np.float64)

    stack = [data, modes]
    if trajectories:
        stack.extend(trajectories)
    allpts = np.vstack(stack)
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    span = np.maximum(hi - lo, 1e-12)
    scale = (_SIZE - 2 * _MARGIN) / span.max()

    def sx(v):
        return _MARGIN + (v - lo[0]) * scale

    def sy(v):
        # SVG y grows downward
        return _SIZE - _MARGIN - (v - lo[1]) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE:.0f}" '
        f'height="{_SIZE:.0f}" viewBox="0 0 {_SIZE:.0f} {_SIZE:.0f}">',
        f'<rect width="{_SIZE:.0f}" height="{_SIZE:.0f}" fill="white"/>',
    ]
    if trajectories:
        for j, path in enumerate(trajectories):
            p = np.asarray(path)
            color = _PALETTE[int(assignments[j]) % len(_PALETTE)]
            pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in p)
            out.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" '
                'stroke-width="0.6" opacity="0.5"/>'
            )
    for j in range(data.shape[0]):
        color = _PALETTE[int(assignments[j]) % len(_PALETTE)]
        out.append(
            f'<circle cx="{sx(data[j, 0]):.2f}" cy="{sy(data[j, 1]):.2f}" '
            f'r="2.5" fill="{color}"/>'
        )
    for q in range(modes.shape[0]):
        x, y = sx(modes[q, 0]), sy(modes[q, 1])
        out.append(
            f'<path d="M {x - 6:.2f} {y - 6:.2f} L {x + 6:.2f} {y + 6:.2f} '
            f'M {x - 6:.2f} {y + 6:.2f} L {x + 6:.2f} {y - 6:.2f}" '
            'stroke="black" stroke-width="2.5" class="mode"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
