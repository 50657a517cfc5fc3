"""Deterministic SVG snapshots of 2D peeling steps.

One image per step: the points still present at that step in gray, the
step's hull vertices highlighted, and the circle through the layer's
max-norm points overlaid. All styling lives in STYLE so tests can assert
structure (element counts, circle radius) instead of pixels; float
formatting is fixed to three decimals so output bytes are reproducible.
"""

from __future__ import annotations

import math
from typing import List

from .core import DomainError, norm_sq
from .peel import LayerAssignment, layer_max_norm_sq

STYLE = {
    "background": "#ffffff",
    "remaining_fill": "#9e9e9e",
    "vertex_fill": "#007fd4",
    "circle_stroke": "#e8821e",
    "point_radius": 2.5,
    "vertex_radius": 3.5,
    "circle_width": 1.5,
    "unit": 28.0,  # pixels per lattice unit
    "margin": 24.0,  # pixels around the drawing
}


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_step(a: LayerAssignment, step: int) -> str:
    """SVG document showing layer `step` of a 2D peeling."""
    if a.source.dimension != 2:
        raise DomainError(
            f"rendering requires dimension 2, got {a.source.dimension}"
        )
    if not 1 <= step <= a.num_layers:
        raise DomainError(
            f"step {step} out of range 1..{a.num_layers}"
        )
    remaining = [(p, lab) for p, lab in a if lab >= step]
    radius = math.sqrt(layer_max_norm_sq(a)[step - 1])

    xs = [p[0] for p, _ in remaining]
    ys = [p[1] for p, _ in remaining]
    lo_x = min(min(xs), -radius)
    hi_x = max(max(xs), radius)
    lo_y = min(min(ys), -radius)
    hi_y = max(max(ys), radius)

    unit = STYLE["unit"]
    margin = STYLE["margin"]
    width = (hi_x - lo_x) * unit + 2 * margin
    height = (hi_y - lo_y) * unit + 2 * margin

    def sx(x: float) -> str:
        return _fmt(margin + (x - lo_x) * unit)

    def sy(y: float) -> str:
        return _fmt(margin + (hi_y - y) * unit)  # flip: svg y grows downward

    parts: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect width="100%" height="100%" fill="{STYLE["background"]}"/>',
        f'<circle class="norm-circle" cx="{sx(0)}" cy="{sy(0)}" '
        f'r="{_fmt(radius * unit)}" fill="none" '
        f'stroke="{STYLE["circle_stroke"]}" '
        f'stroke-width="{_fmt(STYLE["circle_width"])}"/>',
    ]
    for p, lab in remaining:
        if lab == step:
            continue
        parts.append(
            f'<circle class="pt" cx="{sx(p[0])}" cy="{sy(p[1])}" '
            f'r="{_fmt(STYLE["point_radius"])}" '
            f'fill="{STYLE["remaining_fill"]}"/>'
        )
    for p, lab in remaining:
        if lab != step:
            continue
        parts.append(
            f'<circle class="vertex" cx="{sx(p[0])}" cy="{sy(p[1])}" '
            f'r="{_fmt(STYLE["vertex_radius"])}" '
            f'fill="{STYLE["vertex_fill"]}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
