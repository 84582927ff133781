"""Static SVG export: quadratic Bezier edges fanned by curvature, circles
scaled by degree, optional edge labels. Output is stable byte-for-byte for
identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Tuple
from xml.sax.saxutils import escape

import numpy as np

from kgatlas.errors import MissingPositionError
from kgatlas.graph import (
    DEFAULT_RADIUS_MAX,
    DEFAULT_RADIUS_MIN,
    KnowledgeGraph,
    node_radius,
)

Point = Tuple[float, float]


@dataclass(frozen=True)
class RenderOptions:
    width: float = 800.0
    height: float = 600.0
    show_labels: bool = True
    margin_fraction: float = 0.05
    r_min: float = DEFAULT_RADIUS_MIN
    r_max: float = DEFAULT_RADIUS_MAX


def edge_control_point(p0: Point, p1: Point, curvature: float) -> Point:
    """Control point of the quadratic Bezier for one edge: chord midpoint
    offset perpendicular to the chord by curvature * chord length."""
    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    length = math.hypot(dx, dy)
    mid = ((p0[0] + p1[0]) / 2, (p0[1] + p1[1]) / 2)
    if length < 1e-12:
        return mid
    # Unit perpendicular: chord direction rotated 90 degrees.
    px, py = -dy / length, dx / length
    offset = curvature * length
    return (mid[0] + px * offset, mid[1] + py * offset)


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _fit_positions(
    graph: KnowledgeGraph, positions: np.ndarray, options: RenderOptions
) -> Dict[int, Point]:
    """Uniformly scale and center layout coordinates into the viewport."""
    n = graph.node_count
    if positions.shape[0] < n:
        raise MissingPositionError(
            f"got {positions.shape[0]} positions for {n} nodes"
        )
    if n == 0:
        return {}
    xs, ys = positions[:n, 0], positions[:n, 1]
    span_x = float(xs.max() - xs.min())
    span_y = float(ys.max() - ys.min())
    margin = options.margin_fraction * min(options.width, options.height)
    usable_w = options.width - 2 * margin
    usable_h = options.height - 2 * margin
    scale = 1.0
    if span_x > 1e-12 or span_y > 1e-12:
        scale = min(
            usable_w / span_x if span_x > 1e-12 else math.inf,
            usable_h / span_y if span_y > 1e-12 else math.inf,
        )
    cx, cy = float(xs.min() + xs.max()) / 2, float(ys.min() + ys.max()) / 2
    return {
        i: (
            options.width / 2 + (float(xs[i]) - cx) * scale,
            options.height / 2 + (float(ys[i]) - cy) * scale,
        )
        for i in range(n)
    }


def render_svg(
    graph: KnowledgeGraph,
    positions: np.ndarray,
    options: RenderOptions = RenderOptions(),
) -> str:
    """Render the graph to an SVG 1.1 document.

    Z-order contract: edge paths first, then node circles, then labels.
    """
    placed = _fit_positions(graph, positions, options)
    max_deg = graph.max_degree

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        (
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_fmt(options.width)}" height="{_fmt(options.height)}" '
            f'viewBox="0 0 {_fmt(options.width)} {_fmt(options.height)}">'
        ),
    ]

    label_anchors = []
    for e in graph.edges:
        p0, p1 = placed[e.source], placed[e.target]
        ctrl = edge_control_point(p0, p1, e.curvature)
        parts.append(
            f'<path d="M {_fmt(p0[0])} {_fmt(p0[1])} '
            f'Q {_fmt(ctrl[0])} {_fmt(ctrl[1])} {_fmt(p1[0])} {_fmt(p1[1])}" '
            f'fill="none" stroke="#999" stroke-width="1.2"/>'
        )
        # Bezier midpoint (t = 0.5) anchors the edge label along the arc.
        mx = 0.25 * p0[0] + 0.5 * ctrl[0] + 0.25 * p1[0]
        my = 0.25 * p0[1] + 0.5 * ctrl[1] + 0.25 * p1[1]
        label_anchors.append((mx, my, e.abbrev or e.relation))

    for n in graph.nodes:
        x, y = placed[n.id]
        r = node_radius(n.degree, max_deg, options.r_min, options.r_max)
        parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" '
            f'fill="#4c78a8" stroke="#fff" stroke-width="1"/>'
        )

    if options.show_labels:
        for mx, my, text in label_anchors:
            parts.append(
                f'<text x="{_fmt(mx)}" y="{_fmt(my)}" font-size="10" '
                f'text-anchor="middle" fill="#333">{escape(text)}</text>'
            )
        for n in graph.nodes:
            x, y = placed[n.id]
            r = node_radius(n.degree, max_deg, options.r_min, options.r_max)
            parts.append(
                f'<text x="{_fmt(x)}" y="{_fmt(y - r - 3)}" font-size="11" '
                f'text-anchor="middle" fill="#000">{escape(n.label)}</text>'
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
