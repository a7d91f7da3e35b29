"""Deterministic SVG figures of the construction.

Geometry is drawn in world coordinates inside a group carrying a y-up
transform; labels are placed in canvas coordinates so text stays upright.
Every number goes through ``_num`` so identical scenes give identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import Arc2, BBox, ConvexPolygon, Point2
from .scene import FigureSpec


def _num(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


@dataclass
class SceneGeometry:
    """Computed artifacts available for drawing; absent layers stay None."""

    polygon: ConvexPolygon | None = None
    o: Point2 | None = None
    b: Sequence[Point2] | None = None
    cells: Sequence[ConvexPolygon] | None = None
    midset: Sequence[tuple[Point2, Point2]] | None = None
    arcs: Sequence[Arc2] | None = None
    contour: Sequence[np.ndarray] | None = None


def _arc_path(arc: Arc2) -> str:
    if arc.extent >= 2 * math.pi - 1e-12:
        c, r = arc.center, arc.radius
        return (f"M {_num(c.x + r)} {_num(c.y)} A {_num(r)} {_num(r)} 0 1 1 {_num(c.x - r)} {_num(c.y)} "
                f"A {_num(r)} {_num(r)} 0 1 1 {_num(c.x + r)} {_num(c.y)}")
    p0, p1 = arc.start_point, arc.end_point
    large = 1 if arc.extent > math.pi else 0
    # sweep-flag 1 is the positive-angle (counterclockwise) direction of world coordinates
    sweep = 1 if arc.orientation == "ccw" else 0
    r = _num(arc.radius)
    return f"M {_num(p0.x)} {_num(p0.y)} A {r} {r} 0 {large} {sweep} {_num(p1.x)} {_num(p1.y)}"


def _poly_points(xy) -> str:
    return " ".join(f"{_num(x)},{_num(y)}" for x, y in xy)


def render_svg(geom: SceneGeometry, spec: FigureSpec, view: BBox) -> str:
    W, H = spec.canvas
    margin = 0.05
    box = view.inflate(margin * max(view.width, view.height))
    s = min(W / box.width, H / box.height)
    tx = (W - s * box.width) / 2 - s * box.xmin
    ty = (H - s * box.height) / 2 + s * box.ymax
    sw = spec.stroke_width

    def canvas(p: Point2) -> tuple[float, float]:
        return tx + s * p.x, ty - s * p.y

    dot = 3.0 * sw / s
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="#ffffff"/>',
        f'<g id="world" transform="matrix({_num(s)} 0 0 {_num(-s)} {_num(tx)} {_num(ty)})" '
        f'fill="none" stroke-linejoin="round" stroke-linecap="round">',
    ]
    labels = []
    col = spec.colors
    for layer in spec.layers:
        out.append(f'<g id="{layer}" stroke="{col[layer]}">')
        if layer == "voronoi":
            for cell in geom.cells:
                out.append(f'<polygon points="{_poly_points((v.x, v.y) for v in cell.vertices)}" '
                           f'stroke-width="{_num(sw * 0.6)}" stroke-dasharray="4 3" vector-effect="non-scaling-stroke"/>')
        elif layer == "polygon":
            P = geom.polygon
            out.append(f'<polygon points="{_poly_points((v.x, v.y) for v in P.vertices)}" '
                       f'stroke-width="{_num(sw * 1.4)}" vector-effect="non-scaling-stroke"/>')
            for i, v in enumerate(P.vertices):
                labels.append((canvas(v), f"A{i + 1}", col[layer]))
        elif layer == "focal":
            o = geom.o
            for i, b in enumerate(geom.b):
                out.append(f'<line x1="{_num(o.x)}" y1="{_num(o.y)}" x2="{_num(b.x)}" y2="{_num(b.y)}" '
                           f'stroke-width="{_num(sw * 0.5)}" stroke-dasharray="2 3" vector-effect="non-scaling-stroke"/>')
            for i, b in enumerate(geom.b):
                out.append(f'<circle cx="{_num(b.x)}" cy="{_num(b.y)}" r="{_num(dot)}" fill="{col[layer]}" stroke="none"/>')
                labels.append((canvas(b), f"B{i + 1}", col[layer]))
            out.append(f'<circle cx="{_num(o.x)}" cy="{_num(o.y)}" r="{_num(dot)}" fill="#000000" stroke="none"/>')
            labels.append((canvas(o), "O", "#000000"))
        elif layer == "midset":
            for a, b in geom.midset:
                out.append(f'<line x1="{_num(a.x)}" y1="{_num(a.y)}" x2="{_num(b.x)}" y2="{_num(b.y)}" '
                           f'stroke-width="{_num(sw)}" vector-effect="non-scaling-stroke"/>')
        elif layer == "arcs":
            for arc in geom.arcs:
                out.append(f'<path d="{_arc_path(arc)}" stroke-width="{_num(sw)}" vector-effect="non-scaling-stroke"/>')
        elif layer == "contour":
            for pl in geom.contour:
                out.append(f'<polyline points="{_poly_points(pl)}" stroke-width="{_num(sw)}" '
                           f'vector-effect="non-scaling-stroke"/>')
        out.append("</g>")
    out.append("</g>")
    if labels:
        out.append('<g id="labels" font-family="serif" font-size="13">')
        for (x, y), text, color in labels:
            out.append(f'<text x="{_num(x + 5)}" y="{_num(y - 5)}" fill="{color}">{text}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
