"""Polygon generators used by tests, scripts and the acceptance run."""

from __future__ import annotations

import math

import numpy as np

from .geometry import ConvexPolygon


def square(half: float = 1.0) -> ConvexPolygon:
    return ConvexPolygon(((half, -half), (half, half), (-half, half), (-half, -half)))


def triangle_345() -> ConvexPolygon:
    return ConvexPolygon(((0.0, 0.0), (4.0, 0.0), (0.0, 3.0)))


def regular_polygon(n: int, circumradius: float = 1.0, phase: float = 0.0) -> ConvexPolygon:
    t = phase + 2 * np.pi * np.arange(n) / n
    return ConvexPolygon(tuple(zip(circumradius * np.cos(t), circumradius * np.sin(t))))


def rectangle(w: float, h: float) -> ConvexPolygon:
    return ConvexPolygon(((-w / 2, -h / 2), (w / 2, -h / 2), (w / 2, h / 2), (-w / 2, h / 2)))


def random_convex_polygon(rng: np.random.Generator, n: int) -> ConvexPolygon:
    """Vertices on a random rotated ellipse at jittered, well separated angles."""
    a = rng.uniform(0.5, 2.0)
    b = rng.uniform(0.5, 2.0)
    rot = rng.uniform(0, 2 * math.pi)
    gaps = rng.uniform(0.4, 1.0, n)
    t = np.cumsum(gaps) / gaps.sum() * 2 * math.pi
    x, y = a * np.cos(t), b * np.sin(t)
    c, s = math.cos(rot), math.sin(rot)
    shift = rng.uniform(-1, 1, 2)
    xy = np.column_stack([c * x - s * y + shift[0], s * x + c * y + shift[1]])
    return ConvexPolygon(tuple(map(tuple, xy)))


def random_triangle(rng: np.random.Generator) -> ConvexPolygon:
    """Triangle with all angles at least 10 degrees."""
    while True:
        xy = rng.uniform(-2, 2, (3, 2))
        cr = (xy[1, 0] - xy[0, 0]) * (xy[2, 1] - xy[0, 1]) - (xy[1, 1] - xy[0, 1]) * (xy[2, 0] - xy[0, 0])
        if cr < 0:
            xy = xy[::-1]
        ang = []
        for i in range(3):
            u, v = xy[i - 1] - xy[i], xy[(i + 1) % 3] - xy[i]
            ang.append(math.degrees(math.acos(np.dot(u, v) / np.linalg.norm(u) / np.linalg.norm(v))))
        if min(ang) >= 10:
            return ConvexPolygon(tuple(map(tuple, xy)))
