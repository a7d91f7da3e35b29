"""Hausdorff distances, convex test curves and the inscribed-polygon convergence run."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import BadParameter, EmptySet, PointNotInterior
from .focal import construct_focal_pair
from .geometry import (
    TWO_PI,
    Arc2,
    BBox,
    CompactSet,
    ConvexPolygon,
    Point2,
    Polyline,
)
from .midset import GapField, clip_polylines_to_disk, extract_midset


# --------------------------------------------------------------------------- curves

@dataclass(frozen=True)
class Circle:
    r: float = 1.0
    cx: float = 0.0
    cy: float = 0.0

    def __post_init__(self):
        if not self.r > 0:
            raise BadParameter("circle radius must be positive")

    def points(self, t: np.ndarray) -> np.ndarray:
        return np.column_stack([self.cx + self.r * np.cos(t), self.cy + self.r * np.sin(t)])

    def compact(self, pitch: float) -> CompactSet:
        return CompactSet((Arc2.full_circle(Point2(self.cx, self.cy), self.r),))

    def centroid(self) -> Point2:
        return Point2(self.cx, self.cy)


@dataclass(frozen=True)
class Ellipse:
    a: float = 1.0
    b: float = 1.0
    cx: float = 0.0
    cy: float = 0.0

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise BadParameter("ellipse semi-axes must be positive")

    def points(self, t: np.ndarray) -> np.ndarray:
        return np.column_stack([self.cx + self.a * np.cos(t), self.cy + self.b * np.sin(t)])

    def compact(self, pitch: float) -> CompactSet:
        # chord sagitta ~ step^2 * curvature / 8, far below pitch for step = pitch
        perim = math.pi * (3 * (self.a + self.b) - math.sqrt((3 * self.a + self.b) * (self.a + 3 * self.b)))
        k = max(64, int(math.ceil(perim / pitch)))
        t = TWO_PI * np.arange(k) / k
        return CompactSet((Polyline(tuple(map(tuple, self.points(t))), closed=True),))

    def centroid(self) -> Point2:
        return Point2(self.cx, self.cy)


@dataclass(frozen=True)
class SampledCurve:
    """Dense ordered samples of a closed convex curve (counterclockwise)."""

    points: tuple
    closed: bool = True
    pitch: float | None = None

    def __post_init__(self):
        xy = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if len(xy) < 3:
            raise BadParameter("sampled curve needs at least 3 points")
        object.__setattr__(self, "points", tuple(map(tuple, xy)))
        nxt = np.roll(xy, -1, axis=0) if self.closed else xy[1:]
        gaps = np.linalg.norm(nxt - xy[:len(nxt)], axis=1)
        if self.pitch is not None and gaps.max() >= self.pitch:
            raise BadParameter(f"sample gap {gaps.max():.3g} exceeds declared pitch {self.pitch:.3g}")
        d0 = xy - np.roll(xy, 1, axis=0)
        d1 = np.roll(xy, -1, axis=0) - xy
        turns = d0[:, 0] * d1[:, 1] - d0[:, 1] * d1[:, 0]
        if self.closed and turns.min() < -1e-12 * max(1.0, np.abs(xy).max()) ** 2:
            raise BadParameter("sampled curve is not convex counterclockwise")

    def array(self) -> np.ndarray:
        return np.array(self.points)

    def compact(self, pitch: float) -> CompactSet:
        return CompactSet((Polyline(self.points, closed=self.closed),))

    def centroid(self) -> Point2:
        m = self.array().mean(axis=0)
        return Point2(m[0], m[1])


Curve = Union[Circle, Ellipse, SampledCurve]


def parse_curve(text: str) -> Curve:
    """``circle:R`` or ``ellipse:A,B``."""
    kind, _, args = text.partition(":")
    try:
        vals = [float(v) for v in args.split(",")] if args else []
    except ValueError:
        raise BadParameter(f"bad curve parameters in {text!r}") from None
    kind = kind.strip().lower()
    if kind == "circle" and len(vals) in (0, 1):
        return Circle(*(vals or [1.0]))
    if kind == "ellipse" and len(vals) == 2:
        return Ellipse(*vals)
    raise BadParameter(f"unknown curve spec {text!r}; expected circle:R or ellipse:A,B")


# --------------------------------------------------------------------------- distances

def directed_hausdorff(a: CompactSet, b: CompactSet, pitch: float) -> float:
    """sup over a of d(., b), with a sampled at ``pitch`` and exact distances to b."""
    if a is None or b is None:
        raise EmptySet("Hausdorff distance of an empty set")
    return float(np.max(b.distances(a.sample(pitch))))


def hausdorff_distance(a: CompactSet, b: CompactSet, pitch: float) -> float:
    return max(directed_hausdorff(a, b, pitch), directed_hausdorff(b, a, pitch))


def inscribed_ngon(curve: Curve, n: int) -> ConvexPolygon:
    """Vertices at uniform parameter values (arc length for sampled curves)."""
    if n < 3:
        raise BadParameter(f"inscribed polygon needs n >= 3, got {n}")
    if isinstance(curve, SampledCurve):
        xy = curve.array()
        ring = np.vstack([xy, xy[:1]])
        s = np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(ring, axis=0), axis=1))])
        target = s[-1] * np.arange(n) / n
        verts = np.column_stack([np.interp(target, s, ring[:, 0]), np.interp(target, s, ring[:, 1])])
    else:
        verts = curve.points(TWO_PI * np.arange(n) / n)
    return ConvexPolygon(tuple(map(tuple, verts)))


# --------------------------------------------------------------------------- focal ring

@dataclass(frozen=True)
class RingBounds:
    r_min: float
    r_max: float

    def contains(self, radius: float, tol: float = 1e-9) -> bool:
        return self.r_min - tol <= radius <= self.r_max + tol


def focal_ring_bounds(p: ConvexPolygon, o: Point2) -> RingBounds:
    """Annulus around O holding every reflected point: twice the edge-line distances."""
    if not p.strictly_contains(o):
        raise PointNotInterior("O must be strictly inside the polygon")
    d = p.edge_distances(o)
    ring = RingBounds(2 * float(d.min()), 2 * float(d.max()))
    fp = construct_focal_pair(p, o)
    tol = 1e-9 * max(1.0, p.diameter)
    for i, b in enumerate(fp.b):
        if not ring.contains(b.dist(o), tol):
            raise AssertionError(f"B_{i} outside the focal ring")
    return ring


def curve_ring_bounds(curve: Curve, o: Point2, deviation: float, pitch: float = 1e-3) -> RingBounds:
    """Annulus for focal points of any inscribed polygon within ``deviation`` of the curve.

    Edge lines of such a polygon are at least dist(O, C) - deviation and at most
    max |X - O| over C away from O.
    """
    xy = curve.compact(pitch).sample(pitch)
    r = np.linalg.norm(xy - o.as_array(), axis=1)
    return RingBounds(2 * max(0.0, float(r.min()) - deviation - pitch), 2 * float(r.max()) + 2 * pitch)


# --------------------------------------------------------------------------- incircle

def _best_height(k: np.ndarray, bcoef: np.ndarray) -> tuple[float, float]:
    """max over y of min_i (k_i - b_i y) for a bounded family (both signs of b)."""
    up = np.nonzero(bcoef < -1e-15)[0]
    down = np.nonzero(bcoef > 1e-15)[0]
    ys = ((k[down][None, :] - k[up][:, None]) / (bcoef[down][None, :] - bcoef[up][:, None])).ravel()
    vals = np.min(k[None, :] - np.outer(ys, bcoef), axis=1)
    m = int(np.argmax(vals))
    return float(vals[m]), float(ys[m])


def chebyshev_center(p: ConvexPolygon, tol: float | None = None) -> tuple[Point2, float]:
    """Interior point maximising the distance to the boundary, and that distance.

    Golden-section search over x of the exact best depth along each vertical line.
    """
    lines = [p.supporting_line(i) for i in range(p.n)]
    a = np.array([ln.nx for ln in lines])
    b = np.array([ln.ny for ln in lines])
    c = np.array([ln.c for ln in lines])
    if tol is None:
        tol = 1e-10 * p.diameter
    xy = p.array()
    lo, hi = float(xy[:, 0].min()), float(xy[:, 0].max())

    def depth(x):
        return _best_height(c - a * x, b)[0]

    g = (math.sqrt(5) - 1) / 2
    x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
    f1, f2 = depth(x1), depth(x2)
    for _ in range(400):
        if hi - lo <= tol:
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = depth(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = depth(x1)
    x = 0.5 * (lo + hi)
    r, y = _best_height(c - a * x, b)
    return Point2(x, y), r


@dataclass(frozen=True)
class TangentialReport:
    is_tangential: bool
    r: float
    max_radial_error: float
    incenter: Point2


def exercise1_check(p: ConvexPolygon) -> TangentialReport:
    """Tangential polygons: reflecting the incenter gives points on a circle of radius 2r."""
    center, r = chebyshev_center(p)
    d = p.edge_distances(center)
    if float(d.max() - d.min()) > 1e-6 * p.diameter:
        return TangentialReport(False, r, math.nan, center)
    fp = construct_focal_pair(p, center)
    err = max(abs(bi.dist(center) - 2 * r) for bi in fp.b)
    return TangentialReport(True, r, err, center)


# --------------------------------------------------------------------------- convergence

@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    dh_polygon: float
    dh_midset: float
    dh_focal: float


def _clip_set_to_disk(s: CompactSet, radius: float, pitch: float) -> CompactSet:
    xy = s.sample(pitch)
    if np.linalg.norm(xy, axis=1).max() <= radius:
        return s
    pieces = clip_polylines_to_disk([xy], radius)
    if not pieces:
        raise EmptySet("curve misses the clipping disk")
    return CompactSet(tuple(Polyline(tuple(map(tuple, pl))) for pl in pieces))


def convergence_experiment(curve: Curve, o: Point2 | None, n_list: Sequence[int], R: float, h: float,
                           pitch: float | None = None) -> list[ConvergenceRow]:
    """Midsets of ({O}, L_n) for inscribed n-gons, measured against the curve inside D(R)."""
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise BadParameter("n_list is empty")
    if min(n_list) < 3:
        raise BadParameter("every n must be at least 3")
    if not R > 0:
        raise BadParameter("radius must be positive")
    if o is None:
        o = curve.centroid()
    pitch = h / 2 if pitch is None else pitch
    target = curve.compact(pitch)
    target_in_disk = _clip_set_to_disk(target, R, pitch)
    box = BBox.square(R)

    polys = [inscribed_ngon(curve, n) for n in n_list]
    pairs = []
    for n, poly in zip(n_list, polys):
        try:
            pairs.append(construct_focal_pair(poly, o))
        except PointNotInterior:
            raise PointNotInterior(f"O is not inside the inscribed {n}-gon") from None
    ref_focal = pairs[int(np.argmax(n_list))].l

    rows = []
    for n, poly, fp in zip(n_list, polys, pairs):
        mid = extract_midset(GapField(fp.k, fp.l), box, h)
        pieces = clip_polylines_to_disk(mid.polylines, R)
        if not pieces:
            raise EmptySet(f"numeric midset for n={n} is empty inside the disk")
        mid_set = CompactSet(tuple(Polyline(tuple(map(tuple, pl))) for pl in pieces))
        rows.append(ConvergenceRow(
            n=n,
            dh_polygon=hausdorff_distance(poly.boundary(), target, pitch),
            dh_midset=hausdorff_distance(mid_set, target_in_disk, pitch),
            dh_focal=hausdorff_distance(fp.l, ref_focal, pitch),
        ))
    return rows
