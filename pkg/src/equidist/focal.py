"""Focal sets realising a convex polygon as an equidistant set.

With O inside the polygon, reflecting O across the supporting line of every
edge gives points B_i; the polygon boundary is then exactly the set of points
equidistant from {O} and {B_1, ..., B_n}. Edge i is recovered as the part of
the bisector of O B_i lying in the Voronoi cell of B_i. A connected
alternative to the finite set {B_i} is a closed chain of circular arcs, one
around each vertex, all of whose circles pass through O.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConstructionError, DuplicateSites, PointNotInterior
from .geometry import (
    EPS,
    TWO_PI,
    Arc2,
    BBox,
    CompactSet,
    ConvexPolygon,
    HalfPlane,
    Point2,
    Segment2,
    clip_convex_region,
    clip_line,
    perpendicular_bisector,
    points_array,
    reflect_point,
)

CONSTRUCTION_TOL = 1e-9
VERIFY_TOL = 1e-8


@dataclass(frozen=True)
class FocalPair:
    o: Point2
    b: tuple[Point2, ...]

    @property
    def k(self) -> CompactSet:
        return CompactSet((self.o,))

    @property
    def l(self) -> CompactSet:
        return CompactSet(tuple(self.b))


@dataclass(frozen=True)
class VoronoiCell:
    site_index: int
    site: Point2
    halfplanes: tuple[HalfPlane, ...]
    region: ConvexPolygon


@dataclass(frozen=True)
class MidsetExact:
    pieces: tuple[Segment2, ...]

    def as_set(self) -> CompactSet:
        return CompactSet(self.pieces)


@dataclass(frozen=True)
class ArcChain:
    arcs: tuple[Arc2, ...]

    def as_set(self) -> CompactSet:
        return CompactSet(self.arcs)

    def closure_error(self) -> float:
        """Largest gap between the end of one arc and the start of the next."""
        n = len(self.arcs)
        return max(self.arcs[i].end_point.dist(self.arcs[(i + 1) % n].start_point) for i in range(n))


@dataclass(frozen=True)
class ReconstructionReport:
    max_endpoint_error: float
    per_edge_errors: tuple[float, ...]


@dataclass(frozen=True)
class EquidistanceReport:
    max_gap: float
    worst_point: Point2
    eps: float

    @property
    def passed(self) -> bool:
        return self.max_gap < self.eps


def _require_interior(p: ConvexPolygon, o: Point2) -> None:
    if not p.strictly_contains(o):
        raise PointNotInterior(f"O = ({o.x:g}, {o.y:g}) is not strictly inside the polygon "
                               f"(margin {p.interior_margin(o):.3g})")


def vertex_residuals(p: ConvexPolygon, fp: FocalPair) -> np.ndarray:
    """Per-vertex residuals of d(A_{i+1}, B_i) = d(A_{i+1}, O) = d(A_{i+1}, B_{i+1}).

    Row i holds the two absolute differences at the shared vertex of edges i, i+1.
    """
    n = p.n
    out = np.empty((n, 2))
    for i in range(n):
        a = p.vertex(i + 1)
        do = a.dist(fp.o)
        out[i, 0] = abs(a.dist(fp.b[i]) - do)
        out[i, 1] = abs(do - a.dist(fp.b[(i + 1) % n]))
    return out


def min_pairwise_distance(points: Sequence[Point2]) -> float:
    xy = points_array(points)
    d = np.linalg.norm(xy[:, None, :] - xy[None, :, :], axis=-1)
    d[np.diag_indices(len(xy))] = np.inf
    return float(d.min())


def construct_focal_pair(p: ConvexPolygon, o: Point2 | None = None) -> FocalPair:
    """Reflect O across every edge line; O defaults to the vertex centroid."""
    if o is None:
        o = p.centroid()
    _require_interior(p, o)
    fp = FocalPair(o, tuple(reflect_point(o, p.supporting_line(i)) for i in range(p.n)))

    scale = max(1.0, p.diameter)
    if min_pairwise_distance(fp.b) <= CONSTRUCTION_TOL * scale:
        raise ConstructionError("reflected points are not pairwise distinct")
    for i, bi in enumerate(fp.b):
        line = p.supporting_line(i)
        mid = Point2(0.5 * (o.x + bi.x), 0.5 * (o.y + bi.y))
        if abs(line.signed_distance(mid)) > CONSTRUCTION_TOL * scale:
            raise ConstructionError(f"edge {i} line is not the bisector of O B_{i}")
    if vertex_residuals(p, fp).max() > CONSTRUCTION_TOL * scale:
        raise ConstructionError("vertex equidistance residual too large")
    return fp


def voronoi_halfplanes(sites: Sequence[Point2], i: int) -> tuple[HalfPlane, ...]:
    """The half-planes F_ij (j != i): side of the bisector of B_i B_j holding B_i."""
    # bisector normals point from sites[i] to sites[j], so B_i is on the negative side
    return tuple(HalfPlane(perpendicular_bisector(sites[i], sites[j]), -1)
                 for j in range(len(sites)) if j != i)


def voronoi_cells(sites: Sequence[Point2], bbox: BBox) -> list[VoronoiCell]:
    sites = list(sites)
    n = len(sites)
    if n < 2:
        raise DuplicateSites("need at least two sites") if n == 1 else DuplicateSites("no sites")
    scale = max(1.0, bbox.diagonal)
    xy = points_array(sites)
    for i in range(n):
        d = np.linalg.norm(xy[i + 1:] - xy[i], axis=1)
        if len(d) and d.min() <= EPS * scale:
            j = i + 1 + int(np.argmin(d))
            raise DuplicateSites(f"sites {i} and {j} coincide")
    cells = []
    for i, s in enumerate(sites):
        if not bbox.contains(s):
            raise ValueError(f"site {i} lies outside the bounding box")
        hps = voronoi_halfplanes(sites, i)
        region = clip_convex_region(hps, bbox)
        if region is None:
            raise ConstructionError(f"Voronoi cell {i} is empty inside the bbox")
        cells.append(VoronoiCell(i, s, hps, region))
    return cells


def default_bbox(fp: FocalPair) -> BBox:
    box = BBox.around([fp.o, *fp.b])
    return box.inflate(4.0 * box.diagonal)


def exact_midset(fp: FocalPair, bbox: BBox | None = None) -> MidsetExact:
    """Bisector of O B_i clipped to the Voronoi cell of B_i, for every i."""
    if len(fp.b) < 3:
        raise ValueError("exact midset needs at least three reflected points")
    if bbox is None:
        bbox = default_bbox(fp)
    cells = voronoi_cells(fp.b, bbox)
    pieces = []
    for cell in cells:
        line = perpendicular_bisector(fp.o, cell.site)
        span = clip_line(line, cell.halfplanes + tuple(bbox.halfplanes()))
        if span is None or span[1] - span[0] <= EPS * bbox.diagonal:
            raise ConstructionError(f"bisector of O and B_{cell.site_index} misses its cell")
        p0, d = line.anchor(), line.direction
        pieces.append(Segment2(p0 + d * span[0], p0 + d * span[1]))
    return MidsetExact(tuple(pieces))


def reconstruct_and_compare(p: ConvexPolygon, o: Point2 | None = None) -> ReconstructionReport:
    fp = construct_focal_pair(p, o)
    mid = exact_midset(fp, p.default_bbox().union(default_bbox(fp)))
    errs = []
    for i, piece in enumerate(mid.pieces):
        a, b = p.vertex(i), p.vertex(i + 1)
        errs.append(max(piece.a.dist(a), piece.b.dist(b)))
    return ReconstructionReport(max(errs), tuple(errs))


def connected_focal_set(p: ConvexPolygon, o: Point2 | None = None) -> ArcChain:
    """Arc i: centre A_{i+1}, radius |A_{i+1} O|, from B_i to B_{i+1} avoiding O."""
    fp = construct_focal_pair(p, o)
    o = fp.o
    n = p.n
    arcs = []
    for i in range(n):
        c = p.vertex(i + 1)
        b0, b1 = fp.b[i], fp.b[(i + 1) % n]
        r = c.dist(o)
        t0 = math.atan2(b0.y - c.y, b0.x - c.x)
        t1 = math.atan2(b1.y - c.y, b1.x - c.x)
        to = math.atan2(o.y - c.y, o.x - c.x)
        ccw_extent = (t1 - t0) % TWO_PI
        through_o = (to - t0) % TWO_PI < ccw_extent
        arcs.append(Arc2(c, r, t0, t1, "cw" if through_o else "ccw"))
    chain = ArcChain(tuple(arcs))
    if chain.closure_error() > CONSTRUCTION_TOL * max(1.0, p.diameter):
        raise ConstructionError("arc chain does not close")
    return chain


def verify_equidistance_on_boundary(p: ConvexPolygon, k: CompactSet, l: CompactSet,
                                    samples_per_edge: int = 100, eps: float = VERIFY_TOL) -> EquidistanceReport:
    """Max of |d(X, k) - d(X, l)| over uniform samples X on every edge."""
    if samples_per_edge < 2:
        raise ValueError("samples_per_edge must be at least 2")
    t = np.linspace(0.0, 1.0, samples_per_edge)[:, None]
    xy = np.vstack([a + t * (b - a) for a, b in
                    ((p.vertex(i).as_array(), p.vertex(i + 1).as_array()) for i in range(p.n))])
    gaps = np.abs(k.distances(xy) - l.distances(xy))
    w = int(np.argmax(gaps))
    return EquidistanceReport(float(gaps[w]), Point2(*xy[w]), eps)
