"""Planar primitives, predicates, reflections and point-to-set distances.

Everything here is double precision with a tolerance of ``EPS`` scaled by the
magnitudes involved. Values are immutable; the vectorised distance kernels
operate on ``(m, 2)`` float arrays so that grids and dense samplings can be
evaluated without Python loops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import BadParameter, DegenerateInput, EmptySet, NotConvex

EPS = 1e-10
TWO_PI = 2.0 * math.pi

# rows per block in the vectorised distance kernels
_CHUNK = 16384


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DegenerateInput(f"non-finite coordinate ({self.x}, {self.y})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __iter__(self):
        yield self.x
        yield self.y

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Point2":
        return Point2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: "Point2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])


def as_points(coords: Iterable) -> list[Point2]:
    return [p if isinstance(p, Point2) else Point2(*p) for p in coords]


def points_array(points: Sequence[Point2]) -> np.ndarray:
    return np.array([(p.x, p.y) for p in points], dtype=float).reshape(-1, 2)


@dataclass(frozen=True)
class Line2:
    """The line ``{P : n . P = c}`` with unit normal ``n = (nx, ny)``."""

    nx: float
    ny: float
    c: float

    def __post_init__(self):
        if abs(math.hypot(self.nx, self.ny) - 1.0) > 1e-12:
            raise DegenerateInput("line normal must be a unit vector")

    @classmethod
    def from_normal(cls, nx: float, ny: float, c: float) -> "Line2":
        s = math.hypot(nx, ny)
        if s == 0.0:
            raise DegenerateInput("zero normal")
        return cls(nx / s, ny / s, c / s)

    @classmethod
    def through(cls, a: Point2, b: Point2) -> "Line2":
        """Line through ``a`` and ``b``; the normal points to the right of a->b."""
        d = b - a
        s = d.norm()
        if s <= EPS * max(1.0, a.norm(), b.norm()):
            raise DegenerateInput("line through coincident points")
        nx, ny = d.y / s, -d.x / s
        return cls(nx, ny, nx * a.x + ny * a.y)

    @property
    def normal(self) -> Point2:
        return Point2(self.nx, self.ny)

    @property
    def direction(self) -> Point2:
        return Point2(-self.ny, self.nx)

    def anchor(self) -> Point2:
        """Foot of the perpendicular from the origin."""
        return Point2(self.c * self.nx, self.c * self.ny)

    def signed_distance(self, p: Point2) -> float:
        return self.nx * p.x + self.ny * p.y - self.c


@dataclass(frozen=True)
class Segment2:
    a: Point2
    b: Point2

    def __post_init__(self):
        if self.a.dist(self.b) <= EPS * max(1.0, self.a.norm(), self.b.norm()):
            raise DegenerateInput(f"zero-length segment at {tuple(self.a)}")

    @property
    def length(self) -> float:
        return self.a.dist(self.b)

    def point_at(self, t: float) -> Point2:
        return Point2(self.a.x + t * (self.b.x - self.a.x), self.a.y + t * (self.b.y - self.a.y))


@dataclass(frozen=True)
class Arc2:
    """Circular arc; angles are normalised to [0, 2pi).

    Equal start and end angles denote the full circle.
    """

    center: Point2
    radius: float
    start_angle: float
    end_angle: float
    orientation: str = "ccw"

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise DegenerateInput(f"arc radius must be positive, got {self.radius}")
        if self.orientation not in ("ccw", "cw"):
            raise BadParameter(f"orientation must be 'ccw' or 'cw', got {self.orientation!r}")
        object.__setattr__(self, "start_angle", float(self.start_angle) % TWO_PI)
        object.__setattr__(self, "end_angle", float(self.end_angle) % TWO_PI)

    @classmethod
    def full_circle(cls, center: Point2, radius: float) -> "Arc2":
        return cls(center, radius, 0.0, 0.0)

    @property
    def extent(self) -> float:
        if self.orientation == "ccw":
            e = (self.end_angle - self.start_angle) % TWO_PI
        else:
            e = (self.start_angle - self.end_angle) % TWO_PI
        return TWO_PI if e == 0.0 else e

    @property
    def ccw_start(self) -> float:
        """Start angle of the same point set traversed counterclockwise."""
        return self.start_angle if self.orientation == "ccw" else self.end_angle

    def contains_angle(self, theta: float) -> bool:
        return (theta - self.ccw_start) % TWO_PI <= self.extent

    def point_at_angle(self, theta: float) -> Point2:
        return Point2(self.center.x + self.radius * math.cos(theta),
                      self.center.y + self.radius * math.sin(theta))

    @property
    def start_point(self) -> Point2:
        return self.point_at_angle(self.start_angle)

    @property
    def end_point(self) -> Point2:
        return self.point_at_angle(self.end_angle)

    @property
    def length(self) -> float:
        return self.radius * self.extent

    def sample(self, count: int) -> np.ndarray:
        """``count`` points from start to end following the orientation."""
        sign = 1.0 if self.orientation == "ccw" else -1.0
        t = self.start_angle + sign * np.linspace(0.0, self.extent, count)
        return np.column_stack([self.center.x + self.radius * np.cos(t),
                                self.center.y + self.radius * np.sin(t)])


@dataclass(frozen=True)
class Polyline:
    points: tuple[Point2, ...]
    closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(as_points(self.points)))
        if len(self.points) < 1:
            raise EmptySet("polyline needs at least one point")

    def array(self) -> np.ndarray:
        pts = points_array(self.points)
        if self.closed and len(pts) > 1:
            pts = np.vstack([pts, pts[:1]])
        return pts


Primitive = Union[Point2, Segment2, Arc2, Polyline]


@dataclass(frozen=True)
class HalfPlane:
    """The closed region ``{P : side * (n . P - c) >= 0}``."""

    boundary: Line2
    side: int = 1

    def __post_init__(self):
        if self.side not in (1, -1):
            raise BadParameter("half-plane side must be +1 or -1")

    def value(self, p: Point2) -> float:
        return self.side * self.boundary.signed_distance(p)

    def contains(self, p: Point2, tol: float = EPS) -> bool:
        return self.value(p) >= -tol * max(1.0, p.norm())


@dataclass(frozen=True)
class BBox:
    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self):
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise DegenerateInput(f"degenerate bbox {self}")

    @classmethod
    def square(cls, half: float, cx: float = 0.0, cy: float = 0.0) -> "BBox":
        return cls(cx - half, cy - half, cx + half, cy + half)

    @classmethod
    def around(cls, points: Sequence[Point2], pad: float = 0.0) -> "BBox":
        xy = points_array(points)
        lo, hi = xy.min(axis=0), xy.max(axis=0)
        return cls(lo[0] - pad, lo[1] - pad, hi[0] + pad, hi[1] + pad)

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    @property
    def diagonal(self) -> float:
        return math.hypot(self.width, self.height)

    def inflate(self, pad: float) -> "BBox":
        return BBox(self.xmin - pad, self.ymin - pad, self.xmax + pad, self.ymax + pad)

    def union(self, other: "BBox") -> "BBox":
        return BBox(min(self.xmin, other.xmin), min(self.ymin, other.ymin),
                    max(self.xmax, other.xmax), max(self.ymax, other.ymax))

    def corners(self) -> list[Point2]:
        return [Point2(self.xmin, self.ymin), Point2(self.xmax, self.ymin),
                Point2(self.xmax, self.ymax), Point2(self.xmin, self.ymax)]

    def contains(self, p: Point2) -> bool:
        return self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax

    def halfplanes(self) -> list[HalfPlane]:
        return [HalfPlane(Line2(1.0, 0.0, self.xmin), 1), HalfPlane(Line2(1.0, 0.0, self.xmax), -1),
                HalfPlane(Line2(0.0, 1.0, self.ymin), 1), HalfPlane(Line2(0.0, 1.0, self.ymax), -1)]


# --------------------------------------------------------------------------- predicates

def orientation(a: Point2, b: Point2, c: Point2) -> str:
    """'left', 'right' or 'collinear' for the turn a -> b -> c.

    Collinear when |sin| of the angle at ``a`` is at most EPS.
    """
    ux, uy = b.x - a.x, b.y - a.y
    vx, vy = c.x - a.x, c.y - a.y
    cr = ux * vy - uy * vx
    if abs(cr) <= EPS * math.hypot(ux, uy) * math.hypot(vx, vy):
        return "collinear"
    return "left" if cr > 0 else "right"


def reflect_point(p: Point2, line: Line2) -> Point2:
    s = 2.0 * line.signed_distance(p)
    return Point2(p.x - s * line.nx, p.y - s * line.ny)


def perpendicular_bisector(a: Point2, b: Point2) -> Line2:
    """Bisector of ab, with the normal pointing from ``a`` towards ``b``."""
    d = b - a
    s = d.norm()
    if s <= EPS * max(1.0, a.norm(), b.norm()):
        raise DegenerateInput(f"bisector of coincident points {tuple(a)}")
    nx, ny = d.x / s, d.y / s
    return Line2(nx, ny, 0.5 * (nx * (a.x + b.x) + ny * (a.y + b.y)))


# --------------------------------------------------------------------------- convex polygon

def _ring_area(xy: np.ndarray) -> float:
    x, y = xy[:, 0], xy[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon, vertices counterclockwise, indices taken mod n.

    Edge ``i`` joins vertex ``i`` to vertex ``i + 1``.
    """

    vertices: tuple[Point2, ...]

    def __post_init__(self):
        vs = tuple(as_points(self.vertices))
        object.__setattr__(self, "vertices", vs)
        n = len(vs)
        if n < 3:
            raise NotConvex(f"polygon needs at least 3 vertices, got {n}")
        scale = max(p.norm() for p in vs) + 1.0
        for i in range(n):
            for j in range(i + 1, n):
                if vs[i].dist(vs[j]) <= EPS * scale:
                    raise NotConvex(f"vertex {j} repeats vertex {i}", index=j)
        for i in range(n):
            turn = orientation(vs[i - 1], vs[i], vs[(i + 1) % n])
            if turn != "left":
                raise NotConvex(f"vertex {i} is not a strict left turn ({turn})", index=i)
        # strictly left turns everywhere still admit self-overlapping stars
        total = 0.0
        for i in range(n):
            d0, d1 = vs[i] - vs[i - 1], vs[(i + 1) % n] - vs[i]
            total += math.atan2(d0.cross(d1), d0.dot(d1))
        if abs(total - TWO_PI) > 1e-6:
            raise NotConvex(f"vertex list winds {total / TWO_PI:.3f} times, expected once")

    def __len__(self):
        return len(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> Point2:
        return self.vertices[i % self.n]

    def edge(self, i: int) -> Segment2:
        return Segment2(self.vertex(i), self.vertex(i + 1))

    def edges(self) -> list[Segment2]:
        return [self.edge(i) for i in range(self.n)]

    def supporting_line(self, i: int) -> Line2:
        """Line of edge ``i`` with outward normal (interior has n . P < c)."""
        return Line2.through(self.vertex(i), self.vertex(i + 1))

    def array(self) -> np.ndarray:
        return points_array(self.vertices)

    @cached_property
    def area(self) -> float:
        return _ring_area(self.array())

    @cached_property
    def diameter(self) -> float:
        xy = self.array()
        return float(np.max(np.linalg.norm(xy[:, None, :] - xy[None, :, :], axis=-1)))

    def centroid(self) -> Point2:
        """Vertex centroid (always interior for a convex polygon)."""
        xy = self.array().mean(axis=0)
        return Point2(xy[0], xy[1])

    def bbox(self) -> BBox:
        return BBox.around(self.vertices)

    def default_bbox(self) -> BBox:
        """Polygon bbox inflated on every side by four diameters."""
        return self.bbox().inflate(4.0 * self.diameter)

    def edge_distances(self, p: Point2) -> np.ndarray:
        """Signed distances from ``p`` to each supporting line, positive inside."""
        return np.array([-self.supporting_line(i).signed_distance(p) for i in range(self.n)])

    def interior_margin(self, p: Point2) -> float:
        return float(np.min(self.edge_distances(p)))

    def strictly_contains(self, p: Point2) -> bool:
        return self.interior_margin(p) > EPS * max(1.0, self.diameter)

    def contains(self, p: Point2) -> bool:
        return self.interior_margin(p) >= -EPS * max(1.0, self.diameter)

    def boundary(self) -> "CompactSet":
        return CompactSet(tuple(self.edges()))


# --------------------------------------------------------------------------- clipping

def _clip_ring(ring: list[tuple[float, float]], hp: HalfPlane) -> list[tuple[float, float]]:
    """One Sutherland-Hodgman pass of a closed ring against a half-plane."""
    if not ring:
        return ring
    nx, ny, c, s = hp.boundary.nx, hp.boundary.ny, hp.boundary.c, hp.side
    vals = [s * (nx * x + ny * y - c) for x, y in ring]
    out = []
    m = len(ring)
    for k in range(m):
        p, q = ring[k], ring[(k + 1) % m]
        vp, vq = vals[k], vals[(k + 1) % m]
        if vp >= 0:
            out.append(p)
        if (vp >= 0) != (vq >= 0):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _clean_ring(ring: list[tuple[float, float]], scale: float) -> list[Point2]:
    pts = [Point2(*p) for p in ring]
    tol = 1e-9 * max(1.0, scale)
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for k in range(len(pts)):
            if pts[k].dist(pts[k - 1]) <= tol:
                del pts[k]
                changed = True
                break
        if changed:
            continue
        for k in range(len(pts)):
            if orientation(pts[k - 1], pts[k], pts[(k + 1) % len(pts)]) != "left":
                del pts[k]
                changed = True
                break
    return pts


def clip_convex_region(halfplanes: Sequence[HalfPlane], bbox: BBox) -> ConvexPolygon | None:
    """Convex polygon ``bbox`` intersected with every half-plane; None if area vanishes."""
    ring = [(p.x, p.y) for p in bbox.corners()]
    for hp in halfplanes:
        ring = _clip_ring(ring, hp)
        if len(ring) < 3:
            return None
    pts = _clean_ring(ring, bbox.diagonal)
    if len(pts) < 3 or _ring_area(points_array(pts)) <= EPS * bbox.diagonal ** 2:
        return None
    return ConvexPolygon(tuple(pts))


def clip_line(line: Line2, halfplanes: Sequence[HalfPlane]) -> tuple[float, float] | None:
    """Parameter interval of ``line`` (anchor + t * direction) inside all half-planes.

    Cyrus-Beck style; returns None when the intersection is empty.
    """
    p0, d = line.anchor(), line.direction
    lo, hi = -math.inf, math.inf
    for hp in halfplanes:
        b = hp.boundary
        v0 = hp.side * (b.nx * p0.x + b.ny * p0.y - b.c)
        dv = hp.side * (b.nx * d.x + b.ny * d.y)
        if abs(dv) <= 1e-14:
            if v0 < -EPS * max(1.0, abs(b.c)):
                return None
            continue
        t = -v0 / dv
        if dv > 0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
    if not lo <= hi:
        return None
    return lo, hi


# --------------------------------------------------------------------------- distances

def _seg_dist(xy: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(m, k) distances from points xy (m, 2) to segments a[k] -> b[k]."""
    d = b - a
    dd = np.einsum("ij,ij->i", d, d)
    rel = xy[:, None, :] - a[None, :, :]
    t = np.clip(np.einsum("mkj,kj->mk", rel, d) / dd, 0.0, 1.0)
    foot = a[None, :, :] + t[..., None] * d[None, :, :]
    return np.linalg.norm(xy[:, None, :] - foot, axis=-1)


def _arc_dist(xy: np.ndarray, centers: np.ndarray, radii: np.ndarray,
              starts: np.ndarray, extents: np.ndarray) -> np.ndarray:
    rel = xy[:, None, :] - centers[None, :, :]
    rho = np.hypot(rel[..., 0], rel[..., 1])
    ang = np.arctan2(rel[..., 1], rel[..., 0])
    inside = np.mod(ang - starts[None, :], TWO_PI) <= extents[None, :]
    e0 = centers + radii[:, None] * np.column_stack([np.cos(starts), np.sin(starts)])
    e1 = centers + radii[:, None] * np.column_stack([np.cos(starts + extents), np.sin(starts + extents)])
    d0 = np.linalg.norm(xy[:, None, :] - e0[None], axis=-1)
    d1 = np.linalg.norm(xy[:, None, :] - e1[None], axis=-1)
    return np.where(inside, np.abs(rho - radii[None, :]), np.minimum(d0, d1))


@dataclass(frozen=True)
class CompactSet:
    """Finite union of points, segments, arcs and polylines."""

    items: tuple = field(default_factory=tuple)

    def __post_init__(self):
        items = tuple(self.items)
        object.__setattr__(self, "items", items)
        if not items:
            raise EmptySet("compact set has no primitives")
        for it in items:
            if not isinstance(it, (Point2, Segment2, Arc2, Polyline)):
                raise BadParameter(f"unsupported primitive {type(it).__name__}")

    @classmethod
    def of_points(cls, points: Iterable) -> "CompactSet":
        return cls(tuple(as_points(points)))

    @cached_property
    def _packed(self):
        pts, sa, sb, arcs = [], [], [], []
        for it in self.items:
            if isinstance(it, Point2):
                pts.append((it.x, it.y))
            elif isinstance(it, Segment2):
                sa.append((it.a.x, it.a.y))
                sb.append((it.b.x, it.b.y))
            elif isinstance(it, Arc2):
                arcs.append((it.center.x, it.center.y, it.radius, it.ccw_start, it.extent))
            else:
                xy = it.array()
                if len(xy) == 1:
                    pts.append(tuple(xy[0]))
                for p, q in zip(xy[:-1], xy[1:]):
                    if np.array_equal(p, q):
                        pts.append(tuple(p))
                    else:
                        sa.append(tuple(p))
                        sb.append(tuple(q))
        arcs = np.array(arcs, dtype=float).reshape(-1, 5)
        return (np.array(pts, dtype=float).reshape(-1, 2),
                np.array(sa, dtype=float).reshape(-1, 2),
                np.array(sb, dtype=float).reshape(-1, 2),
                arcs)

    def distances(self, xy: np.ndarray) -> np.ndarray:
        """Distance from each row of ``xy`` to the set."""
        xy = np.asarray(xy, dtype=float).reshape(-1, 2)
        pts, sa, sb, arcs = self._packed
        out = np.empty(len(xy))
        ncols = max(1, len(pts) + len(sa) + len(arcs))
        step = max(1, _CHUNK * 8 // ncols)
        for lo in range(0, len(xy), step):
            blk = xy[lo:lo + step]
            best = np.full(len(blk), np.inf)
            if len(pts):
                dx = blk[:, 0, None] - pts[None, :, 0]
                dy = blk[:, 1, None] - pts[None, :, 1]
                best = np.minimum(best, np.sqrt(np.min(dx * dx + dy * dy, axis=1)))
            if len(sa):
                best = np.minimum(best, np.min(_seg_dist(blk, sa, sb), axis=1))
            if len(arcs):
                best = np.minimum(best, np.min(_arc_dist(blk, arcs[:, :2], arcs[:, 2], arcs[:, 3], arcs[:, 4]), axis=1))
            out[lo:lo + step] = best
        return out

    def sample(self, pitch: float) -> np.ndarray:
        """Points on the set with consecutive spacing at most ``pitch`` along each primitive."""
        if not pitch > 0:
            raise BadParameter("pitch must be positive")
        chunks = []
        pts, sa, sb, arcs = self._packed
        if len(pts):
            chunks.append(pts)
        for a, b in zip(sa, sb):
            k = int(math.ceil(np.linalg.norm(b - a) / pitch)) + 1
            t = np.linspace(0.0, 1.0, k)[:, None]
            chunks.append(a + t * (b - a))
        for cx, cy, r, s, e in arcs:
            k = int(math.ceil(r * e / pitch)) + 1
            t = s + np.linspace(0.0, e, k)
            chunks.append(np.column_stack([cx + r * np.cos(t), cy + r * np.sin(t)]))
        return np.vstack(chunks)

    def bbox(self) -> BBox:
        xy = self.sample(max(self._extent_scale() / 256.0, 1e-6))
        lo, hi = xy.min(axis=0), xy.max(axis=0)
        pad = 1e-9 if np.any(hi - lo <= 0) else 0.0
        return BBox(lo[0] - pad, lo[1] - pad, hi[0] + pad, hi[1] + pad)

    def _extent_scale(self) -> float:
        pts, sa, sb, arcs = self._packed
        xs = [pts, sa, sb, arcs[:, :2]]
        xy = np.vstack([x for x in xs if len(x)])
        span = float(np.max(xy.max(axis=0) - xy.min(axis=0))) if len(xy) else 0.0
        rmax = float(arcs[:, 2].max()) if len(arcs) else 0.0
        return max(span, 2 * rmax, 1e-3)


def distance_point_set(x: Point2, s: CompactSet) -> float:
    return float(s.distances(np.array([[x.x, x.y]]))[0])
