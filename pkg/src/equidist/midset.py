"""Numeric equidistant sets as the zero level set of a signed gap field.

``f(X) = d(X, K) - d(X, L)`` is sampled on a uniform grid, cells with a sign
change are contoured by marching squares, and every contour vertex is pulled
onto ``f = 0`` by bisection along its grid edge.
"""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import BadParameter, DegenerateFieldWarning, EmptySet
from .geometry import BBox, CompactSet, Point2, Polyline

ZERO_FRACTION_LIMIT = 0.5
BISECTION_STEPS = 80


@dataclass(frozen=True)
class GapField:
    k: CompactSet
    l: CompactSet

    def __call__(self, xy: np.ndarray) -> np.ndarray:
        xy = np.asarray(xy, dtype=float).reshape(-1, 2)
        return self.k.distances(xy) - self.l.distances(xy)


@dataclass(frozen=True)
class MidsetNumeric:
    polylines: tuple[np.ndarray, ...]
    resolution: float
    degenerate: bool = False
    max_abs_gap: float = 0.0
    stats: dict = field(default_factory=dict, compare=False)

    def vertices(self) -> np.ndarray:
        if not self.polylines:
            return np.empty((0, 2))
        return np.vstack(self.polylines)

    def as_set(self) -> CompactSet:
        return CompactSet(tuple(Polyline(tuple(map(tuple, pl))) for pl in self.polylines))


def gap(x: Point2, fld: GapField) -> float:
    return float(fld(np.array([[x.x, x.y]]))[0])


def _threads() -> int:
    raw = os.environ.get("EQUIDIST_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise BadParameter(f"EQUIDIST_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise BadParameter("EQUIDIST_THREADS must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


def evaluate_grid(fld: GapField, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """``F[j, i] = f(xs[i], ys[j])``; rows are evaluated in parallel blocks."""
    gx, gy = np.meshgrid(xs, ys)
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    nthreads = _threads()
    if nthreads == 1 or len(pts) < 20000:
        return fld(pts).reshape(gx.shape)
    blocks = np.array_split(pts, nthreads * 4)
    with ThreadPoolExecutor(max_workers=nthreads) as pool:
        vals = list(pool.map(fld, blocks))
    return np.concatenate(vals).reshape(gx.shape)


def _bisect(fld: GapField, p: np.ndarray, q: np.ndarray, fp: np.ndarray, tol: float):
    """Roots of f on segments p->q where f(p) <= 0 < f(q) (sides swapped as needed)."""
    neg_at_p = fp <= 0
    lo = np.where(neg_at_p[:, None], p, q)
    hi = np.where(neg_at_p[:, None], q, p)
    flo = fld(lo)
    best, fbest = lo.copy(), flo.copy()
    active = np.abs(flo) >= tol
    for _ in range(BISECTION_STEPS):
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        mid = 0.5 * (lo[idx] + hi[idx])
        fm = fld(mid)
        better = np.abs(fm) < np.abs(fbest[idx])
        best[idx[better]] = mid[better]
        fbest[idx[better]] = fm[better]
        up = fm <= 0
        lo[idx[up]] = mid[up]
        hi[idx[~up]] = mid[~up]
        active[idx] = np.abs(fbest[idx]) >= tol
    return best, fbest


# corners: 0 = (i, j), 1 = (i+1, j), 2 = (i+1, j+1), 3 = (i, j+1)
# edges:   0 = bottom (0-1), 1 = right (1-2), 2 = top (3-2), 3 = left (0-3)
_CORNER_EDGES = {0: (3, 0), 1: (0, 1), 2: (1, 2), 3: (2, 3)}


def _cell_segments(case: int, center_positive: bool) -> list[tuple[int, int]]:
    pos = [(case >> c) & 1 for c in range(4)]
    if case in (0, 15):
        return []
    if case in (5, 10):
        # saddle: corners 0,2 share a sign opposite to 1,3
        if center_positive == bool(pos[0]):
            return [_CORNER_EDGES[1], _CORNER_EDGES[3]]
        return [_CORNER_EDGES[0], _CORNER_EDGES[2]]
    ones = sum(pos)
    if ones in (1, 3):
        odd = pos.index(1) if ones == 1 else pos.index(0)
        return [_CORNER_EDGES[odd]]
    # two adjacent corners on each side
    crossing = [e for e, (a, b) in enumerate([(0, 1), (1, 2), (3, 2), (0, 3)]) if pos[a] != pos[b]]
    return [tuple(crossing)]


def _stitch(links: dict, coords: dict) -> list[np.ndarray]:
    """Walk the vertex graph (max degree 2) into chains, open ones first."""
    adj: dict = {}
    for a, b in links:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen = set()
    chains = []
    starts = sorted(v for v, nb in adj.items() if len(nb) == 1) + sorted(adj)
    for s in starts:
        if s in seen:
            continue
        chain = [s]
        seen.add(s)
        prev, cur = None, s
        while True:
            nxt = [v for v in adj[cur] if v != prev and v not in seen]
            if not nxt:
                if len(chain) > 2 and s in adj[cur] and prev is not None:
                    chain.append(s)
                break
            prev, cur = cur, nxt[0]
            seen.add(cur)
            chain.append(cur)
        chains.append(np.array([coords[v] for v in chain]))
    return chains


def extract_midset(fld: GapField, bbox: BBox, h: float) -> MidsetNumeric:
    """Contour polylines of ``f = 0`` in ``bbox`` on a grid of pitch ``h``.

    When more than half of the grid corners sit on ``f = 0`` the focal sets
    overlap and the midset is thick; the result is then flagged ``degenerate``
    and carries no polylines.
    """
    if not h > 0:
        raise BadParameter("grid pitch must be positive")
    nx = max(1, int(np.ceil(bbox.width / h - 1e-9)))
    ny = max(1, int(np.ceil(bbox.height / h - 1e-9)))
    xs = bbox.xmin + h * np.arange(nx + 1)
    ys = bbox.ymin + h * np.arange(ny + 1)
    xs[-1], ys[-1] = bbox.xmax, bbox.ymax
    F = evaluate_grid(fld, xs, ys)

    zero_tol = 1e-12 * max(1.0, bbox.diagonal)
    zero_frac = float(np.mean(np.abs(F) <= zero_tol))
    stats = {"nx": nx, "ny": ny, "zero_fraction": zero_frac}
    if zero_frac > ZERO_FRACTION_LIMIT:
        warnings.warn(f"DegenerateField: gap field vanishes at {zero_frac:.0%} of grid corners; "
                      "focal sets overlap", DegenerateFieldWarning, stacklevel=2)
        return MidsetNumeric((), h, degenerate=True, stats=stats)

    P = (F > 0).astype(np.int8)
    case = P[:-1, :-1] | (P[:-1, 1:] << 1) | (P[1:, 1:] << 2) | (P[1:, :-1] << 3)
    cj, ci = np.nonzero((case != 0) & (case != 15))
    saddle = (case[cj, ci] == 5) | (case[cj, ci] == 10)
    centers = np.column_stack([0.5 * (xs[ci] + xs[ci + 1]), 0.5 * (ys[cj] + ys[cj + 1])])
    center_pos = np.zeros(len(ci), dtype=bool)
    if saddle.any():
        center_pos[saddle] = fld(centers[saddle]) > 0

    # global edge ids: ('h', i, j) joins (i, j)-(i+1, j); ('v', i, j) joins (i, j)-(i, j+1)
    links = []
    for c, i, j, cp in zip(case[cj, ci], ci, cj, center_pos):
        ids = (("h", i, j), ("v", i + 1, j), ("h", i, j + 1), ("v", i, j))
        for e0, e1 in _cell_segments(int(c), bool(cp)):
            links.append((ids[e0], ids[e1]))
    if not links:
        return MidsetNumeric((), h, stats=stats)

    edge_ids = sorted({e for link in links for e in link})
    p = np.array([(xs[i], ys[j]) for _, i, j in edge_ids])
    q = np.array([(xs[i + 1], ys[j]) if t == "h" else (xs[i], ys[j + 1]) for t, i, j in edge_ids])
    fp = np.array([F[j, i] for _, i, j in edge_ids])
    tol = min(1e-9, h * 1e-3)
    roots, froots = _bisect(fld, p, q, fp, tol)
    coords = {e: roots[k] for k, e in enumerate(edge_ids)}
    chains = _stitch(links, coords)
    stats["vertices"] = len(edge_ids)
    return MidsetNumeric(tuple(chains), h, max_abs_gap=float(np.max(np.abs(froots))), stats=stats)


def clip_polylines_to_disk(polylines, radius: float, center=(0.0, 0.0)) -> tuple[np.ndarray, ...]:
    """Keep the runs of polyline vertices lying in the closed disk."""
    out = []
    c = np.asarray(center, dtype=float)
    for pl in polylines:
        inside = np.linalg.norm(pl - c, axis=1) <= radius
        start = None
        for k, flag in enumerate(list(inside) + [False]):
            if flag and start is None:
                start = k
            elif not flag and start is not None:
                out.append(pl[start:k])
                start = None
    return tuple(out)


def hausdorff_to_reference(m: MidsetNumeric, reference: CompactSet, pitch: float | None = None) -> float:
    """Symmetric Hausdorff distance between the extracted contour and ``reference``."""
    from .hausdorff import hausdorff_distance

    if not m.polylines:
        raise EmptySet("extracted midset is empty")
    return hausdorff_distance(m.as_set(), reference, pitch if pitch is not None else m.resolution / 2)
