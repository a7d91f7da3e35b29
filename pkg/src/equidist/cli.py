"""Command line entry point: construct, verify, midset, converge, render.

Exit codes: 0 verified, 1 verification failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import warnings
from typing import Sequence

import numpy as np

from . import focal as fc
from .errors import ConstructionError, DegenerateFieldWarning, GeometryError
from .geometry import BBox, CompactSet, points_array
from .hausdorff import convergence_experiment, parse_curve
from .midset import GapField, extract_midset, hausdorff_to_reference
from .scene import (
    LAYERS,
    SCHEMA_VERSION,
    Scene,
    SceneError,
    dumps,
    figure_from,
    fmt,
    load_scene,
    write_text,
    xy_doc,
)
from .svg import SceneGeometry, render_svg

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class InvalidInput(Exception):
    pass


def _scene(args) -> Scene:
    if args.scene is None:
        return Scene()
    return load_scene(args.scene)


def _need_polygon(sc: Scene):
    if sc.polygon is None:
        raise InvalidInput("scene has no polygon")
    return sc.polygon


def _focal_pair(sc: Scene) -> fc.FocalPair:
    p = _need_polygon(sc)
    return fc.construct_focal_pair(p, sc.o)


def _focal_sets(sc: Scene, mode: str) -> tuple[CompactSet, CompactSet, bool]:
    """(K, L, derived) where ``derived`` means both came from the polygon construction."""
    if sc.k is not None and sc.l is not None:
        return sc.k, sc.l, False
    fp = _focal_pair(sc)
    k = sc.k if sc.k is not None else fp.k
    if sc.l is not None:
        return k, sc.l, False
    if mode == "arcs":
        return k, fc.connected_focal_set(sc.polygon, fp.o).as_set(), sc.k is None
    return k, fp.l, sc.k is None


def _pick(flag, scene_value, default):
    if flag is not None:
        return flag
    if scene_value is not None:
        return scene_value
    return default


# --------------------------------------------------------------------------- commands

def cmd_construct(args) -> int:
    sc = _scene(args)
    p = _need_polygon(sc)
    fp = _focal_pair(sc)
    bbox = sc.bbox or p.default_bbox()
    cells = fc.voronoi_cells(fp.b, bbox)
    mid = fc.exact_midset(fp, bbox)
    res = fc.vertex_residuals(p, fp)
    min_dist = fc.min_pairwise_distance(fp.b)
    b_xy = points_array(fp.b)
    vob = []
    for i in range(p.n):
        a = p.vertex(i + 1).as_array()
        d = np.linalg.norm(b_xy - a, axis=1)
        vob.append(float(d[i] - d.min()))
    errs = [max(piece.a.dist(p.vertex(i)), piece.b.dist(p.vertex(i + 1))) for i, piece in enumerate(mid.pieces)]
    checks = {
        "vertex_residual": bool(res.max() < 1e-10 * max(1.0, p.diameter)),
        "distinct_focal_points": bool(min_dist > fc.CONSTRUCTION_TOL),
        "vertex_on_cell_boundary": bool(max(vob) < fc.CONSTRUCTION_TOL),
        "midset_matches_edges": bool(max(errs) < fc.CONSTRUCTION_TOL),
    }
    doc = {
        "version": SCHEMA_VERSION,
        "kind": "construct",
        "polygon": [xy_doc(v) for v in p.vertices],
        "focal_pair": {"o": xy_doc(fp.o), "b": [xy_doc(b) for b in fp.b]},
        "vertex_residuals": [[fmt(r0), fmt(r1)] for r0, r1 in res],
        "min_pairwise_distance": fmt(min_dist),
        "vertex_on_boundary_residuals": [fmt(v) for v in vob],
        "voronoi_cells": [{
            "site_index": c.site_index,
            "site": xy_doc(c.site),
            "halfplanes": [{"normal": [fmt(h.boundary.nx), fmt(h.boundary.ny)], "offset": fmt(h.boundary.c),
                            "side": h.side} for h in c.halfplanes],
            "region": [xy_doc(v) for v in c.region.vertices],
        } for c in cells],
        "midset_pieces": [[xy_doc(s.a), xy_doc(s.b)] for s in mid.pieces],
        "max_endpoint_error": fmt(max(errs)),
        "checks": checks,
        "passed": all(checks.values()),
    }
    write_text(args.out or sc.outputs.get("construct"), dumps(doc))
    return EXIT_OK if doc["passed"] else EXIT_FAIL


def cmd_verify(args) -> int:
    sc = _scene(args)
    p = _need_polygon(sc)
    mode = _pick(args.mode, sc.mode, "points")
    samples = int(_pick(args.samples, sc.samples, 200))
    eps = float(_pick(args.eps, sc.eps, fc.VERIFY_TOL))
    if samples < 2:
        raise InvalidInput("--samples must be at least 2")
    k, l, _ = _focal_sets(sc, mode)
    rep = fc.verify_equidistance_on_boundary(p, k, l, samples, eps)
    status = "PASS" if rep.passed else "FAIL"
    print(f"mode={mode} samples={samples} max_gap={fmt(rep.max_gap)!r} "
          f"worst_point=({fmt(rep.worst_point.x)!r}, {fmt(rep.worst_point.y)!r}) eps={eps!r} {status}")
    out = args.out or sc.outputs.get("verify")
    if out:
        write_text(out, dumps({
            "version": SCHEMA_VERSION, "kind": "verify", "mode": mode, "samples": samples, "eps": eps,
            "max_gap": fmt(rep.max_gap), "worst_point": xy_doc(rep.worst_point), "passed": rep.passed,
        }))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _midset_bbox(sc: Scene, k: CompactSet, l: CompactSet) -> BBox:
    if sc.bbox is not None:
        return sc.bbox
    box = k.bbox().union(l.bbox())
    if sc.polygon is not None:
        box = box.union(sc.polygon.bbox())
    return box.inflate(0.25 * box.diagonal)


def cmd_midset(args) -> int:
    sc = _scene(args)
    mode = _pick(args.mode, sc.mode, "points")
    h = float(_pick(args.pitch, sc.pitch, 0.02))
    k, l, derived = _focal_sets(sc, mode)
    bbox = _midset_bbox(sc, k, l)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateFieldWarning)
        m = extract_midset(GapField(k, l), bbox, h)
    reference = sc.reference
    if reference is None and derived:
        reference = fc.exact_midset(_focal_pair(sc)).as_set()
    deviation = None
    if not m.degenerate and m.polylines and reference is not None:
        deviation = hausdorff_to_reference(m, reference)
    if m.degenerate:
        passed = False
    elif deviation is not None:
        passed = deviation < 2 * h
    else:
        passed = bool(m.polylines)
    doc = {
        "version": SCHEMA_VERSION,
        "kind": "midset",
        "pitch": fmt(h),
        "bbox": [fmt(bbox.xmin), fmt(bbox.ymin), fmt(bbox.xmax), fmt(bbox.ymax)],
        "degenerate": m.degenerate,
        "polylines": [[xy_doc(p) for p in pl] for pl in m.polylines],
        "max_abs_gap": fmt(m.max_abs_gap),
        "deviation": None if deviation is None else fmt(deviation),
        "passed": passed,
    }
    write_text(args.out or sc.outputs.get("midset"), dumps(doc))
    if m.degenerate:
        msg = str(caught[0].message) if caught else "DegenerateField: gap field vanishes on a region"
        print(msg, file=sys.stderr)
    elif deviation is not None:
        print(f"deviation={fmt(deviation)!r} limit={fmt(2 * h)!r} {'PASS' if passed else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_converge(args) -> int:
    sc = _scene(args)
    curve_text = _pick(args.curve, sc.curve, None)
    if curve_text is None:
        raise InvalidInput("no curve given (use --curve circle:R or ellipse:A,B)")
    curve = parse_curve(curve_text)
    n_list = _pick(args.n_list, sc.n_list, [4, 8, 16, 32, 64])
    R = float(_pick(args.radius, sc.radius, 3.0))
    h = float(_pick(args.pitch, sc.pitch, 0.01))
    threshold = float(sc.threshold if sc.threshold is not None else 0.02)
    if any(n < 3 for n in n_list):
        raise InvalidInput("every n in --n-list must be at least 3")
    rows = convergence_experiment(curve, sc.o, n_list, R, h)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "dh_polygon", "dh_midset", "dh_focal"])
    for r in rows:
        w.writerow([r.n, repr(fmt(r.dh_polygon)), repr(fmt(r.dh_midset)), repr(fmt(r.dh_focal))])
    write_text(args.out or sc.outputs.get("converge"), buf.getvalue())
    mids = [r.dh_midset for r in rows]
    monotone = all(b <= a + 2 * h for a, b in zip(mids, mids[1:]))
    return EXIT_OK if monotone and mids[-1] < threshold else EXIT_FAIL


def _view_bbox(p, fp, arcs) -> BBox:
    pts = list(p.vertices) + [fp.o, *fp.b]
    box = BBox.around(pts)
    if arcs is not None:
        box = box.union(arcs.as_set().bbox())
    return box


def cmd_render(args) -> int:
    sc = _scene(args)
    layers = None if args.layers is None else [s for s in args.layers.split(",") if s.strip()]
    spec = figure_from(sc, layers)
    p = _need_polygon(sc)
    fp = _focal_pair(sc)
    want = set(spec.layers)
    chain = fc.connected_focal_set(p, fp.o) if "arcs" in want else None
    view = _view_bbox(p, fp, chain)
    view = view.inflate(0.05 * max(view.width, view.height))
    geom = SceneGeometry(polygon=p, o=fp.o, b=fp.b)
    if "voronoi" in want:
        geom.cells = [c.region for c in fc.voronoi_cells(fp.b, view)]
    if "midset" in want:
        geom.midset = [(s.a, s.b) for s in fc.exact_midset(fp).pieces]
    if chain is not None:
        geom.arcs = chain.arcs
    if "contour" in want:
        h = float(_pick(args.pitch, sc.pitch, 0.02))
        geom.contour = extract_midset(GapField(fp.k, fp.l), view, h).polylines
    write_text(args.out or sc.outputs.get("render"), render_svg(geom, spec, view))
    return EXIT_OK


# --------------------------------------------------------------------------- parser

def _n_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --n-list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equidist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--scene", help="scene file (JSON, version 1)")
        sp.add_argument("--out", help="output path ('-' or omitted: stdout)")
        sp.set_defaults(func=func)
        return sp

    add("construct", cmd_construct, "reflected focal points, Voronoi cells and residuals")
    sp = add("verify", cmd_verify, "check equidistance on the polygon boundary")
    sp.add_argument("--mode", choices=["points", "arcs"])
    sp.add_argument("--samples", type=int)
    sp.add_argument("--eps", type=float)
    sp = add("midset", cmd_midset, "numeric midset by marching squares")
    sp.add_argument("--pitch", type=float)
    sp.add_argument("--mode", choices=["points", "arcs"])
    sp = add("converge", cmd_converge, "inscribed-polygon convergence table (CSV)")
    sp.add_argument("--curve", help="circle:R or ellipse:A,B")
    sp.add_argument("--n-list", type=_n_list)
    sp.add_argument("--radius", type=float)
    sp.add_argument("--pitch", type=float)
    sp = add("render", cmd_render, "SVG figure of the construction")
    sp.add_argument("--layers", help="comma list of: " + ",".join(LAYERS))
    sp.add_argument("--pitch", type=float)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConstructionError as exc:
        print(f"error: ConstructionError: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (SceneError, InvalidInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except GeometryError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
