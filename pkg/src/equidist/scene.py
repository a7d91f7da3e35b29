"""Scene files and result documents (JSON, schema version 1)."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import jsonschema

from .errors import BadParameter, NotConvex
from .geometry import Arc2, BBox, CompactSet, ConvexPolygon, Point2, Polyline, Segment2

SCHEMA_VERSION = 1
LAYERS = ("polygon", "focal", "voronoi", "midset", "arcs", "contour")

_XY = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_SET = {
    "type": "object",
    "properties": {
        "points": {"type": "array", "items": _XY},
        "segments": {"type": "array", "items": {"type": "array", "items": _XY, "minItems": 2, "maxItems": 2}},
        "arcs": {"type": "array", "items": {
            "type": "object",
            "properties": {
                "center": _XY,
                "radius": {"type": "number", "exclusiveMinimum": 0},
                "start_angle": {"type": "number"},
                "end_angle": {"type": "number"},
                "orientation": {"enum": ["ccw", "cw"]},
            },
            "required": ["center", "radius", "start_angle", "end_angle"],
            "additionalProperties": False,
        }},
        "polylines": {"type": "array", "items": {"type": "array", "items": _XY, "minItems": 1}},
    },
    "additionalProperties": False,
}

SCENE_SCHEMA = {
    "type": "object",
    "properties": {
        "version": {"const": SCHEMA_VERSION},
        "polygon": {"type": "array", "items": _XY},
        "o": _XY,
        "focal": {"type": "object", "properties": {"k": _SET, "l": _SET}, "additionalProperties": False},
        "reference": _SET,
        "bbox": {"type": "array", "items": {"type": "number"}, "minItems": 4, "maxItems": 4},
        "pitch": {"type": "number", "exclusiveMinimum": 0},
        "samples": {"type": "integer", "minimum": 2},
        "eps": {"type": "number", "exclusiveMinimum": 0},
        "mode": {"enum": ["points", "arcs"]},
        "curve": {"type": "string"},
        "n_list": {"type": "array", "items": {"type": "integer"}},
        "radius": {"type": "number", "exclusiveMinimum": 0},
        "threshold": {"type": "number", "exclusiveMinimum": 0},
        "figure": {
            "type": "object",
            "properties": {
                "layers": {"type": "array", "items": {"type": "string"}},
                "canvas": {"type": "array", "items": {"type": "integer", "minimum": 16}, "minItems": 2, "maxItems": 2},
                "stroke_width": {"type": "number", "exclusiveMinimum": 0},
                "colors": {"type": "object", "additionalProperties": {"type": "string"}},
            },
            "additionalProperties": False,
        },
        "outputs": {"type": "object", "additionalProperties": {"type": "string"}},
    },
    "required": ["version"],
    "additionalProperties": False,
}


class SceneError(BadParameter):
    pass


DEFAULT_COLORS = {
    "polygon": "#1f3a93",
    "focal": "#c0392b",
    "voronoi": "#7f8c8d",
    "midset": "#27ae60",
    "arcs": "#8e44ad",
    "contour": "#e67e22",
}


@dataclass(frozen=True)
class FigureSpec:
    layers: tuple[str, ...] = ("polygon", "focal", "voronoi")
    canvas: tuple[int, int] = (600, 600)
    stroke_width: float = 1.5
    colors: dict = field(default_factory=lambda: dict(DEFAULT_COLORS))

    def __post_init__(self):
        unknown = [ly for ly in self.layers if ly not in LAYERS]
        if unknown:
            raise SceneError(f"missing layer {unknown[0]!r}; known layers: {', '.join(LAYERS)}")
        if not self.layers:
            raise SceneError("figure has no layers")


@dataclass
class Scene:
    polygon: ConvexPolygon | None = None
    o: Point2 | None = None
    k: CompactSet | None = None
    l: CompactSet | None = None
    reference: CompactSet | None = None
    bbox: BBox | None = None
    pitch: float | None = None
    samples: int | None = None
    eps: float | None = None
    mode: str | None = None
    curve: str | None = None
    n_list: list[int] | None = None
    radius: float | None = None
    threshold: float | None = None
    figure: dict | None = None
    outputs: dict = field(default_factory=dict)


# --------------------------------------------------------------------------- conversions

def fmt(x: float) -> float:
    """Round to 12 significant digits for output documents."""
    r = float(f"{float(x):.12g}")
    return 0.0 if r == 0 else r


def xy_doc(p) -> list[float]:
    x, y = p
    return [fmt(x), fmt(y)]


def set_to_doc(s: CompactSet) -> dict:
    doc: dict[str, list] = {}
    for it in s.items:
        if isinstance(it, Point2):
            doc.setdefault("points", []).append(xy_doc(it))
        elif isinstance(it, Segment2):
            doc.setdefault("segments", []).append([xy_doc(it.a), xy_doc(it.b)])
        elif isinstance(it, Arc2):
            doc.setdefault("arcs", []).append({
                "center": xy_doc(it.center), "radius": fmt(it.radius),
                "start_angle": fmt(it.start_angle), "end_angle": fmt(it.end_angle),
                "orientation": it.orientation})
        else:
            doc.setdefault("polylines", []).append([xy_doc(p) for p in it.array()])
    return doc


def set_from_doc(doc: dict) -> CompactSet:
    items: list = [Point2(*p) for p in doc.get("points", [])]
    items += [Segment2(Point2(*a), Point2(*b)) for a, b in doc.get("segments", [])]
    items += [Arc2(Point2(*a["center"]), a["radius"], a["start_angle"], a["end_angle"],
                   a.get("orientation", "ccw")) for a in doc.get("arcs", [])]
    items += [Polyline(tuple(map(tuple, pl))) for pl in doc.get("polylines", [])]
    if not items:
        raise SceneError("focal or reference set is empty")
    return CompactSet(tuple(items))


def load_scene(path: str | Path) -> Scene:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SceneError(f"cannot read scene {path}: {exc}") from None
    return scene_from_doc(doc)


def scene_from_doc(doc: Any) -> Scene:
    try:
        jsonschema.validate(doc, SCENE_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SceneError(f"schema violation at {where}: {exc.message}") from None
    sc = Scene()
    if "polygon" in doc:
        try:
            sc.polygon = ConvexPolygon(tuple(map(tuple, doc["polygon"])))
        except NotConvex as exc:
            where = f" (vertex index {exc.index})" if exc.index is not None else ""
            raise SceneError(f"NotConvex: {exc}{where}") from None
    if "o" in doc:
        sc.o = Point2(*doc["o"])
    focal = doc.get("focal", {})
    if "k" in focal:
        sc.k = set_from_doc(focal["k"])
    if "l" in focal:
        sc.l = set_from_doc(focal["l"])
    if "reference" in doc:
        sc.reference = set_from_doc(doc["reference"])
    if "bbox" in doc:
        sc.bbox = BBox(*doc["bbox"])
    for key in ("pitch", "samples", "eps", "mode", "curve", "n_list", "radius", "threshold", "figure"):
        if key in doc:
            setattr(sc, key, doc[key])
    sc.outputs = dict(doc.get("outputs", {}))
    return sc


def figure_from(scene: Scene, layers: list[str] | None = None) -> FigureSpec:
    fig = dict(scene.figure or {})
    if layers is not None:
        fig["layers"] = layers
    colors = dict(DEFAULT_COLORS)
    colors.update(fig.get("colors", {}))
    kwargs: dict[str, Any] = {"colors": colors}
    if "layers" in fig:
        kwargs["layers"] = tuple(fig["layers"])
    if "canvas" in fig:
        kwargs["canvas"] = tuple(fig["canvas"])
    if "stroke_width" in fig:
        kwargs["stroke_width"] = float(fig["stroke_width"])
    return FigureSpec(**kwargs)


_NUM = r"-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?"
_PAIR = re.compile(r"\[\s*(" + _NUM + r"),\s*(" + _NUM + r")\s*\]")


def dumps(doc: dict) -> str:
    """Indented JSON with coordinate pairs kept on one line."""
    return _PAIR.sub(r"[\1, \2]", json.dumps(doc, indent=2)) + "\n"


def write_text(path: str | Path | None, text: str) -> None:
    if path is None or str(path) == "-":
        print(text, end="")
        return
    Path(path).write_text(text, encoding="utf-8", newline="\n")
