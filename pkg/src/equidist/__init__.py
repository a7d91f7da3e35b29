"""Convex polygons and convex closed curves as equidistant sets of two focal sets."""

from .errors import (
    BadParameter,
    ConstructionError,
    DegenerateFieldWarning,
    DegenerateInput,
    DuplicateSites,
    EmptySet,
    NotConvex,
    PointNotInterior,
)
from .focal import (
    ArcChain,
    FocalPair,
    MidsetExact,
    VoronoiCell,
    connected_focal_set,
    construct_focal_pair,
    exact_midset,
    reconstruct_and_compare,
    verify_equidistance_on_boundary,
    voronoi_cells,
)
from .geometry import (
    Arc2,
    BBox,
    CompactSet,
    ConvexPolygon,
    HalfPlane,
    Line2,
    Point2,
    Polyline,
    Segment2,
    clip_convex_region,
    distance_point_set,
    orientation,
    perpendicular_bisector,
    reflect_point,
)
from .hausdorff import (
    Circle,
    ConvergenceRow,
    Ellipse,
    SampledCurve,
    convergence_experiment,
    directed_hausdorff,
    exercise1_check,
    focal_ring_bounds,
    hausdorff_distance,
    inscribed_ngon,
)
from .midset import GapField, MidsetNumeric, extract_midset, gap, hausdorff_to_reference

__version__ = "0.1.0"
