import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from equidist.geometry import ConvexPolygon, Point2
from equidist.shapes import random_convex_polygon, regular_polygon, square, triangle_345

ROOT = Path(__file__).resolve().parents[1]
SCENES = ROOT / "scenes"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def sq():
    return square()


@pytest.fixture
def tri():
    return triangle_345()


@pytest.fixture
def hexagon():
    return regular_polygon(6)


coords = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)
points = st.builds(Point2, coords, coords)


@st.composite
def convex_polygons(draw, min_n=3, max_n=24):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(min_n, max_n))
    return random_convex_polygon(np.random.default_rng(seed), n)


@st.composite
def polygon_with_interior_point(draw):
    p = draw(convex_polygons())
    # convex combination of vertices weighted away from the boundary
    w = np.array(draw(st.lists(st.floats(0.2, 1.0), min_size=p.n, max_size=p.n)))
    xy = (w[:, None] * p.array()).sum(axis=0) / w.sum()
    return p, Point2(*xy)
