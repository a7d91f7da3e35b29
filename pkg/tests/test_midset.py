import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from equidist.errors import BadParameter, DegenerateFieldWarning, EmptySet
from equidist.focal import connected_focal_set, construct_focal_pair, exact_midset
from equidist.geometry import BBox, CompactSet, Point2, Segment2
from equidist.midset import GapField, MidsetNumeric, _cell_segments, extract_midset, gap, hausdorff_to_reference
from equidist.shapes import triangle_345

from conftest import points


def pts(*xy):
    return CompactSet.of_points(xy)


SQUARE_B = pts((2, 0), (0, 2), (-2, 0), (0, -2))


class TestGap:
    def test_midpoint(self):
        assert gap(Point2(1, 0), GapField(pts((0, 0)), pts((2, 0)))) == 0

    def test_at_focus(self):
        assert gap(Point2(0, 0), GapField(pts((0, 0)), pts((2, 0), (0, 2)))) == -2

    def test_on_square_edge(self):
        # both distances equal sqrt(1.25)
        f = GapField(pts((0, 0)), SQUARE_B)
        assert math.hypot(1, 0.5) == pytest.approx(math.hypot(1 - 2, 0.5))
        assert abs(gap(Point2(1, 0.5), f)) < 1e-15

    @given(points, points)
    def test_two_lipschitz(self, x, y):
        f = GapField(pts((0, 0), (3, 1)), SQUARE_B)
        assert abs(gap(x, f) - gap(y, f)) <= 2 * x.dist(y) + 1e-12 * (1 + x.norm() + y.norm())


def check_refined(m, fld):
    tol = min(1e-9, m.resolution * 1e-3)
    v = m.vertices()
    assert len(v) > 0
    assert np.abs(fld(v)).max() < tol


class TestExtract:
    def test_two_points_bisector(self):
        fld = GapField(pts((-1, 0)), pts((1, 0)))
        m = extract_midset(fld, BBox.square(2), 0.05)
        assert len(m.polylines) == 1
        assert np.abs(m.vertices()[:, 0]).max() < 1e-6
        check_refined(m, fld)

    def test_square_focal_pair(self, sq):
        fp = construct_focal_pair(sq, Point2(0, 0))
        fld = GapField(fp.k, fp.l)
        m = extract_midset(fld, BBox.square(3), 0.02)
        check_refined(m, fld)
        assert sq.boundary().distances(m.vertices()).max() < 0.04
        exact = exact_midset(fp).as_set()
        assert hausdorff_to_reference(m, exact) < 0.04

    def test_square_arc_chain(self, sq):
        fp = construct_focal_pair(sq, Point2(0, 0))
        fld = GapField(fp.k, connected_focal_set(sq, fp.o).as_set())
        m = extract_midset(fld, BBox.square(3), 0.02)
        check_refined(m, fld)
        assert hausdorff_to_reference(m, sq.boundary()) < 0.04

    def test_offset_grid_keeps_contract(self, tri):
        fp = construct_focal_pair(tri)
        fld = GapField(fp.k, fp.l)
        m = extract_midset(fld, BBox(-1.013, -1.007, 5.021, 4.017), 0.031)
        check_refined(m, fld)
        assert hausdorff_to_reference(m, tri.boundary()) < 2 * 0.031

    def test_closed_contour(self, sq):
        fp = construct_focal_pair(sq)
        m = extract_midset(GapField(fp.k, fp.l), BBox(-2.01, -2.03, 2.07, 2.02), 0.05)
        assert len(m.polylines) == 1
        pl = m.polylines[0]
        assert np.array_equal(pl[0], pl[-1])

    def test_sign_change_in_every_emitting_cell(self, tri):
        fp = construct_focal_pair(tri)
        fld = GapField(fp.k, fp.l)
        h = 0.05
        box = BBox(-1, -1, 5, 4)
        m = extract_midset(fld, box, h)
        xs = box.xmin + h * np.arange(m.stats["nx"] + 1)
        ys = box.ymin + h * np.arange(m.stats["ny"] + 1)
        v = m.vertices()
        i = np.clip(np.floor((v[:, 0] - box.xmin) / h + 1e-9).astype(int), 0, len(xs) - 2)
        j = np.clip(np.floor((v[:, 1] - box.ymin) / h + 1e-9).astype(int), 0, len(ys) - 2)
        for ii, jj in zip(i, j):
            corners = np.array([[xs[ii], ys[jj]], [xs[ii + 1], ys[jj]], [xs[ii + 1], ys[jj + 1]], [xs[ii], ys[jj + 1]]])
            vals = fld(corners)
            assert not (np.all(vals > 0) or np.all(vals < 0))

    def test_nothing_when_no_sign_change(self):
        fld = GapField(pts((0, 0)), pts((10, 0)))
        m = extract_midset(fld, BBox.square(1), 0.1)
        assert m.polylines == () and not m.degenerate

    def test_degenerate_field_flagged(self):
        s = pts((0, 0), (1, 0))
        with pytest.warns(DegenerateFieldWarning):
            m = extract_midset(GapField(s, s), BBox.square(2), 0.05)
        assert m.degenerate and m.polylines == ()

    def test_bad_pitch(self):
        with pytest.raises(BadParameter):
            extract_midset(GapField(pts((0, 0)), pts((1, 0))), BBox.square(1), 0.0)

    def test_thread_setting_does_not_change_output(self, monkeypatch, tri):
        fp = construct_focal_pair(tri)
        fld = GapField(fp.k, fp.l)
        out = []
        for n in ("1", "3", "0"):
            monkeypatch.setenv("EQUIDIST_THREADS", n)
            out.append(extract_midset(fld, BBox(-1, -1, 5, 4), 0.02).polylines)
        for other in out[1:]:
            assert len(other) == len(out[0])
            assert all(np.array_equal(a, b) for a, b in zip(out[0], other))

    def test_bad_thread_setting(self, monkeypatch):
        monkeypatch.setenv("EQUIDIST_THREADS", "many")
        with pytest.raises(BadParameter):
            extract_midset(GapField(pts((0, 0)), pts((1, 0))), BBox.square(3), 0.01)


class TestSaddle:
    def test_table_pairs_edges(self):
        for case in range(1, 15):
            for cp in (False, True):
                segs = _cell_segments(case, cp)
                used = [e for s in segs for e in s]
                assert len(used) == len(set(used))
                assert len(segs) == (2 if case in (5, 10) else 1)

    def test_center_value_decides_connection(self):
        # corners 0 and 2 positive; positive center joins them, cutting off corners 1 and 3
        assert sorted(_cell_segments(5, True)) == [(0, 1), (2, 3)]
        assert sorted(_cell_segments(5, False)) == [(1, 2), (3, 0)]

    def test_two_close_circles_saddle(self):
        # K = two points, L = their midpoint: field has saddles between the lobes
        fld = GapField(pts((0, 0)), pts((-0.5, 0), (0.5, 0)))
        m = extract_midset(fld, BBox.square(2), 0.1)
        check_refined(m, fld)


class TestHausdorffToReference:
    def test_bisector(self):
        fld = GapField(pts((-1, 0)), pts((1, 0)))
        m = extract_midset(fld, BBox.square(2), 0.05)
        ref = CompactSet((Segment2(Point2(0, -2), Point2(0, 2)),))
        assert hausdorff_to_reference(m, ref) < 0.05

    def test_identical(self):
        line = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]])
        m = MidsetNumeric((line,), 0.1)
        assert hausdorff_to_reference(m, m.as_set()) == 0

    def test_empty(self):
        with pytest.raises(EmptySet):
            hausdorff_to_reference(MidsetNumeric((), 0.1), pts((0, 0)))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 9))
def test_oracle_equivalence_random_polygons(seed, n):
    from equidist.shapes import random_convex_polygon
    p = random_convex_polygon(np.random.default_rng(seed), n)
    fp = construct_focal_pair(p)
    h = 0.04
    m = extract_midset(GapField(fp.k, fp.l), p.bbox().inflate(0.3), h)
    assert hausdorff_to_reference(m, exact_midset(fp).as_set()) < 2 * h
