import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cloudinv import (Cloud, DegenerateCloud, Point, is_collinear,
                      linear_coefficients, raw_sums, read_cloud_csv,
                      write_cloud_csv)

TRIANGLE = [(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]


class TestPointAndCloud:
    def test_point_rejects_nan(self):
        with pytest.raises(ValueError):
            Point(float("nan"), 0.0)
        with pytest.raises(ValueError):
            Point(0.0, float("inf"))

    def test_cloud_needs_two_points(self):
        with pytest.raises(ValueError):
            Cloud([(0.0, 0.0)])

    def test_cloud_accepts_points_and_pairs(self):
        c = Cloud([Point(0, 0), (1, 1)])
        assert len(c) == 2
        assert c.points == (Point(0, 0), Point(1, 1))

    def test_from_arrays_checks_shape(self):
        with pytest.raises(ValueError):
            Cloud.from_arrays(np.zeros(3), np.zeros(4))

    def test_cloud_arrays_read_only(self):
        c = Cloud(TRIANGLE)
        with pytest.raises(ValueError):
            c.xs[0] = 5.0


class TestRawSums:
    def test_triangle(self):
        rs = raw_sums(Cloud(TRIANGLE))
        assert rs.mn == pytest.approx(0.0, abs=1e-12)
        assert rs.hn == pytest.approx(2.0, abs=1e-12)
        assert rs.d == pytest.approx(6.0, abs=1e-12)

    def test_two_points(self):
        rs = raw_sums(Cloud([(0, 0), (1, 1)]))
        assert (rs.mn, rs.hn, rs.d) == pytest.approx((1.0, 1.0, 1.0))

    def test_duplicated_point(self):
        rs = raw_sums(Cloud([(3.5, -2.0), (3.5, -2.0)]))
        assert (rs.mn, rs.hn, rs.d) == (0.0, 0.0, 0.0)


class TestLinearCoefficients:
    def test_triangle(self):
        lc = linear_coefficients(Cloud(TRIANGLE))
        assert lc.m == pytest.approx(0.0, abs=1e-15)
        assert lc.h == pytest.approx(1.0 / 3.0, rel=1e-15)

    def test_diagonal_line(self):
        lc = linear_coefficients(Cloud([(0, 0), (1, 1), (2, 2)]))
        assert lc.m == pytest.approx(1.0)
        assert lc.h == pytest.approx(1.0)
        assert lc.h == pytest.approx(lc.m ** 2)

    def test_vertical_line_degenerate(self):
        with pytest.raises(DegenerateCloud):
            linear_coefficients(Cloud([(0, 0), (0, 1), (0, 2)]))

    def test_degeneracy_scale_relative(self):
        # Large equal x-coordinates still count as degenerate.
        with pytest.raises(DegenerateCloud):
            linear_coefficients(Cloud([(1e8, 0), (1e8, 1), (1e8, 2)]))


class TestIsCollinear:
    def test_exact_line(self):
        assert is_collinear(Cloud([(0, 0), (1, 1), (2, 2)]), 1e-9)

    def test_triangle_not_collinear(self):
        assert not is_collinear(Cloud(TRIANGLE), 1e-9)

    def test_vertical_line(self):
        assert is_collinear(Cloud([(0, 0), (0, 1), (0, 2)]), 1e-9)

    def test_negative_tol_rejected(self):
        with pytest.raises(ValueError):
            is_collinear(Cloud(TRIANGLE), -1.0)


coords = st.floats(min_value=-100.0, max_value=100.0,
                   allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=2, max_size=40),
       st.randoms(use_true_random=False))
def test_permutation_invariance(pts, pyrandom):
    shuffled = list(pts)
    pyrandom.shuffle(shuffled)
    a = raw_sums(Cloud(pts))
    b = raw_sums(Cloud(shuffled))
    for va, vb in [(a.mn, b.mn), (a.hn, b.hn), (a.d, b.d)]:
        assert abs(va - vb) <= 1e-12 * max(1.0, abs(va), abs(vb))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=2, max_size=40))
def test_nonnegativity_and_cauchy_schwarz(pts):
    rs = raw_sums(Cloud(pts))
    assert rs.d >= 0.0
    assert rs.hn >= 0.0
    gap = rs.hn * rs.d - rs.mn * rs.mn
    assert gap >= -1e-9 * max(1.0, rs.hn * rs.d)


def test_offset_cloud_cancellation(rng):
    # Centered sums survive a large common offset that would wreck the raw
    # textbook formulas.
    xs = rng.random(200)
    ys = rng.random(200)
    near = raw_sums(Cloud.from_arrays(xs, ys))
    far = raw_sums(Cloud.from_arrays(xs + 1e6, ys + 1e6))
    assert far.mn == pytest.approx(near.mn, rel=1e-6, abs=1e-4)
    assert far.hn == pytest.approx(near.hn, rel=1e-6)
    assert far.d == pytest.approx(near.d, rel=1e-6)


def test_collinear_iff_zero_gap():
    # Equality in Cauchy-Schwarz exactly on collinear clouds.
    line = Cloud([(0.0, 0.0), (1.0, 0.5), (2.0, 1.0), (4.0, 2.0)])
    rs = raw_sums(line)
    assert rs.hn * rs.d - rs.mn ** 2 == pytest.approx(0.0, abs=1e-12)
    assert is_collinear(line, 1e-12)
    bent = Cloud([(0.0, 0.0), (1.0, 0.5), (2.0, 2.0)])
    rsb = raw_sums(bent)
    assert rsb.hn * rsb.d - rsb.mn ** 2 > 0.1


class TestCsv:
    def test_read_with_header(self):
        cloud = read_cloud_csv(io.StringIO("x,y\n0,0\n1,1\n2,0\n"))
        assert len(cloud) == 3
        assert cloud.points[2] == Point(2, 0)

    def test_read_without_header_and_blank_lines(self):
        cloud = read_cloud_csv(io.StringIO("0,0\n\n1,1\n\n"))
        assert len(cloud) == 2

    def test_read_crlf(self):
        cloud = read_cloud_csv(io.StringIO("x,y\r\n1.5,-2\r\n0,3\r\n"))
        assert cloud.points[0] == Point(1.5, -2.0)

    def test_read_bad_cell_count(self):
        with pytest.raises(ValueError):
            read_cloud_csv(io.StringIO("1,2,3\n"))

    def test_read_bad_number(self):
        with pytest.raises(ValueError):
            read_cloud_csv(io.StringIO("1,zzz\n"))

    def test_roundtrip(self, rng):
        cloud = Cloud.from_arrays(rng.random(10), rng.random(10))
        buf = io.StringIO()
        write_cloud_csv(cloud, buf)
        back = read_cloud_csv(io.StringIO(buf.getvalue()))
        assert np.array_equal(back.xs, cloud.xs)
        assert np.array_equal(back.ys, cloud.ys)
