import pytest

from .. import geometry

SQUARE = [0, 1, 1 + 1j, 1j]
TRIANGLE = [0, 2, 2 + 1j]


def test_area():
    assert geometry.signed_area(SQUARE) == pytest.approx(1.0)
    assert geometry.signed_area(SQUARE[::-1]) == pytest.approx(-1.0)
    assert geometry.area(TRIANGLE) == pytest.approx(1.0)


def test_winding_number():
    assert geometry.winding_number(0.5 + 0.5j, SQUARE) == 1
    assert geometry.winding_number(0.5 + 0.5j, SQUARE[::-1]) == -1
    assert geometry.winding_number(2 + 2j, SQUARE) == 0


def test_distances():
    assert geometry.segment_distance(1j, 0, 2) == pytest.approx(1.0)
    assert geometry.segment_distance(3, 0, 2) == pytest.approx(1.0)
    assert geometry.distance_outside(0.5 + 0.5j, SQUARE) == 0.0
    assert geometry.distance_outside(2 + 0.5j, SQUARE) == pytest.approx(1.0)
    assert geometry.depth_inside(0.5 + 0.25j, SQUARE) == pytest.approx(0.25)
    assert geometry.depth_inside(2, SQUARE) == 0.0


def test_is_convex():
    assert geometry.is_convex(SQUARE)
    assert not geometry.is_convex([0, 2, 2 + 2j, 1 + 0.5j, 2j])


def test_penetration():
    assert geometry.penetration(SQUARE, [z + 2 for z in SQUARE]) == 0.0
    shifted = [z + 0.75 for z in SQUARE]
    assert geometry.penetration(SQUARE, shifted) == pytest.approx(0.25)
    # sharing an edge is not an overlap
    assert geometry.penetration(SQUARE, [z + 1 for z in SQUARE]) == 0.0


def test_overlap_depth_nonconvex():
    arrow = [0, 2, 2 + 2j, 1 + 0.5j, 2j]
    assert geometry.overlap_depth(arrow, [z + 5 for z in arrow], 1e-9) == 0.0
    shifted = [z + 0.3 + 0.3j for z in arrow]
    assert geometry.overlap_depth(arrow, shifted, 1e-9) == pytest.approx(0.3)


def test_segments_cross():
    assert geometry.segments_cross(0, 2 + 2j, 2j, 2, 1e-9)
    assert not geometry.segments_cross(0, 1, 1, 1 + 1j, 1e-9)


def test_circle_and_diameter():
    center, radius = geometry.bounding_circle(SQUARE)
    assert center == pytest.approx(0.5 + 0.5j)
    assert radius == pytest.approx(2 ** 0.5 / 2)
    assert geometry.diameter(SQUARE) == pytest.approx(2 ** 0.5)
    assert geometry.diameter([1j]) == 0.0
    assert geometry.inradius(SQUARE) == pytest.approx(0.5)
