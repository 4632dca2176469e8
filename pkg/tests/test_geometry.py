import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qisop.geometry import (
    Arc,
    ArcRegion,
    Ball,
    GeometryError,
    Segment,
    TransversalityError,
    area,
    bounding_box,
    centroid,
    circle_boundary_intersections,
    contains,
    intersection_area,
    perimeter,
    reflect,
    region_from_json,
    region_to_json,
    rigid_transform,
    scale,
    symm_diff_area,
    validate,
)

from qisop.families import random_shapes
from qisop.families.random_shapes import random_polygon

PI = math.pi


def bumpy_disk(rng):
    return random_shapes.bumpy_disk(rng)[0]


def stadium(L, r):
    """Rectangle of half-length L and half-height r with half-disk caps."""
    return ArcRegion(
        (
            (
                Segment((-L, -r), (L, -r)),
                Arc((L, 0), r, -PI / 2, PI / 2),
                Segment((L, r), (-L, r)),
                Arc((-L, 0), r, PI / 2, 3 * PI / 2),
            ),
        )
    )


def lens_area(d, r=1.0):
    """Overlap of two disks of radius r at distance d."""
    if d >= 2 * r:
        return 0.0
    return 2 * r * r * math.acos(d / (2 * r)) - 0.5 * d * math.sqrt(4 * r * r - d * d)


UNIT_SQUARE = ArcRegion.polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def test_validate_two_half_arcs():
    circle = ArcRegion(((Arc((0, 0), 1, 0, PI), Arc((0, 0), 1, PI, 2 * PI)),))
    assert validate(circle) == []
    assert area(circle) == pytest.approx(PI, abs=1e-12)


def test_validate_closure_gap():
    circle = ArcRegion(((Arc((0, 0), 1, 0, PI), Arc((0, 0), 1, PI, 2 * PI - 1e-3)),))
    problems = validate(circle)
    assert problems and "open loop" in problems[0]
    with pytest.raises(GeometryError):
        area(circle)


def test_validate_figure_eight():
    bowtie = ArcRegion.polygon([(0, 0), (1, 1), (1, 0), (0, 1)])
    assert any("intersects" in p for p in validate(bowtie))


def test_validate_clockwise_loop():
    cw = ArcRegion.polygon([(0, 0), (0, 1), (1, 1), (1, 0)])
    assert any("counter-clockwise" in p for p in validate(cw))


def test_validate_overlapping_arcs():
    loop = (Arc((0, 0), 1, 0, 1.5 * PI), Arc((0, 0), 1, 1.5 * PI, 0.5 * PI, ccw=False),
            Arc((0, 0), 1, 0.5 * PI, 2 * PI))
    assert validate(ArcRegion((loop,)))


def test_area_and_perimeter_closed_forms():
    disk = ArcRegion.disk((0.3, -0.2), 2.0)
    assert area(disk) == pytest.approx(4 * PI, abs=1e-12)
    assert perimeter(disk) == pytest.approx(4 * PI, abs=1e-12)
    assert area(UNIT_SQUARE) == pytest.approx(1.0, abs=1e-12)
    assert perimeter(UNIT_SQUARE) == pytest.approx(4.0, abs=1e-12)
    L, r = 0.7, 0.4
    st_region = stadium(L, r)
    assert perimeter(st_region) == pytest.approx(4 * L + 2 * PI * r, abs=1e-12)
    assert area(st_region) == pytest.approx(4 * L * r + PI * r * r, abs=1e-12)


def test_clockwise_arc_area():
    # Unit square with the top side replaced by an inward semicircular bite.
    loop = (
        Segment((0, 0), (2, 0)),
        Segment((2, 0), (2, 2)),
        Arc((1, 2), 1, 0.0, PI, ccw=False),
        Segment((0, 2), (0, 0)),
    )
    region = ArcRegion((loop,))
    assert validate(region) == []
    assert area(region) == pytest.approx(4 - PI / 2, abs=1e-12)


def test_centroid_and_bbox():
    assert centroid(UNIT_SQUARE) == pytest.approx((0.5, 0.5), abs=1e-14)
    assert centroid(ArcRegion.disk((2, 3), 1)) == pytest.approx((2, 3), abs=1e-12)
    half = ArcRegion(((Arc((0, 0), 1, 0, PI), Segment((-1, 0), (1, 0))),))
    assert centroid(half) == pytest.approx((0, 4 / (3 * PI)), abs=1e-12)
    assert bounding_box(ArcRegion.disk((2, 3), 1)) == pytest.approx((1, 2, 3, 4), abs=1e-12)
    assert bounding_box(half) == pytest.approx((-1, 0, 1, 1), abs=1e-12)


def test_contains():
    assert contains(UNIT_SQUARE, (0.5, 0.5))
    assert not contains(UNIT_SQUARE, (1.5, 0.5))
    disk = ArcRegion.disk((0, 0), 1)
    assert contains(disk, (0.99, 0.0))
    assert not contains(disk, (1.01, 0.0))


def test_intersections_of_two_unit_disks():
    disk = ArcRegion.disk((0, 0), 1)
    hits = circle_boundary_intersections(disk, Ball((1, 0), 1))
    assert len(hits) == 2
    pts = sorted(h.point for h in hits)
    assert pts[0] == pytest.approx((0.5, -math.sqrt(3) / 2), abs=1e-14)
    assert pts[1] == pytest.approx((0.5, math.sqrt(3) / 2), abs=1e-14)
    # Angles around the ball center, counter-clockwise.
    assert [h.angle for h in hits] == pytest.approx([2 * PI / 3, 4 * PI / 3], abs=1e-14)
    assert [h.sign for h in hits] == [-1, 1]


def test_intersections_empty_cases():
    disk = ArcRegion.disk((0, 0), 1)
    assert circle_boundary_intersections(disk, Ball((5, 0), 1)) == []
    assert circle_boundary_intersections(disk, Ball((0, 0), 0.5)) == []
    assert circle_boundary_intersections(disk, Ball((0, 0), 2.0)) == []


def test_intersections_tangency_raises():
    disk = ArcRegion.disk((0, 0), 1)
    with pytest.raises(TransversalityError):
        circle_boundary_intersections(disk, Ball((2, 0), 1))
    with pytest.raises(TransversalityError):
        circle_boundary_intersections(disk, Ball((0, 0), 1))
    with pytest.raises(TransversalityError):
        circle_boundary_intersections(UNIT_SQUARE, Ball((0.5, 0.5), 0.5))


def test_symm_diff_examples():
    disk = ArcRegion.disk((0, 0), 1)
    assert symm_diff_area(disk, Ball((0, 0), 1)) == pytest.approx(0.0, abs=1e-14)
    assert symm_diff_area(disk, Ball((1, 0), 1)) == pytest.approx(2 * PI / 3 + math.sqrt(3), abs=1e-12)
    assert symm_diff_area(disk, Ball((2, 0), 1)) == pytest.approx(2 * PI, abs=1e-12)


@pytest.mark.parametrize("d", np.linspace(0.0, 2.5, 26))
def test_symm_diff_lens_formula(d):
    disk = ArcRegion.disk((0, 0), 1)
    expected = 2 * PI - 2 * lens_area(d)
    assert symm_diff_area(disk, Ball((d, 0.0), 1)) == pytest.approx(expected, abs=1e-12)


def test_symm_diff_square_against_inscribed_and_circumscribed():
    assert symm_diff_area(UNIT_SQUARE, Ball((0.5, 0.5), 0.5)) == pytest.approx(1 - PI / 4, abs=1e-14)
    assert symm_diff_area(UNIT_SQUARE, Ball((0.5, 0.5), 1.0)) == pytest.approx(PI - 1, abs=1e-14)
    # Square side 1 and ball through the midpoints of one pair of sides.
    r = 0.6
    half = math.sqrt(r * r - 0.25)
    seg = r * r * math.acos(0.5 / r) - 0.5 * half  # segment area beyond x = 1/2
    overlap = PI * r * r - 4 * seg
    assert intersection_area(UNIT_SQUARE, Ball((0.5, 0.5), r)) == pytest.approx(overlap, abs=1e-13)


def test_symm_diff_matches_shapely_polygon_oracle():
    shapely = pytest.importorskip("shapely.geometry")
    rng = np.random.default_rng(7)
    for _ in range(20):
        poly = random_polygon(rng)
        pts = [e.start for e in poly.loops[0]]
        c = rng.uniform(-0.5, 0.5, 2)
        r = rng.uniform(0.3, 1.5)
        disk = shapely.Point(*c).buffer(r, quad_segs=4096)
        oracle = shapely.Polygon(pts).symmetric_difference(disk).area
        # The buffered disk under-estimates the circle by ~pi^3 r^2 / (3 n^2).
        assert symm_diff_area(poly, Ball(tuple(c), r)) == pytest.approx(oracle, abs=3e-6)


def test_symm_diff_shared_arc_and_tangent_contact():
    # Region whose boundary contains a quarter of the ball boundary.
    loop = (Segment((0, 0), (1, 0)), Arc((0, 0), 1, 0, PI / 2), Segment((0, 1), (0, 0)))
    quarter = ArcRegion((loop,))
    assert intersection_area(quarter, Ball((0, 0), 1)) == pytest.approx(PI / 4, abs=1e-14)
    # Internally tangent disk.
    disk = ArcRegion.disk((0.5, 0), 0.5)
    assert intersection_area(disk, Ball((0, 0), 1)) == pytest.approx(PI / 4, abs=1e-14)
    # Externally tangent disk.
    assert intersection_area(disk, Ball((2, 0), 1)) == pytest.approx(0.0, abs=1e-14)


def test_two_component_region():
    region = ArcRegion(ArcRegion.disk((0, 0), 1).loops + ArcRegion.disk((5, 0), 0.5).loops)
    assert validate(region) == []
    assert area(region) == pytest.approx(1.25 * PI, abs=1e-12)
    assert symm_diff_area(region, Ball((0, 0), 1)) == pytest.approx(0.25 * PI, abs=1e-12)
    hits = circle_boundary_intersections(region, Ball((4.6, 0), 0.5))
    assert len(hits) == 2


def test_rigid_transform_examples():
    assert rigid_transform(UNIT_SQUARE, 0.0, (0.0, 0.0)) == UNIT_SQUARE
    rotated = rigid_transform(UNIT_SQUARE, PI / 2, (0, 0))
    assert area(rotated) == pytest.approx(1.0, abs=1e-15)
    shape = bumpy_disk(np.random.default_rng(3))
    ball = Ball((0.2, 0.1), 1.0)
    moved = rigid_transform(shape, 0.0, (5, 5))
    expected = symm_diff_area(shape, ball)
    assert symm_diff_area(moved, Ball((5.2, 5.1), 1.0)) == pytest.approx(expected, abs=1e-12)


def test_rigid_invariance_randomised():
    rng = np.random.default_rng(11)
    shape = bumpy_disk(rng)
    a0, p0 = area(shape), perimeter(shape)
    for _ in range(100):
        moved = rigid_transform(shape, rng.uniform(-PI, PI), tuple(rng.uniform(-3, 3, 2)))
        assert area(moved) == pytest.approx(a0, rel=1e-12)
        assert perimeter(moved) == pytest.approx(p0, rel=1e-12)


def test_scale_and_reflect():
    shape = bumpy_disk(np.random.default_rng(5))
    assert area(scale(shape, 3.0)) == pytest.approx(9 * area(shape), rel=1e-12)
    mirrored = reflect(shape, "x")
    assert validate(mirrored) == []
    assert area(mirrored) == pytest.approx(area(shape), rel=1e-12)
    assert area(reflect(shape, "y")) == pytest.approx(area(shape), rel=1e-12)


def test_json_round_trip():
    shape = bumpy_disk(np.random.default_rng(9))
    doc = json.loads(json.dumps(region_to_json(shape)))
    assert region_from_json(doc) == shape
    with pytest.raises(GeometryError):
        region_from_json({"loops": [[{"type": "spline"}]]})
    with pytest.raises(GeometryError):
        region_from_json({"edges": []})


@settings(max_examples=60, deadline=None)
@given(
    st.floats(0.2, 3.0),
    st.floats(0.2, 3.0),
    st.floats(-3.0, 3.0),
    st.floats(-3.0, 3.0),
)
def test_symmetry_of_difference_between_disks(r1, r2, cx, cy):
    a = symm_diff_area(ArcRegion.disk((0, 0), r1), Ball((cx, cy), r2))
    b = symm_diff_area(ArcRegion.disk((cx, cy), r2), Ball((0, 0), r1))
    assert a == pytest.approx(b, abs=1e-10)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.floats(-1.5, 1.5), st.floats(-1.5, 1.5), st.floats(0.1, 2.0))
def test_set_theoretic_bounds(seed, cx, cy, r):
    shape = bumpy_disk(np.random.default_rng(seed))
    ball = Ball((cx, cy), r)
    value = symm_diff_area(shape, ball)
    a, b = area(shape), ball.area
    assert a + b - 2 * min(a, b) - 1e-12 <= value <= a + b + 1e-12


def test_triangle_inequality_on_disk_triples():
    rng = np.random.default_rng(21)

    def dist(p, q):
        return symm_diff_area(ArcRegion.disk(p[:2], p[2]), Ball(q[:2], q[2]))

    for _ in range(200):
        a, b, c = (np.r_[rng.uniform(-1, 1, 2), rng.uniform(0.3, 1.2)] for _ in range(3))
        assert dist(a, c) <= dist(a, b) + dist(b, c) + 1e-12


def test_crossing_count_even_and_alternating():
    rng = np.random.default_rng(13)
    checked = 0
    for _ in range(200):
        shape = bumpy_disk(rng)
        ball = Ball(tuple(rng.uniform(-0.5, 0.5, 2)), rng.uniform(0.5, 1.5))
        try:
            hits = circle_boundary_intersections(shape, ball)
        except TransversalityError:
            continue
        checked += 1
        assert len(hits) % 2 == 0
        signs = [h.sign for h in hits]
        assert all(signs[k] != signs[(k + 1) % len(signs)] for k in range(len(signs)))
    assert checked > 150
