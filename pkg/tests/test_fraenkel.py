import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qisop import DomainError
from qisop.families import MaskParams, mask_construct, mask_metrics
from qisop.families.random_shapes import bumpy_disk, random_polygon
from qisop.fraenkel import (
    NearBallError,
    SearchConfig,
    ball_radius,
    deficit,
    functional,
    optimal_balls,
    psi,
    psi_gradient,
)
from qisop.geometry import Arc, ArcRegion, TransversalityError, rigid_transform, scale

PI = math.pi
UNIT_SQUARE = ArcRegion.polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def two_disks(r1, r2, d):
    return ArcRegion(
        (
            (Arc((0.0, 0.0), r1, 0.0, 2 * PI, True),),
            (Arc((d, 0.0), r2, 0.0, 2 * PI, True),),
        )
    )


def test_ball_radius_matches_area():
    assert ball_radius(UNIT_SQUARE) == pytest.approx(1 / math.sqrt(PI), abs=1e-15)


def test_disk_has_zero_asymmetry_and_deficit():
    disk = ArcRegion.disk((0.3, -0.2), 1.7)
    res = optimal_balls(disk)
    assert res.lambda_ == pytest.approx(0.0, abs=1e-12)
    assert deficit(disk) == 0.0
    with pytest.raises(NearBallError):
        functional(disk)


def test_square_deficit_closed_form():
    assert deficit(UNIT_SQUARE) == pytest.approx(2 / math.sqrt(PI) - 1, abs=1e-15)


def test_square_psi_against_shapely_oracle():
    shapely = pytest.importorskip("shapely.geometry")
    rho = 1 / math.sqrt(PI)
    disk = shapely.Point(0.5, 0.5).buffer(rho, quad_segs=4096)
    square = shapely.box(0, 0, 1, 1)
    expected = square.symmetric_difference(disk).area
    assert psi(UNIT_SQUARE, (0.5, 0.5)) == pytest.approx(expected, abs=1e-6)


def test_square_is_optimal_at_center():
    res = optimal_balls(UNIT_SQUARE)
    assert len(res.optimal_centers) == 1
    cx, cy = res.optimal_centers[0]
    assert (cx, cy) == pytest.approx((0.5, 0.5), abs=1e-7)
    assert res.lambda_ == pytest.approx(psi(UNIT_SQUARE, (0.5, 0.5)), abs=1e-12)


def test_far_apart_equal_disks_have_asymmetry_one():
    # The area-matched ball has radius sqrt(2) r; any placement covering one
    # disk and missing the other gives psi = |region|.
    region = two_disks(0.5, 0.5, 5.0)
    res = optimal_balls(region)
    assert res.lambda_ == pytest.approx(1.0, abs=1e-9)


def test_unequal_far_disks_prefer_the_larger_one():
    r1, r2 = 1.0, 0.4
    region = two_disks(r1, r2, 6.0)
    res = optimal_balls(region)
    a = region.area
    expected = (a + a - 2 * PI * r1 * r1) / a
    assert res.lambda_ == pytest.approx(expected, abs=1e-9)
    assert res.optimal_centers[0] == pytest.approx((0.0, 0.0), abs=1e-6)


def test_saddle_at_center_of_symmetry_is_escaped():
    # The centroid is a stationary point of psi by symmetry but not a minimum.
    p = MaskParams(0.677117164250176, 0.8516424536241904, 0.18433708375980948)
    region = mask_construct(p)
    res = optimal_balls(region)
    assert res.lambda_ == pytest.approx(mask_metrics(p).lambda_, abs=1e-9)
    assert res.lambda_ < psi(region, (0.0, 0.0)) / PI
    xs = sorted(c[0] for c in res.optimal_centers)
    assert xs == pytest.approx([-p.x0, p.x0], abs=1e-6)


def test_gradient_matches_finite_differences_on_polygon():
    rng = np.random.default_rng(3)
    region = random_polygon(rng)
    c = (0.05, -0.1)
    gx, gy = psi_gradient(region, c)
    hs = 1e-6
    fx = (psi(region, (c[0] + hs, c[1])) - psi(region, (c[0] - hs, c[1]))) / (2 * hs)
    fy = (psi(region, (c[0], c[1] + hs)) - psi(region, (c[0], c[1] - hs))) / (2 * hs)
    assert (gx, gy) == pytest.approx((fx, fy), abs=1e-6)


def test_gradient_vanishes_at_center_of_disk_and_square():
    assert psi_gradient(UNIT_SQUARE, (0.5, 0.5)) == pytest.approx((0.0, 0.0), abs=1e-13)


def test_gradient_raises_on_tangency():
    # The ball of the same area as the unit disk, shifted by 2, touches it.
    region = ArcRegion.disk((0.0, 0.0), 1.0)
    with pytest.raises(TransversalityError):
        psi_gradient(region, (2.0, 0.0))


def test_zero_area_rejected():
    class Empty:
        area = 0.0

    with pytest.raises(DomainError):
        optimal_balls(Empty())


def test_search_is_deterministic():
    region = bumpy_disk(np.random.default_rng(9))[0]
    a = optimal_balls(region)
    b = optimal_balls(region)
    assert a == b


def test_max_starts_respected():
    region = bumpy_disk(np.random.default_rng(10))[0]
    res = optimal_balls(region, SearchConfig(max_starts=1))
    assert res.lambda_ >= optimal_balls(region).lambda_ - 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.floats(-PI, PI), st.floats(-3, 3), st.floats(-3, 3), st.floats(0.3, 3.0))
def test_quotient_invariant_under_similarity(seed, rot, tx, ty, factor):
    region = bumpy_disk(np.random.default_rng(seed))[0]
    moved = scale(rigid_transform(region, rot, (tx, ty)), factor)
    d0, d1 = deficit(region), deficit(moved)
    l0, l1 = optimal_balls(region).lambda_, optimal_balls(moved).lambda_
    assert d1 == pytest.approx(d0, abs=1e-8)
    assert l1 == pytest.approx(l0, abs=1e-8)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_deficit_nonnegative_and_asymmetry_in_range(seed):
    rng = np.random.default_rng(seed)
    region = bumpy_disk(rng)[0] if seed % 2 else random_polygon(rng)
    assert deficit(region) >= 0.0
    lam = optimal_balls(region).lambda_
    assert 0.0 <= lam < 2.0
