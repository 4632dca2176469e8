import math

import numpy as np
import pytest

from qisop import DomainError, NumericError
from qisop.families import (
    LEMMA_IDS,
    REFERENCE_MASK,
    ConfigurationError,
    FamilyReport,
    MaskParams,
    OvalParams,
    RotSymParams,
    SingularParameterError,
    alpha_root,
    condition_check,
    connected_metrics,
    lemma_scan,
    limit_constant_minimizer,
    mask_area,
    mask_construct,
    mask_metrics,
    mask_objective,
    mask_optimize,
    mask_x0_from_area,
    nonconnected_metrics,
    oval_construct,
    oval_metrics,
    rotsym_construct,
    soak_random,
    solve_area_balance,
    stadium,
    stadium_value,
)
from qisop.families.random_shapes import random_mask
from qisop.families.stadium import stadium_dimensions
from qisop.fraenkel import NearBallError, deficit, optimal_balls
from qisop.geometry import Ball, symm_diff_area, validate

PI = math.pi

# Frozen from 30-digit mpmath root finding on cot(a) - (n/pi)(1 - a cot(a)).
ALPHA_ROOTS = {
    2: 1.2275897189889905,
    3: 1.142376537411849,
    6: 0.98561747336908313,
    20: 0.72001525183314421,
    64: 0.50913103261380353,
}
# Frozen from 30-digit mpmath: pi / (8 (4 - pi)).
LIMIT_CONSTANT = 0.45747404579068596


@pytest.mark.parametrize("n", sorted(ALPHA_ROOTS))
def test_alpha_root_matches_mpmath(n):
    assert alpha_root(n) == pytest.approx(ALPHA_ROOTS[n], abs=1e-13)


def test_alpha_root_rejects_bad_n():
    with pytest.raises(DomainError):
        alpha_root(1)
    with pytest.raises(DomainError):
        alpha_root(2.5)


@pytest.mark.parametrize(
    "args",
    [(1, 0.1, 1.0), (3, -0.1, 1.5), (3, 1.2, 1.5), (3, 0.2, 0.5), (3, math.nan, 1.5)],
)
def test_rotsym_params_validation(args):
    with pytest.raises(DomainError):
        RotSymParams(*args)


def test_nonconnected_params_need_alpha_above_theta():
    with pytest.raises(DomainError):
        RotSymParams(3, 0.5, 0.4, connected=False)


@pytest.mark.parametrize("n,theta,alpha", [(2, 0.6, 1.9), (3, 0.5, 1.4), (5, 0.3, 0.9), (8, 0.2, 2.0)])
def test_connected_closed_forms_match_construction(n, theta, alpha):
    p = RotSymParams(n, theta, alpha)
    rep = connected_metrics(p)
    region = rotsym_construct(p)
    assert not validate(region)
    assert region.area == pytest.approx(PI + n * (rep.a0 - rep.a1), abs=1e-12)
    assert region.perimeter == pytest.approx(rep.extra["perimeter"], abs=1e-12)
    assert symm_diff_area(region, Ball((0.0, 0.0), 1.0)) == pytest.approx(n * (rep.a0 + rep.a1), abs=1e-12)


@pytest.mark.parametrize("n,alpha", [(2, 0.9), (3, 0.8), (4, 1.2), (6, 0.3)])
def test_nonconnected_closed_forms_match_construction(n, alpha):
    theta = solve_area_balance(n, alpha, connected=False)
    p = RotSymParams(n, theta, alpha, connected=False)
    rep = nonconnected_metrics(p)
    region = rotsym_construct(p, far_center=(5.0, 0.0))
    assert not validate(region)
    assert region.area == pytest.approx(PI, abs=1e-12)
    assert region.perimeter == pytest.approx(rep.extra["perimeter"], abs=1e-12)
    assert deficit(region) == pytest.approx(rep.delta, abs=1e-12)
    psi = symm_diff_area(region, Ball((0.0, 0.0), 1.0))
    assert psi / PI == pytest.approx(rep.lambda_, abs=1e-12)


def test_connected_balance_root_and_singularity():
    theta = solve_area_balance(4, 1.3)
    rep = connected_metrics(RotSymParams(4, theta, 1.3))
    assert rep.a0 == pytest.approx(rep.a1, abs=1e-14)
    with pytest.raises(SingularParameterError):
        connected_metrics(RotSymParams(4, 0.3, PI / 4))
    with pytest.raises(DomainError):
        nonconnected_metrics(RotSymParams(4, 0.3, 1.0))


def test_condition_check_keys_and_signs():
    theta = solve_area_balance(3, 1.4)
    cond = condition_check(connected_metrics(RotSymParams(3, theta, 1.4)))
    assert set(cond.residuals) == {"i", "i_bound", "ii", "iii", "iv"}
    assert cond.holds["i"]
    p = RotSymParams(3, solve_area_balance(3, 0.8, False), 0.8, False)
    cond = condition_check(nonconnected_metrics(p))
    assert set(cond.residuals) == {"i", "ii", "iii", "iv", "v"}
    with pytest.raises(DomainError):
        condition_check(FamilyReport("stadium", {}, 1, 1, 0, 0, 0.1, 0.5, 0.4))


def test_family_report_checks_quotient():
    with pytest.raises(ValueError):
        FamilyReport("x", {}, 1, 1, 0, 0, 0.1, 0.5, 1.0)
    rep = FamilyReport("x", {}, 1, 1, 0, 0, 0.1, 0.5, 0.4)
    assert rep.c_star == pytest.approx(2.5)
    assert rep.to_dict()["lambda"] == 0.5


def test_mask_x0_gives_area_pi():
    x0 = mask_x0_from_area(0.3, 0.5)
    assert mask_area(0.3, 0.5, x0) == pytest.approx(PI, abs=1e-13)


@pytest.mark.parametrize("args", [(-0.1, 0.5, 0.3), (1.0, 1.0, 0.3), (0.3, 0.5, 0.95), (math.inf, 0.1, 0.1)])
def test_mask_params_validation(args):
    with pytest.raises(DomainError):
        MaskParams(*args)


def test_mask_extended_domain_flag():
    with pytest.raises(DomainError):
        MaskParams(0.3, 1.5, 0.0)
    assert MaskParams(0.3, 1.5, 0.0, extended=True).theta == 1.5


def test_mask_closed_forms_match_construction():
    rng = np.random.default_rng(12)
    for _ in range(5):
        region, p = random_mask(rng)
        rep = mask_metrics(p)
        assert region.area == pytest.approx(rep.extra["area"], abs=1e-12)
        assert region.perimeter == pytest.approx(rep.extra["perimeter"], abs=1e-12)
        balls = [Ball(c, 1.0) for c in rep.extra["centers"]]
        for b in balls:
            assert symm_diff_area(region, b) / PI == pytest.approx(rep.lambda_, abs=1e-12)


def test_reference_mask_value():
    rep = mask_metrics(REFERENCE_MASK)
    assert rep.value == pytest.approx(0.3931397, abs=1e-7)
    assert mask_construct(REFERENCE_MASK).area == pytest.approx(PI, abs=1e-6)


def test_mask_singular_and_infeasible():
    with pytest.raises(SingularParameterError):
        mask_metrics(MaskParams(0.0, 0.5, 0.3))
    assert mask_objective(1.0, 1.0) == math.inf


def test_mask_optimize_finds_reference():
    p, rep = mask_optimize()
    assert (p.alpha, p.theta, p.x0) == pytest.approx((0.2686247, 0.5285017, 0.3940769), abs=1e-4)
    # The quoted reference x0 misses area pi by about 1e-6, so compare at equal area.
    assert rep.value <= mask_objective(REFERENCE_MASK.alpha, REFERENCE_MASK.theta) / (2 * PI) + 1e-12


def test_oval_closed_forms_match_construction():
    p = OvalParams(0.7, 0.5, 0.02)
    rep = oval_metrics(p)
    region = oval_construct(p)
    assert region.area == pytest.approx(PI, abs=1e-13)
    assert deficit(region) == pytest.approx(rep.delta, abs=1e-12)
    assert optimal_balls(region).lambda_ == pytest.approx(rep.lambda_, abs=1e-9)


def test_oval_parameter_errors():
    with pytest.raises(NearBallError):
        OvalParams(0.5, 0.5, 0.0)
    with pytest.raises(DomainError):
        OvalParams(1.0, 1.0, 0.1)


def test_oval_limit_and_minimizer():
    # Below eps ~ 1e-5 the deficit is under 1e-11 and rounding dominates.
    rep = oval_metrics(OvalParams(PI / 4, PI / 4, 1e-5))
    assert rep.value == pytest.approx(LIMIT_CONSTANT, abs=1e-5)
    e1, e2, v = limit_constant_minimizer()
    assert (e1, e2) == pytest.approx((PI / 4, PI / 4), abs=1e-6)
    assert v == pytest.approx(LIMIT_CONSTANT, abs=1e-12)


@pytest.mark.parametrize("t", [0.0, 0.5, 1.87, 4.0])
def test_stadium_area_is_pi(t):
    half, r = stadium_dimensions(t)
    region = stadium(t)
    assert region.area == pytest.approx(PI, abs=1e-13)
    assert region.perimeter == pytest.approx(4 * half + 2 * PI * r, abs=1e-13)


def test_stadium_value_search_agrees_with_center():
    a = stadium_value(1.5)
    b = stadium_value(1.5, search=False)
    assert a.value == pytest.approx(b.value, abs=1e-9)
    with pytest.raises(NearBallError):
        stadium_value(0.0)
    with pytest.raises(DomainError):
        stadium_dimensions(-1.0)


def test_lemma_ids_and_normalisation():
    assert len(LEMMA_IDS) == 22
    a = lemma_scan("l4-13", grid=10)
    b = lemma_scan("L413", grid=10)
    assert a.lemma_id == b.lemma_id == "L413"
    assert a.passed and a.worst_margin == b.worst_margin
    with pytest.raises(ConfigurationError):
        lemma_scan("L99")


def test_lemma_report_dict():
    rep = lemma_scan("L419(2)", grid=8)
    d = rep.to_dict()
    assert d["lemma_id"] == "L419(2)"
    assert d["passed"] is rep.passed
    assert d["points"] == rep.n_points > 0


def test_alpha_root_unbracketed_raises(monkeypatch):
    from qisop.families import rotsym

    monkeypatch.setattr(rotsym, "phi_factor", lambda n, a: 1.0)
    with pytest.raises(NumericError):
        rotsym.alpha_root(3)


def test_soak_is_deterministic_and_prefix_stable():
    a = soak_random(6, seed=5)
    b = soak_random(3, seed=5)
    assert [s.get("value") for s in a.samples[:3]] == [s.get("value") for s in b.samples]
    assert a.passed
    d = a.to_dict()
    assert d["family"] == "soak" and d["failures"] == []


def test_soak_reference_kinds_and_errors():
    rep = soak_random(2, seed=0, kinds=("reference_mask",))
    assert rep.min_value == pytest.approx(0.3931397, abs=1e-6)
    with pytest.raises(ConfigurationError):
        soak_random(1, seed=0, kinds=("teapot",))
    with pytest.raises(ConfigurationError):
        soak_random(0, seed=0)
