"""Four-cap ovals close to the unit ball.

An oval replaces two opposite ball arcs of half-width ``eta1`` by outward
caps and two arcs of half-width ``eta2`` by inward caps. Each cap adds or
removes area ``eps``, so the symmetric difference with the ball is ``4 eps``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import minimize_scalar

from .. import DomainError
from ..fraenkel import NearBallError
from ..geometry import Ball
from ..special import F_defect, h, h_inv, limit_case_a
from ..symmetrization import build_symmetric
from .report import FamilyReport

__all__ = ["OvalParams", "oval_metrics", "oval_construct", "oval_angles", "limit_constant_minimizer"]

PI = math.pi


@dataclass(frozen=True)
class OvalParams:
    eta1: float
    eta2: float
    eps: float

    def __post_init__(self):
        e1, e2 = self.eta1, self.eta2
        if not (0.0 < e1 <= 0.5 * PI and 0.0 < e2 <= 0.5 * PI):
            raise DomainError(f"eta1, eta2 must lie in (0, pi/2], got {e1!r}, {e2!r}")
        if e1 + e2 > 0.5 * PI + 1e-12:
            raise DomainError("eta1 + eta2 must not exceed pi/2")
        if not math.isfinite(self.eps) or self.eps < 0.0:
            raise DomainError(f"eps must be finite and positive, got {self.eps!r}")
        if self.eps == 0.0:
            raise NearBallError("eps = 0 is the ball itself: the asymmetry vanishes")


def oval_angles(p):
    """Cap half-angles ``(theta1, theta2)``; ``theta2 < 0`` when the inner cap bends inward."""
    s1, s2 = math.sin(p.eta1) ** 2, math.sin(p.eta2) ** 2
    theta1 = h_inv(h(p.eta1) + p.eps / s1)
    theta2 = h_inv(h(p.eta2) - p.eps / s2)
    if theta2 <= -PI + 1e-9:
        raise DomainError("inner cap area is not achievable")
    return theta1, theta2


def oval_metrics(p):
    """Closed-form metrics: ``lambda = 4 eps / pi`` and the deficit from two cap defects."""
    theta1, theta2 = oval_angles(p)
    s1, s2 = math.sin(p.eta1) ** 2, math.sin(p.eta2) ** 2
    delta = (2.0 / PI) * (F_defect(p.eta1, p.eps / s1) + F_defect(p.eta2, -p.eps / s2))
    lam = 4.0 * p.eps / PI
    r1 = math.sin(p.eta1) / math.sin(theta1)
    r2 = math.sin(p.eta2) / math.sin(theta2) if theta2 != 0.0 else math.inf
    return FamilyReport(
        family="oval",
        params={"eta1": p.eta1, "eta2": p.eta2, "eps": p.eps},
        r0=r1,
        r1=r2,
        a0=p.eps,
        a1=p.eps,
        delta=delta,
        lambda_=lam,
        value=delta / lam**2,
        extra={"theta1": theta1, "theta2": theta2, "perimeter": 2.0 * PI * (1.0 + delta)},
    )


def oval_construct(p):
    """Build the oval around the unit ball at the origin."""
    region, _, _ = build_symmetric(Ball((0.0, 0.0), 1.0), p.eta1, p.eta2, 2.0 * p.eps, 2.0 * p.eps)
    return region


def limit_constant_minimizer(xatol=1e-12):
    """Minimise the small-oval limit on the line ``eta1 + eta2 = pi/2``.

    Returns ``(eta1, eta2, value)``.
    """
    res = minimize_scalar(
        lambda e: limit_case_a(e, 0.5 * PI - e),
        bounds=(1e-3, 0.5 * PI - 1e-3),
        method="bounded",
        options={"xatol": xatol},
    )
    e1 = float(res.x)
    return e1, 0.5 * PI - e1, float(res.fun)
