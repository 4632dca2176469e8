"""Stadia of area pi: a rectangle capped by two half disks.

The aspect parameter is ``t = L / r`` for half-length ``L`` and cap radius
``r``, so ``r = sqrt(pi / (4 t + pi))``. A stadium is symmetric about both
axes; its asymmetry comes from the multistart ball search, or from the
centred disk when the search is switched off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import minimize_scalar

from .. import DomainError
from ..fraenkel import NearBallError, optimal_balls, psi
from ..geometry import Arc, ArcRegion, Segment
from .report import FamilyReport

__all__ = ["StadiumConfig", "stadium", "stadium_dimensions", "stadium_value", "stadium_optimize"]

PI = math.pi


def stadium_dimensions(t):
    """Half-length ``L`` and cap radius ``r`` of the area-``pi`` stadium with aspect ``t``."""
    if not math.isfinite(t) or t < 0.0:
        raise DomainError(f"aspect must be finite and non-negative, got {t!r}")
    r = math.sqrt(PI / (4.0 * t + PI))
    return t * r, r


def stadium(t):
    """The area-``pi`` stadium with aspect ``t`` centred at the origin (the unit disk at ``t = 0``)."""
    half, r = stadium_dimensions(t)
    if half == 0.0:
        return ArcRegion.disk((0.0, 0.0), 1.0)
    edges = (
        Segment((-half, -r), (half, -r)),
        Arc((half, 0.0), r, -0.5 * PI, 0.5 * PI, True),
        Segment((half, r), (-half, r)),
        Arc((-half, 0.0), r, 0.5 * PI, 1.5 * PI, True),
    )
    return ArcRegion((edges,))


def stadium_value(t, lambda_floor=1e-6, search=True):
    """Quotient of the stadium with aspect ``t``.

    The perimeter ``4 L + 2 pi r`` is closed form. The asymmetry is measured:
    by :func:`~qisop.fraenkel.optimal_balls` when ``search`` is true,
    otherwise as the symmetric difference with the centred unit disk.

    Raises
    ------
    NearBallError
        If the asymmetry does not exceed ``lambda_floor``.
    """
    half, r = stadium_dimensions(t)
    region = stadium(t)
    if search:
        asym = optimal_balls(region)
        lam, centers = asym.lambda_, asym.optimal_centers
    else:
        lam, centers = psi(region, (0.0, 0.0)) / PI, ((0.0, 0.0),)
    if lam <= lambda_floor:
        raise NearBallError(f"stadium with aspect {t!r} is too close to the disk")
    perim = 4.0 * half + 2.0 * PI * r
    delta = perim / (2.0 * PI) - 1.0
    return FamilyReport(
        family="stadium",
        params={"t": t},
        r0=r,
        r1=math.inf,
        a0=0.5 * PI * lam,
        a1=0.5 * PI * lam,
        delta=delta,
        lambda_=lam,
        value=delta / lam**2,
        extra={"half_length": half, "perimeter": perim, "centers": centers},
    )


@dataclass(frozen=True)
class StadiumConfig:
    # Golden-section bracket: f(mid) < f(lo), f(hi). The disk (t = 0) is excluded.
    bracket: tuple = (0.5, 1.5, 4.0)
    xtol: float = 1e-8
    search: bool = True


def stadium_optimize(config=None):
    """Golden-section minimisation of the stadium quotient over the aspect.

    Returns ``(t, value)``.
    """
    cfg = config or StadiumConfig()
    res = minimize_scalar(
        lambda t: stadium_value(t, search=cfg.search).value,
        bracket=cfg.bracket,
        method="golden",
        options={"xtol": cfg.xtol},
    )
    return float(res.x), float(res.fun)
