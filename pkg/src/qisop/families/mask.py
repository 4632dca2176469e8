"""The two-ball mask family.

A mask is doubly symmetric with two optimal unit balls centred at
``(+-x0, 0)``. In the first quadrant its boundary has three arcs: ``gamma1``
about ``O1 = (0, y1)`` inside both balls, ``gamma2`` about ``O2`` inside one
ball only, and ``gamma3`` about ``O3 = (x3, 0)`` outside both. Consecutive
arcs join with a common tangent. The parameters are the angle ``alpha`` at
``O1``, the angle ``theta`` at the ball center and ``x0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .. import DomainError
from ..geometry import Arc, ArcRegion
from ..special import h
from .report import ConfigurationError, FamilyReport, SingularParameterError

__all__ = [
    "MaskParams",
    "MaskOptimizeConfig",
    "REFERENCE_MASK",
    "mask_x0_from_area",
    "mask_area",
    "mask_perimeter",
    "mask_lambda",
    "mask_metrics",
    "mask_construct",
    "mask_objective",
    "mask_optimize",
]

PI = math.pi
HALF_PI = 0.5 * PI
_SING = 1e-12


@dataclass(frozen=True)
class MaskParams:
    """Mask parameters.

    ``extended=True`` admits ``0 <= theta <= pi`` for configurations whose
    inner curvatures have opposite signs; no other function relies on it.
    """

    alpha: float
    theta: float
    x0: float
    extended: bool = False

    def __post_init__(self):
        a, t, x = self.alpha, self.theta, self.x0
        if not all(math.isfinite(v) for v in (a, t, x)):
            raise DomainError("mask parameters must be finite")
        if self.extended:
            ok = 0.0 <= a <= HALF_PI and 0.0 <= t <= PI
        else:
            ok = a >= 0.0 and t >= 0.0 and a + t <= HALF_PI + 1e-15
        if not ok:
            raise DomainError(f"(alpha, theta) = ({a!r}, {t!r}) is outside the feasibility triangle")
        if not -1e-15 <= x <= math.cos(t) + 1e-15:
            raise DomainError(f"x0 must lie in [0, cos(theta)], got {x!r}")


# The conjectured minimiser, quoted to seven digits.
REFERENCE_MASK = MaskParams(0.2686247, 0.5285017, 0.3940769)


def _area_coefficients(alpha, theta):
    # A / 4 = qa x0**2 + qb x0 + qc
    ha = h(alpha)
    c, s = math.cos(theta), math.sin(theta)
    qa = 0.5 * ha
    qb = s + ha * c
    qc = -0.5 * c * c * ha + c * s + 0.5 * s * s * h(HALF_PI - alpha)
    return qa, qb, qc


def mask_area(alpha, theta, x0):
    """Closed-form area of the mask."""
    qa, qb, qc = _area_coefficients(alpha, theta)
    return 4.0 * ((qa * x0 + qb) * x0 + qc)


def mask_x0_from_area(alpha, theta, extended=False):
    """The ``x0`` in ``[0, cos(theta)]`` giving area ``pi``.

    The area is quadratic in ``x0`` with positive leading and linear
    coefficients, so there is at most one non-negative root.

    Raises
    ------
    DomainError
        If ``(alpha, theta)`` is infeasible or the root is outside
        ``[0, cos(theta)]``.
    """
    MaskParams(alpha, theta, 0.0, extended)  # validates the angles
    qa, qb, qc = _area_coefficients(alpha, theta)
    qc -= 0.25 * PI
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0.0:
        raise DomainError(f"no real x0 for alpha={alpha!r}, theta={theta!r}")
    # numerically stable form of (-qb + sqrt(disc)) / (2 qa)
    x0 = -2.0 * qc / (qb + math.sqrt(disc))
    cmax = math.cos(theta)
    if not -1e-13 <= x0 <= cmax + 1e-13:
        raise DomainError(f"area root x0={x0!r} is outside [0, cos(theta)]")
    return min(max(x0, 0.0), cmax)


def mask_perimeter(alpha, theta, x0):
    sa, ca = math.sin(alpha), math.cos(alpha)
    if sa < _SING or ca < _SING:
        raise SingularParameterError(f"mask radii are singular at alpha={alpha!r}")
    st, ct = math.sin(theta), math.cos(theta)
    return 4.0 * (alpha * (x0 + ct) / sa - alpha * st / ca + HALF_PI * st / ca)


def mask_lambda(alpha, theta, x0):
    ct, st = math.cos(theta), math.sin(theta)
    ha = h(alpha)
    return 2.0 - (4.0 / PI) * (2.0 * x0 * ha * ct + theta + ct * st - ha * ct * ct)


def _geometry(alpha, theta, x0):
    sa, ca = math.sin(alpha), math.cos(alpha)
    st, ct = math.sin(theta), math.cos(theta)
    r1 = (ct - x0) / sa
    r2 = x0 / sa
    r3 = st / ca
    o1 = (0.0, (math.cos(theta - alpha) - x0 * ca) / sa)
    o2 = (ct, st - x0 * ca / sa)
    o3 = (x0 + math.cos(alpha + theta) / ca, 0.0)
    return r1, r2, r3, o1, o2, o3


def mask_metrics(p):
    """Closed-form perimeter, area, deficit, asymmetry and quotient.

    Raises
    ------
    SingularParameterError
        If ``sin(alpha)`` or ``cos(alpha)`` is below ``1e-12``, or the inner
        radius ``R1`` vanishes.
    """
    a, t, x0 = p.alpha, p.theta, p.x0
    perim = mask_perimeter(a, t, x0)
    r1, r2, r3, o1, o2, o3 = _geometry(a, t, x0)
    if r1 < _SING:
        raise SingularParameterError("inner radius R1 vanishes (x0 = cos(theta))")
    area = mask_area(a, t, x0)
    lam = mask_lambda(a, t, x0)
    delta = perim / (2.0 * PI) - 1.0
    half = 0.5 * PI * lam  # |M \ B| = |B \ M| when both areas are pi
    return FamilyReport(
        family="mask",
        params={"alpha": a, "theta": t, "x0": x0},
        r0=r3,
        r1=r1,
        a0=half,
        a1=half,
        delta=delta,
        lambda_=lam,
        value=delta / lam**2,
        extra={
            "perimeter": perim,
            "area": area,
            "R1": r1,
            "R2": r2,
            "R3": r3,
            "O1": o1,
            "O2": o2,
            "O3": o3,
            "centers": ((-x0, 0.0), (x0, 0.0)),
        },
    )


def mask_construct(p):
    """Eight-arc mask with tangent joins.

    Arcs of zero radius (``x0 = 0`` or ``theta = 0``) are dropped.
    """
    a, t, x0 = p.alpha, p.theta, p.x0
    r1, r2, r3, o1, o2, o3 = _geometry(a, t, x0)
    hp = HALF_PI
    spec = [
        (o3, r3, -hp + a, hp - a, True),
        (o2, r2, hp - a, hp + a, True),
        (o1, r1, -hp + a, -hp - a, False),
        ((-o2[0], o2[1]), r2, hp - a, hp + a, True),
        ((-o3[0], 0.0), r3, hp + a, 3 * hp - a, True),
        ((-o2[0], -o2[1]), r2, -hp - a, -hp + a, True),
        ((0.0, -o1[1]), r1, hp + a, hp - a, False),
        ((o2[0], -o2[1]), r2, -hp - a, -hp + a, True),
    ]
    edges = tuple(Arc(c, r, s, e, ccw) for c, r, s, e, ccw in spec if r > _SING)
    return ArcRegion((edges,))


def mask_objective(alpha, theta):
    """``J = (P - 2 pi) / lambda**2`` with ``x0`` fixed by the area; ``inf`` if infeasible."""
    try:
        x0 = mask_x0_from_area(alpha, theta)
        perim = mask_perimeter(alpha, theta, x0)
    except DomainError:
        return math.inf
    if math.cos(theta) - x0 < _SING:
        return math.inf
    lam = mask_lambda(alpha, theta, x0)
    if not lam > 0.0:
        return math.inf
    return (perim - 2.0 * PI) / lam**2


@dataclass(frozen=True)
class MaskOptimizeConfig:
    """``lattice`` points per side; every start is descended to ``coarse_xatol``
    and the best end point is refined to ``xatol``."""

    lattice: int = 16
    coarse_xatol: float = 1e-4
    xatol: float = 1e-9
    fatol: float = 1e-15
    max_iter: int = 2000


def _nelder_mead(x0, xatol, fatol, max_iter):
    return minimize(
        lambda v: mask_objective(float(v[0]), float(v[1])),
        np.asarray(x0, dtype=float),
        method="Nelder-Mead",
        options={"xatol": xatol, "fatol": fatol, "maxiter": max_iter},
    )


def mask_optimize(config=None):
    """Minimise ``J`` over the feasibility triangle.

    Nelder-Mead runs from every point of a ``lattice x lattice`` grid on
    ``(0, pi/2)**2`` that lies strictly inside the triangle
    ``alpha + theta < pi/2`` and has finite ``J``. The best end point is
    then refined with a fresh simplex.

    Raises
    ------
    ConfigurationError
        If no lattice point is feasible.
    """
    cfg = config or MaskOptimizeConfig()
    m = int(cfg.lattice)
    if m < 1:
        raise ConfigurationError("lattice must be a positive integer")
    step = HALF_PI / (m + 1)
    starts = []
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            a, t = i * step, j * step
            if a + t < HALF_PI and math.isfinite(mask_objective(a, t)):
                starts.append((a, t))
    if not starts:
        raise ConfigurationError("every start point of the lattice is infeasible")
    best = None
    for s in starts:
        res = _nelder_mead(s, cfg.coarse_xatol, 1e-12, cfg.max_iter)
        if not math.isfinite(res.fun):
            continue
        key = (float(res.fun), float(res.x[0]), float(res.x[1]))
        if best is None or key < best:
            best = key
    if best is None:
        raise ConfigurationError("no feasible minimum was found")
    res = _nelder_mead(best[1:], cfg.xatol, cfg.fatol, cfg.max_iter)
    a, t = (float(res.x[0]), float(res.x[1])) if res.fun <= best[0] else best[1:]
    p = MaskParams(a, t, mask_x0_from_area(a, t))
    return p, mask_metrics(p)
