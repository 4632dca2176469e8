"""One-ball candidates with N-fold rotational symmetry.

Around the unit ball ``B`` the boundary alternates ``N`` outer arcs, each
replacing the ball arc ``2k pi/N +- theta`` by an arc of half-angle ``alpha``,
and ``N`` inner arcs replacing the remaining ball arcs of half-width
``pi/N - theta``. In the connected case the inner arcs bend into the ball.
In the non-connected case a second component, a disk of radius ``R0``, sits
far from ``B`` and the inner arcs have half-angle ``pi/N - alpha``.

Areas are written with ``R**2 g(a) = sin(eta)**2 h(a)`` so that nothing is
singular when ``alpha = pi/N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .. import DomainError, NumericError
from ..geometry import Arc, ArcRegion
from ..special import H_cap, g, h
from ..symmetrization import cap_edge
from .report import FamilyReport, SingularParameterError

__all__ = [
    "RotSymParams",
    "connected_metrics",
    "nonconnected_metrics",
    "rotsym_metrics",
    "rotsym_construct",
    "alpha_root",
    "phi_factor",
    "condition_check",
    "ConditionReport",
    "solve_area_balance",
    "F_THRESHOLD",
]

PI = math.pi
# Quotient threshold used by the exclusion lemmas.
F_THRESHOLD = 0.406
_SING = 1e-12


@dataclass(frozen=True)
class RotSymParams:
    """Symmetry order ``n``, chord half-angle ``theta``, arc half-angle ``alpha``."""

    n: int
    theta: float
    alpha: float
    connected: bool = True

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        t, a, w = self.theta, self.alpha, PI / self.n
        if not (math.isfinite(t) and math.isfinite(a)):
            raise DomainError("theta and alpha must be finite")
        if not 0.0 <= t <= w:
            raise DomainError(f"theta must lie in [0, pi/n], got {t!r}")
        if self.connected:
            if not w <= a <= PI:
                raise DomainError(f"connected case needs pi/n <= alpha <= pi, got {a!r}")
        elif not t < a <= PI:
            raise DomainError(f"non-connected case needs theta < alpha <= pi, got {a!r}")


def _areas(n, theta, alpha):
    w = PI / n
    a0 = math.sin(theta) ** 2 * h(alpha) - g(theta)
    a1 = math.sin(w - theta) ** 2 * h(alpha - w) + g(w - theta)
    return a0, a1


def _q(theta, alpha, n, value):
    st, sw = math.sin(theta), math.sin(PI / n - theta)
    if st < _SING or sw < _SING:
        return None
    return H_cap(alpha) / st**3 - H_cap(alpha - PI / n) / sw**3 - (32.0 * n / PI) * value


def phi_factor(n, alpha):
    """The alpha-dependent factor ``cot(a) - (n/pi)(1 - a cot(a))`` of Phi."""
    c = math.cos(alpha) / math.sin(alpha)
    return c - (n / PI) * (1.0 - alpha * c)


def connected_metrics(p):
    """Closed-form metrics of the connected candidate ``p``.

    Raises
    ------
    SingularParameterError
        If ``sin(alpha)`` or ``sin(alpha - pi/n)`` is below ``1e-12``.
    """
    if not p.connected:
        raise DomainError("parameters describe the non-connected case")
    n, t, a = p.n, p.theta, p.alpha
    w = PI / n
    sa, sb = math.sin(a), math.sin(a - w)
    if sa < _SING or sb < _SING:
        raise SingularParameterError(f"radius is singular at alpha={a!r}")
    r0 = math.sin(t) / sa
    r1 = math.sin(w - t) / sb
    a0, a1 = _areas(n, t, a)
    delta = (2.0 * n * (a * r0 + (a - w) * r1) - 2.0 * PI) / (2.0 * PI)
    lam = n * (a0 + a1) / PI
    value = delta / lam**2 if lam > 0.0 else math.inf
    return FamilyReport(
        family="connected",
        params={"n": n, "theta": t, "alpha": a},
        r0=r0,
        r1=r1,
        a0=a0,
        a1=a1,
        delta=delta,
        lambda_=lam,
        value=value,
        q=_q(t, a, n, value),
        extra={"perimeter": 2.0 * n * (a * r0 + (a - w) * r1)},
    )


def nonconnected_metrics(p):
    """Closed-form metrics of the non-connected candidate ``p``.

    The far component is a disk of radius ``R0``.

    Raises
    ------
    SingularParameterError
        If ``sin(alpha)`` or ``sin(pi/n - alpha)`` is below ``1e-12``.
    """
    if p.connected:
        raise DomainError("parameters describe the connected case")
    n, t, a = p.n, p.theta, p.alpha
    w = PI / n
    sa, sb = math.sin(a), math.sin(w - a)
    if abs(sa) < _SING or abs(sb) < _SING:
        raise SingularParameterError(f"radius is singular at alpha={a!r}")
    r0 = math.sin(t) / sa
    r1 = math.sin(w - t) / sb
    a0, a1 = _areas(n, t, a)
    lam = 2.0 * n * a0 / PI + 2.0 * r0 * r0
    # (a - w) sin(w - t) / sin(a - w) is the inner arc length over two
    delta = (n / PI) * (a * r0 + (a - w) * math.sin(w - t) / math.sin(a - w)) + r0 - 1.0
    value = delta / lam**2 if lam > 0.0 else math.inf
    cot = math.cos(a) / sa
    phi = n * r0 * (1.0 - a * cot) * phi_factor(n, a)
    return FamilyReport(
        family="nonconnected",
        params={"n": n, "theta": t, "alpha": a},
        r0=r0,
        r1=r1,
        a0=a0,
        a1=a1,
        delta=delta,
        lambda_=lam,
        value=value,
        q=_q(t, a, n, value),
        phi=phi,
        extra={"perimeter": 2.0 * PI * (delta + 1.0)},
    )


def rotsym_metrics(p):
    return connected_metrics(p) if p.connected else nonconnected_metrics(p)


def rotsym_construct(p, far_center=None):
    """Build the candidate as an :class:`ArcRegion` around the unit ball.

    The far disk of the non-connected case is centred at ``far_center``
    (default ``(4, 0)``).
    """
    n, t, a = p.n, p.theta, p.alpha
    w = PI / n
    edges = []
    for k in range(n):
        axis = 2.0 * k * w
        if t > 0.0:
            edges.append(cap_edge(axis, t, a))
        if w - t > 0.0:
            edges.append(cap_edge(axis + w, w - t, w - a))
    loops = [tuple(edges)]
    if not p.connected:
        r0 = math.sin(t) / math.sin(a)
        cx, cy = far_center if far_center is not None else (4.0, 0.0)
        loops.append((Arc((cx, cy), r0, 0.0, 2.0 * PI, True),))
    return ArcRegion(tuple(loops))


def alpha_root(n):
    """Zero of the alpha-dependent factor of Phi on ``(0, pi)``.

    The factor tends to ``+inf`` at ``0+`` and to ``-inf`` at ``pi-``, and
    ``Phi`` has the sign of the factor, so ``Phi < 0`` beyond the root.

    Raises
    ------
    NumericError
        If no sign change is bracketed.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    lo, hi = 1e-6, PI - 1e-6
    flo, fhi = phi_factor(n, lo), phi_factor(n, hi)
    if not flo > 0.0 > fhi:
        raise NumericError(f"no sign change of the Phi factor for n={n}")
    return brentq(lambda x: phi_factor(n, x), lo, hi, xtol=1e-15)


def solve_area_balance(n, alpha, connected=True):
    """Chord half-angle ``theta`` satisfying the area balance at fixed ``alpha``.

    Connected: ``A0 = A1``. Non-connected: ``A0 - A1 + (pi/n) R0**2 = 0``.

    Raises
    ------
    DomainError
        If the balance has no sign change on the admissible theta range.
    """
    w = PI / n

    def resid(t):
        a0, a1 = _areas(n, t, alpha)
        if connected:
            return a0 - a1
        return a0 - a1 + w * (math.sin(t) / math.sin(alpha)) ** 2

    lo = 0.0
    hi = w if connected else min(w, alpha - 1e-12)
    flo, fhi = resid(lo), resid(hi)
    if flo * fhi > 0.0:
        raise DomainError(f"area balance has no root for n={n}, alpha={alpha!r}")
    return brentq(resid, lo, hi, xtol=1e-15)


@dataclass(frozen=True)
class ConditionReport:
    """Signed residuals of the optimality conditions.

    Equalities hold when ``|residual| <= tol``; inequalities are stored so
    that they hold when ``residual >= -tol``.
    """

    family: str
    residuals: dict
    equalities: tuple
    tol: float

    @property
    def holds(self):
        out = {}
        for name, r in self.residuals.items():
            if r is None:
                out[name] = None
            elif name in self.equalities:
                out[name] = abs(r) <= self.tol
            else:
                out[name] = r >= -self.tol
        return out

    @property
    def satisfied(self):
        return tuple(k for k, v in self.holds.items() if v)


def condition_check(report, tol=1e-8):
    """Residuals of the first- and second-order optimality conditions.

    For the rotationally symmetric families the keys are ``i`` (area
    balance), ``ii`` (``1/R0 + 1/R1 - 8 delta / lambda``), ``iii``
    (``0.406 - F``), ``iv`` (``Q``) and, in the non-connected case, ``v``
    (``Phi``). The connected case adds ``i_bound = pi/n - A0``.

    For the mask, ``ii`` uses the outer radius ``R3`` and the inner radius
    ``R1``, and ``ii_multiplier`` checks that the curvature jumps across both
    optimal circles are equal.
    """
    lam, delta = report.lambda_, report.delta
    res = {}
    equalities = ("i", "ii")
    if report.family in ("connected", "nonconnected"):
        n = report.params["n"]
        if report.family == "connected":
            res["i"] = report.a0 - report.a1
            res["i_bound"] = PI / n - report.a0
        else:
            res["i"] = report.a0 - report.a1 + (PI / n) * report.r0**2
        if report.r0 > 0.0 and lam > 0.0:
            res["ii"] = 1.0 / report.r0 + 1.0 / report.r1 - 8.0 * delta / lam
        else:
            res["ii"] = None
        res["iii"] = F_THRESHOLD - report.value
        res["iv"] = report.q
        if report.family == "nonconnected":
            res["v"] = report.phi
    elif report.family == "mask":
        ex = report.extra
        r1, r2, r3 = ex["R1"], ex["R2"], ex["R3"]
        res["i"] = ex["area"] - PI
        res["ii"] = 1.0 / r3 + 1.0 / r1 - 8.0 * delta / lam
        res["ii_multiplier"] = (1.0 / r3 - 1.0 / r2) - (1.0 / r2 + 1.0 / r1)
        res["iii"] = F_THRESHOLD - report.value
        equalities = ("i", "ii", "ii_multiplier")
    else:
        raise DomainError(f"no optimality conditions for family {report.family!r}")
    return ConditionReport(report.family, res, equalities, tol)
