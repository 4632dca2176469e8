"""Scalar special functions for circular caps.

``g(t) = t - sin t cos t`` is twice the area of the circular segment of the
unit disk cut by a chord of half-angle ``t``. ``h(t) = g(t) / sin^2 t`` is the
same area normalised by the squared half-chord. It is odd and strictly
increasing on ``(-pi, pi)``, so it has a well defined inverse on the real line.

All functions take and return Python floats and are pure.
"""

import math

from . import DomainError, NumericError

__all__ = ["g", "h", "h_prime", "h_inv", "H_cap", "F_defect", "limit_case_a"]

# Below this magnitude g and sin t - t cos t are summed from their power
# series. At 0.5 the truncated series is accurate to a few ulp while the
# direct formulas already lose about two digits to cancellation.
_SERIES_CUTOFF = 0.5
# Below this magnitude h and H are replaced by short Taylor polynomials so
# that tiny arguments never form 0/0 through underflow.
_TINY = 1e-4


def _check_finite(name, value):
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")


def _g_series(t):
    # g(t) = sum_{k>=1} (-1)^(k+1) (2t)^(2k+1) / (2 (2k+1)!)
    u = 2.0 * t
    u2 = u * u
    term = u * u2 / 6.0
    total = 0.0
    k = 1
    while True:
        total += term
        if abs(term) <= 1e-18 * abs(total):
            break
        term *= -u2 / ((2 * k + 2) * (2 * k + 3))
        k += 1
    return 0.5 * total


def _s_series(t):
    # sin t - t cos t = sum_{k>=1} (-1)^(k+1) 2k t^(2k+1) / (2k+1)!
    t2 = t * t
    power = t * t2 / 6.0  # t^(2k+1) / (2k+1)! at k = 1
    total = 0.0
    k = 1
    while True:
        term = 2 * k * power
        total += term if k % 2 else -term
        if abs(term) <= 1e-18 * abs(total):
            break
        power *= t2 / ((2 * k + 2) * (2 * k + 3))
        k += 1
    return total


def g(t):
    """Return ``t - sin(t) cos(t)``.

    Odd and strictly increasing on the whole real line. Evaluated from its
    power series for ``|t| < 0.5``.
    """
    t = float(t)
    _check_finite("t", t)
    if abs(t) < _SERIES_CUTOFF:
        return _g_series(t)
    return t - math.sin(t) * math.cos(t)


def sin_minus_t_cos(t):
    """Return ``sin(t) - t cos(t)`` without cancellation near zero."""
    t = float(t)
    if abs(t) < _SERIES_CUTOFF:
        return _s_series(t)
    return math.sin(t) - t * math.cos(t)


def _check_open_pi(name, t):
    _check_finite(name, t)
    if not -math.pi < t < math.pi:
        raise DomainError(f"{name} must lie in (-pi, pi), got {t!r}")


def h(t):
    """Return ``g(t) / sin(t)**2``, extended by 0 at the origin.

    Parameters
    ----------
    t : float
        Angle in ``(-pi, pi)``.

    Raises
    ------
    DomainError
        If ``|t| >= pi`` or ``t`` is not finite.
    """
    t = float(t)
    _check_open_pi("t", t)
    if abs(t) < _TINY:
        t2 = t * t
        return t * (2.0 / 3.0 + t2 * (4.0 / 45.0 + t2 * 4.0 / 315.0))
    s = math.sin(t)
    return g(t) / (s * s)


def h_prime(t):
    """Derivative ``2 (sin t - t cos t) / sin(t)**3`` of :func:`h`."""
    t = float(t)
    _check_open_pi("t", t)
    if abs(t) < _TINY:
        t2 = t * t
        return 2.0 / 3.0 + t2 * (4.0 / 15.0 + t2 * 4.0 / 63.0)
    s = math.sin(t)
    return 2.0 * sin_minus_t_cos(t) / (s * s * s)


def _h_inv_positive(y, max_iter):
    # Bracket [lo, hi] always satisfies h(lo) <= y <= h(hi).
    lo, hi = 0.0, math.pi
    if y < 0.5:
        t = 1.5 * y
    else:
        t = math.pi - math.sqrt(math.pi / y)
    t = min(max(t, 0.0), math.pi)
    if not 0.0 < t < math.pi:
        t = 0.5 * (lo + hi)
    for _ in range(max_iter):
        r = h(t) - y
        if r == 0.0:
            return t
        if r < 0.0:
            lo = t
        else:
            hi = t
        step = r / h_prime(t)
        t_new = t - step
        if not lo < t_new < hi:
            t_new = 0.5 * (lo + hi)
        if abs(t_new - t) <= 2.0 * math.ulp(t) or hi - lo <= 2.0 * math.ulp(hi):
            return t_new
        t = t_new
    raise NumericError(f"h_inv did not converge for y={y!r}")


def h_inv(y, max_iter=200):
    """Return the unique ``t`` in ``(-pi, pi)`` with ``h(t) = y``.

    Safeguarded Newton iteration on the bracket ``(0, pi)``, extended to
    negative ``y`` by oddness. The starting point comes from the small-angle
    behaviour ``h(t) ~ 2t/3`` or from the pole ``h(t) ~ pi / (pi - t)^2``.

    Raises
    ------
    DomainError
        If ``y`` is not finite.
    NumericError
        If the iteration cap is reached.
    """
    y = float(y)
    _check_finite("y", y)
    if y == 0.0:
        return 0.0
    if y < 0.0:
        return -_h_inv_positive(-y, max_iter)
    return _h_inv_positive(y, max_iter)


def H_cap(x):
    """Return ``sin(x)**3 cos(x) / (sin(x) - x cos(x))`` for ``|x| < pi``.

    This is ``sin^3 x / (tan x - x)`` written without the tangent, so it is
    finite and zero at ``pi/2``. It is even with ``H(0) = 3``, and its sign
    is the sign of ``cos x``.
    """
    x = float(x)
    _check_finite("x", x)
    x = abs(x)
    if not x < math.pi:
        raise DomainError(f"x must lie in (-pi, pi), got {x!r}")
    if x < _TINY:
        x2 = x * x
        return 3.0 - 2.7 * x2 + (1287.0 / 1400.0) * x2 * x2
    s = math.sin(x)
    return s * s * s * math.cos(x) / sin_minus_t_cos(x)


def F_defect(x, y):
    """Perimeter change of a cap when its normalised area grows by ``y``.

    Returns ``sin(x) T / sin(T) - x`` with ``T = h_inv(h(x) + y)``. The cap
    over a chord of half-angle ``x`` on the unit circle is replaced by the cap
    over the same chord whose area exceeds it by ``y sin(x)**2``; the result
    is the length gained, divided by two.

    Parameters
    ----------
    x : float
        Half-angle in ``(0, pi)``.
    y : float
        Signed area increment normalised by ``sin(x)**2``.

    Notes
    -----
    The result is a difference of two O(1) numbers, so its absolute error is
    a few ulps. For ``|y|`` below about ``1e-6`` the relative error grows.
    """
    x = float(x)
    y = float(y)
    _check_finite("x", x)
    _check_finite("y", y)
    if not 0.0 < x < math.pi:
        raise DomainError(f"x must lie in (0, pi), got {x!r}")
    if y == 0.0:
        return 0.0
    t = h_inv(h(x) + y)
    if t == 0.0:
        ratio = 1.0
    else:
        ratio = t / math.sin(t)
    return math.sin(x) * ratio - x


def _limit_term(eta):
    return math.cos(eta) / (8.0 * sin_minus_t_cos(eta))


def limit_case_a(eta1, eta2):
    """Limit of the quotient for ovals shrinking to the disk.

    Returns ``(pi/8) [c(eta1) + c(eta2)]`` with
    ``c(eta) = cos(eta) / (8 (sin eta - eta cos eta))``. On the line
    ``eta1 + eta2 = pi/2``, where the four caps fill the circle, the minimum
    is ``pi / (8 (4 - pi))`` at ``(pi/4, pi/4)``.
    """
    eta1 = float(eta1)
    eta2 = float(eta2)
    for name, eta in (("eta1", eta1), ("eta2", eta2)):
        _check_finite(name, eta)
        if not 0.0 < eta <= 0.5 * math.pi:
            raise DomainError(f"{name} must lie in (0, pi/2], got {eta!r}")
    return 0.125 * math.pi * (_limit_term(eta1) + _limit_term(eta2))
