"""Fraenkel asymmetry, isoperimetric deficit and their quotient.

For a region of area ``A`` the comparison disks have radius
``rho = sqrt(A / pi)``. The map ``psi(x) = |region sym-diff B(x, rho)|`` is
continuously differentiable wherever the disk boundary crosses the region
boundary transversally, with

    grad psi = -2 * sum over boundary arcs a->b of the disk lying in the region
               of (y_b - y_a, x_a - x_b),

which is the alternating sum of the intersection coordinates. The asymmetry
is ``min psi / A``, found by deterministic multistart descent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import DomainError, NumericError
from .geometry import (
    Ball,
    TransversalityError,
    bounding_box,
    centroid,
    inside_arcs,
    symm_diff_area,
)

__all__ = [
    "NearBallError",
    "SearchConfig",
    "AsymmetryResult",
    "FunctionalResult",
    "ball_radius",
    "psi",
    "psi_gradient",
    "optimal_balls",
    "deficit",
    "functional",
]

# Fixed perturbation directions tried when a center is not transversal.
_NUDGES = tuple((math.cos(0.7 + k * 2.399963), math.sin(0.7 + k * 2.399963)) for k in range(8))


class NearBallError(DomainError):
    """The asymmetry is too small for the quotient to be meaningful."""


@dataclass(frozen=True)
class SearchConfig:
    """Settings of the multistart search for optimal balls.

    Attributes
    ----------
    pitch : float
        Grid spacing of the start lattice as a fraction of the ball radius.
    value_tol : float
        Relative tolerance (times the area) for reporting near-tied minima.
    dedupe_tol : float
        Distance below which two minimisers are the same.
    grad_tol : float
        Stopping threshold on the gradient norm divided by the ball radius.
    max_starts : int
        Upper bound on the number of local descents.
    perturbation : float
        Size of the nudge applied to non-transversal centers.
    executor : optional
        Object with a ``map`` method used to run descents in parallel.
    """

    pitch: float = 0.25
    value_tol: float = 1e-7
    dedupe_tol: float = 1e-5
    grad_tol: float = 1e-9
    max_starts: int = 12
    max_iter: int = 100
    perturbation: float = 1e-7
    executor: object = field(default=None, compare=False)


@dataclass(frozen=True)
class AsymmetryResult:
    lambda_: float
    optimal_centers: tuple
    psi_at_optimum: float
    area: float
    radius: float
    gradient_norms: tuple = ()

    @property
    def balls(self):
        return tuple(Ball(c, self.radius) for c in self.optimal_centers)


@dataclass(frozen=True)
class FunctionalResult:
    delta: float
    lambda_: float
    value: float
    asymmetry: AsymmetryResult = None


def ball_radius(region):
    """Radius of the disk with the same area as ``region``."""
    return math.sqrt(region.area / math.pi)


def psi(region, center):
    """Symmetric difference between ``region`` and the area-matched disk at ``center``."""
    return symm_diff_area(region, Ball(center, ball_radius(region)))


def psi_gradient(region, center):
    """Gradient of :func:`psi` at ``center``.

    Raises :class:`~qisop.geometry.TransversalityError` when the disk boundary
    is tangent to the region boundary or runs along it.
    """
    rho = ball_radius(region)
    arcs, _ = inside_arcs(region, Ball(center, rho), check_transversal=True)
    gx = gy = 0.0
    for a, b in arcs:
        gx += math.sin(b) - math.sin(a)
        gy += math.cos(a) - math.cos(b)
    return (-2.0 * rho * gx, -2.0 * rho * gy)


def _safe_gradient(region, center, step):
    try:
        return psi_gradient(region, center), center
    except TransversalityError:
        pass
    for dx, dy in _NUDGES:
        moved = (center[0] + step * dx, center[1] + step * dy)
        try:
            return psi_gradient(region, moved), moved
        except TransversalityError:
            continue
    raise NumericError(f"no transversal center found near {center}")


def _hessian(region, x, hstep, nudge):
    """Symmetrised central-difference Hessian of psi from exact gradients."""
    gxp, _ = _safe_gradient(region, (x[0] + hstep, x[1]), nudge)
    gxm, _ = _safe_gradient(region, (x[0] - hstep, x[1]), nudge)
    gyp, _ = _safe_gradient(region, (x[0], x[1] + hstep), nudge)
    gym, _ = _safe_gradient(region, (x[0], x[1] - hstep), nudge)
    hess = np.array(
        [
            [(gxp[0] - gxm[0]) / (2 * hstep), (gyp[0] - gym[0]) / (2 * hstep)],
            [(gxp[1] - gxm[1]) / (2 * hstep), (gyp[1] - gym[1]) / (2 * hstep)],
        ]
    )
    return 0.5 * (hess + hess.T)


def _escape_saddle(region, x, fx, rho, hstep, nudge):
    """Move off a stationary point along a direction of negative curvature.

    Symmetric regions have stationary points of psi at their centers of
    symmetry that are often saddles. Returns the lower points found on
    either side, best first, as ``(value, point)`` pairs.
    """
    try:
        w, v = np.linalg.eigh(_hessian(region, x, hstep, nudge))
    except (NumericError, np.linalg.LinAlgError):
        return []
    if not w[0] < -1e-8 * rho:
        return []
    d = (float(v[0, 0]), float(v[1, 0]))
    found = []
    for sign in (1.0, -1.0):
        t = 0.1 * rho
        while t > 1e-9 * rho:
            trial = (x[0] + sign * t * d[0], x[1] + sign * t * d[1])
            ft = psi(region, trial)
            if ft < fx:
                found.append((ft, trial))
                break
            t *= 0.5
    return sorted(found)


def _descend(region, start, rho, cfg):
    """Damped Newton descent with a finite-difference Hessian of the gradient.

    Returns ``(value, point, gradient norm, branches)`` where ``branches``
    are the points on the other side of escaped saddles.
    """
    nudge = cfg.perturbation * rho
    x = (float(start[0]), float(start[1]))
    # psi has a kink where the disk boundary runs along the region boundary,
    # so the unperturbed start is kept if nothing better is found.
    f_start, x_start = psi(region, x), x
    g, x = _safe_gradient(region, x, nudge)
    fx = psi(region, x)
    hstep = 1e-6 * rho
    escapes = 0
    branches = []
    for _ in range(cfg.max_iter):
        gnorm = math.hypot(*g)
        if gnorm <= cfg.grad_tol * rho:
            found = _escape_saddle(region, x, fx, rho, hstep, nudge) if escapes < 4 else []
            if not found:
                break
            escapes += 1
            branches.extend(p for _, p in found[1:])
            try:
                g, x = _safe_gradient(region, found[0][1], nudge)
            except NumericError:
                break
            fx = psi(region, x)
            continue
        direction = None
        try:
            hess = _hessian(region, x, hstep, nudge)
            if np.all(np.linalg.eigvalsh(hess) > 1e-10 * rho):
                d = -np.linalg.solve(hess, np.asarray(g))
                direction = (float(d[0]), float(d[1]))
        except (NumericError, np.linalg.LinAlgError):
            direction = None
        if direction is None or direction[0] * g[0] + direction[1] * g[1] >= 0.0:
            # Gradient step scaled so the first trial moves by a tenth of the radius.
            direction = (-0.1 * rho * g[0] / gnorm, -0.1 * rho * g[1] / gnorm)
        slope = direction[0] * g[0] + direction[1] * g[1]
        t = 1.0
        accepted = False
        while t > 1e-12:
            trial = (x[0] + t * direction[0], x[1] + t * direction[1])
            ft = psi(region, trial)
            if ft <= fx + 1e-4 * t * slope:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        moved = math.hypot(t * direction[0], t * direction[1])
        try:
            g, x = _safe_gradient(region, trial, nudge)
        except NumericError:
            x = trial
            break
        fx = psi(region, x)
        if moved <= 1e-15 * max(1.0, rho):
            break
    try:
        g, _ = _safe_gradient(region, x, nudge)
    except NumericError:
        g = (math.nan, math.nan)
    if f_start <= fx:
        try:
            g, _ = _safe_gradient(region, x_start, nudge)
        except NumericError:
            g = (math.nan, math.nan)
        return f_start, x_start, math.hypot(*g), branches
    return fx, x, math.hypot(*g), branches


def _start_points(region, rho, cfg):
    """Deterministic start set: centroids, then local minima of psi on a grid."""
    xmin, ymin, xmax, ymax = bounding_box(region)
    xmin, ymin, xmax, ymax = xmin - rho, ymin - rho, xmax + rho, ymax + rho
    pitch = cfg.pitch * rho
    nx = int(math.ceil((xmax - xmin) / pitch)) + 1
    ny = int(math.ceil((ymax - ymin) / pitch)) + 1
    xs = xmin + pitch * np.arange(nx)
    ys = ymin + pitch * np.arange(ny)
    values = np.empty((nx, ny))
    for i, gx in enumerate(xs):
        for j, gy in enumerate(ys):
            values[i, j] = psi(region, (float(gx), float(gy)))
    plateau = region.area + math.pi * rho * rho
    padded = np.pad(values, 1, constant_values=np.inf)
    minima = []
    for i in range(nx):
        for j in range(ny):
            v = values[i, j]
            if v >= plateau * (1.0 - 1e-12):
                continue
            window = padded[i : i + 3, j : j + 3]
            if v <= window.min():
                minima.append((v, float(xs[i]), float(ys[j])))
    minima.sort()
    starts = [centroid(region)]
    if len(region.loops) > 1:
        starts.extend(centroid(loop) for loop in region.loops)
    starts.extend((x, y) for _, x, y in minima)
    unique = []
    for s in starts:
        if all(math.hypot(s[0] - u[0], s[1] - u[1]) > 0.5 * pitch for u in unique):
            unique.append(s)
    return unique[: cfg.max_starts]


def _run_descents(region, starts, rho, cfg):
    if cfg.executor is not None:
        return list(cfg.executor.map(lambda s: _descend(region, s, rho, cfg), starts))
    return [_descend(region, s, rho, cfg) for s in starts]


def optimal_balls(region, config=None):
    """Minimise :func:`psi` over centers and return the asymmetry.

    Local descents start from the region centroid, the centroid of each loop
    and the discrete local minima of ``psi`` on a lattice of pitch
    ``config.pitch * rho`` covering the bounding box inflated by ``rho``.
    A descent that stops at a saddle leaves along the direction of negative
    curvature, and the opposite side is descended as an extra start.
    All minimisers within ``value_tol * area`` of the best are returned,
    sorted by coordinates.
    """
    cfg = config or SearchConfig()
    a = region.area
    if not a > 0.0:
        raise DomainError("region has zero area")
    rho = math.sqrt(a / math.pi)
    c0 = centroid(region)
    f0 = psi(region, c0)
    if f0 <= 1e-12 * a:
        return AsymmetryResult(f0 / a, (c0,), f0, a, rho, (0.0,))
    starts = _start_points(region, rho, cfg)
    results = _run_descents(region, starts, rho, cfg)
    # Descend once more from the far side of every escaped saddle.
    seen = list(starts)
    extra = []
    for r in results:
        for b in r[3]:
            if all(math.hypot(b[0] - u[0], b[1] - u[1]) > 1e-3 * rho for u in seen):
                seen.append(b)
                extra.append(b)
    results += _run_descents(region, extra[: cfg.max_starts], rho, cfg)
    best = min(r[0] for r in results)
    keep = []
    for value, x, gnorm, _ in sorted(results, key=lambda r: r[0]):
        if value > best + cfg.value_tol * a:
            continue
        if any(math.hypot(x[0] - k[1][0], x[1] - k[1][1]) <= cfg.dedupe_tol * max(1.0, rho) for k in keep):
            continue
        keep.append((value, x, gnorm))
    keep.sort(key=lambda r: (round(r[1][0], 7), round(r[1][1], 7)))
    return AsymmetryResult(
        lambda_=best / a,
        optimal_centers=tuple(k[1] for k in keep),
        psi_at_optimum=best,
        area=a,
        radius=rho,
        gradient_norms=tuple(k[2] for k in keep),
    )


def deficit(region):
    """Isoperimetric deficit ``(P - 2 sqrt(pi A)) / (2 sqrt(pi A))``.

    Values in ``[-1e-10, 0)`` are round-off and are returned as 0.
    """
    ball_perimeter = 2.0 * math.sqrt(math.pi * region.area)
    d = (region.perimeter - ball_perimeter) / ball_perimeter
    if d < 0.0:
        if d < -1e-10:
            raise NumericError(f"negative deficit {d!r}: region is probably malformed")
        return 0.0
    return d


def functional(region, config=None, lambda_floor=1e-6):
    """Return deficit, asymmetry and the quotient ``delta / lambda**2``.

    Raises
    ------
    NearBallError
        If the asymmetry does not exceed ``lambda_floor``.
    """
    asym = optimal_balls(region, config)
    if asym.lambda_ <= lambda_floor:
        raise NearBallError(f"asymmetry {asym.lambda_:.3g} is below the floor {lambda_floor:g}")
    d = deficit(region)
    return FunctionalResult(d, asym.lambda_, d / asym.lambda_**2, asym)
