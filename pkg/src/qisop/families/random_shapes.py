"""Seeded random arc regions for property tests and soak runs.

Every generator takes a :class:`numpy.random.Generator` and retries until
the region passes :func:`~qisop.geometry.validate`, so a given generator
state always yields the same region.
"""

from __future__ import annotations

import math

import numpy as np

from .. import DomainError
from ..geometry import Arc, ArcRegion, GeometryError, validate
from ..symmetrization import cap_edge, solve_cap
from .mask import MaskParams, mask_construct, mask_x0_from_area
from .ovals import OvalParams, oval_construct
from .rotsym import RotSymParams, rotsym_construct, solve_area_balance

__all__ = [
    "bumpy_disk",
    "random_polygon",
    "random_oval_params",
    "random_oval",
    "random_mask_params",
    "random_mask",
    "two_disks",
    "random_nonconnected",
]

PI = math.pi
_MAX_TRIES = 200


def _valid(region):
    try:
        return not validate(region)
    except (GeometryError, DomainError):
        return False


def bumpy_disk(rng, k=None, max_area=0.15, center=(0.0, 0.0), radius=1.0, min_area=0.0, min_eta=0.05):
    """Disk with ``k`` (1 to 6) boundary arcs replaced by caps of random signed area.

    A cap of chord half-angle ``eta`` has area ``s * sin(eta)**2`` where
    ``|s|`` lies in ``[min_area, max_area]`` and the sign is random.
    Returns ``(region, params)`` where ``params`` lists ``(axis, eta, area)``.
    """
    for _ in range(_MAX_TRIES):
        kk = int(rng.integers(1, 7)) if k is None else int(k)
        axes = np.sort(rng.uniform(0.0, 2.0 * PI, kk))
        gaps = np.diff(np.concatenate([axes, [axes[0] + 2.0 * PI]]))
        if kk > 1 and gaps.min() < 0.2:
            continue
        room = np.minimum(gaps, np.roll(gaps, 1)) if kk > 1 else np.array([2.0 * PI])
        if min(0.45 * room.min(), 0.45 * PI) <= min_eta:
            continue
        etas = [float(rng.uniform(min_eta, min(0.45 * r, 0.45 * PI))) for r in room]
        if min_area > 0.0:
            mags = [float(rng.uniform(min_area, max_area)) * (1.0 if rng.random() < 0.5 else -1.0) for _ in etas]
        else:
            mags = [float(rng.uniform(-1.0, 1.0) * max_area) for _ in etas]
        areas = [m * math.sin(e) ** 2 for m, e in zip(mags, etas)]
        edges = []
        try:
            for i in range(kk):
                a, e, s = float(axes[i]), etas[i], areas[i]
                side = "outer" if s >= 0.0 else "inner"
                theta = solve_cap(e, abs(s), side)
                if theta == 0.0:
                    theta = 1e-9
                edges.append(cap_edge(a, e, theta, center, radius))
                nxt = float(axes[(i + 1) % kk]) + (2.0 * PI if i == kk - 1 else 0.0)
                a0, a1 = a + e, nxt - etas[(i + 1) % kk]
                if a1 - a0 > 1e-9:
                    edges.append(Arc(center, radius, a0, a1, True))
        except DomainError:
            continue
        region = ArcRegion((tuple(edges),))
        if _valid(region):
            return region, {"bumps": [(float(axes[i]), etas[i], areas[i]) for i in range(kk)]}
    raise GeometryError("could not draw a valid bumpy disk")


def random_polygon(rng, n=None, center=(0.0, 0.0)):
    """Star-shaped polygon with ``n`` (3 to 12) vertices around ``center``."""
    for _ in range(_MAX_TRIES):
        m = int(rng.integers(3, 13)) if n is None else int(n)
        angles = np.sort(rng.uniform(0.0, 2.0 * PI, m))
        if np.min(np.diff(np.concatenate([angles, [angles[0] + 2 * PI]]))) < 0.05:
            continue
        radii = rng.uniform(0.5, 1.5, m)
        pts = [(center[0] + r * math.cos(a), center[1] + r * math.sin(a)) for r, a in zip(radii, angles)]
        region = ArcRegion.polygon(pts)
        if _valid(region):
            return region
    raise GeometryError("could not draw a valid polygon")


def random_oval_params(rng, eps_range=(1e-3, 0.15)):
    e1 = float(rng.uniform(0.1, 0.5 * PI - 0.15))
    e2 = float(rng.uniform(0.05, 0.5 * PI - e1))
    lo, hi = eps_range
    eps = float(math.exp(rng.uniform(math.log(lo), math.log(hi))))
    return OvalParams(e1, e2, eps)


def random_oval(rng, eps_range=(1e-3, 0.15)):
    for _ in range(_MAX_TRIES):
        p = random_oval_params(rng, eps_range)
        try:
            region = oval_construct(p)
        except DomainError:
            continue
        if _valid(region):
            return region, p
    raise GeometryError("could not draw a valid oval")


def random_mask_params(rng):
    """Uniform point of the feasibility triangle with a non-degenerate ``x0``."""
    for _ in range(_MAX_TRIES):
        a = float(rng.uniform(0.02, 0.5 * PI - 0.04))
        t = float(rng.uniform(0.02, 0.5 * PI - 0.02 - a))
        try:
            x0 = mask_x0_from_area(a, t)
        except DomainError:
            continue
        if 1e-3 < x0 < math.cos(t) - 1e-3:
            return MaskParams(a, t, x0)
    raise DomainError("could not draw feasible mask parameters")


def random_mask(rng):
    for _ in range(_MAX_TRIES):
        p = random_mask_params(rng)
        region = mask_construct(p)
        if _valid(region):
            return region, p
    raise GeometryError("could not draw a valid mask")


def two_disks(rng):
    """Two disjoint disks with total area ``pi`` and radius ratio in ``[0.2, 1]``."""
    ratio = float(rng.uniform(0.2, 1.0))
    r1 = 1.0 / math.sqrt(1.0 + ratio * ratio)
    r2 = ratio * r1
    gap = float(rng.uniform(0.05, 1.0))
    d = r1 + r2 + gap
    region = ArcRegion(
        (
            (Arc((0.0, 0.0), r1, 0.0, 2.0 * PI, True),),
            (Arc((d, 0.0), r2, 0.0, 2.0 * PI, True),),
        )
    )
    return region, {"r1": r1, "r2": r2, "distance": d}


def random_nonconnected(rng):
    """Non-connected one-ball candidate of area ``pi`` (area balance solved for theta)."""
    for _ in range(_MAX_TRIES):
        n = int(rng.integers(2, 7))
        alpha = float(rng.uniform(0.1, 0.5 * PI))
        if abs(alpha - PI / n) < 1e-3:
            continue
        try:
            theta = solve_area_balance(n, alpha, connected=False)
            p = RotSymParams(n, theta, alpha, connected=False)
        except DomainError:
            continue
        if theta < 1e-3:
            continue
        region = rotsym_construct(p, far_center=(3.0 + 2.0 * math.sin(theta) / math.sin(alpha), 0.0))
        if _valid(region):
            return region, p
    raise GeometryError("could not draw a valid non-connected candidate")
