"""Four-cap rearrangement of a region around an optimal ball.

Given an optimal ball ``B`` of radius ``r``, the part of the region outside
``B`` is replaced by two congruent caps centred on the x axis and the part of
``B`` missing from the region by two congruent caps centred on the y axis.
The caps keep the chord arc lengths ``gamma_out / 2`` and ``gamma_in / 2``
of the ball boundary and the areas ``|region \\ B| / 2`` and
``|B \\ region| / 2``. Any remaining ball boundary is split into four equal
arcs between the caps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import DomainError
from .fraenkel import SearchConfig, optimal_balls
from .geometry import (
    Arc,
    ArcRegion,
    Ball,
    GeometryError,
    Segment,
    TWO_PI,
    inside_arcs,
)
from .special import h, h_inv

__all__ = [
    "Decomposition",
    "SymmetrizedSet",
    "cap_edge",
    "solve_cap",
    "decompose",
    "symmetrize",
    "build_symmetric",
]


@dataclass(frozen=True)
class Decomposition:
    gamma_in: float  # length of the ball boundary outside the region
    gamma_out: float  # length of the ball boundary inside the region
    area_out: float  # |region \ ball|
    area_in: float  # |ball \ region|
    ball: Ball


@dataclass(frozen=True)
class SymmetrizedSet:
    region: ArcRegion
    ball: Ball
    eta_out: float
    eta_in: float
    theta_out: float
    theta_in: float
    decomposition: Decomposition


def cap_edge(axis_angle, eta, theta, center=(0.0, 0.0), radius=1.0):
    """Boundary edge replacing the ball arc ``axis_angle +- eta``.

    The returned edge joins the points of the circle ``(center, radius)`` at
    angles ``axis_angle - eta`` and ``axis_angle + eta``, in that order. For
    ``theta > 0`` it is an outward arc of half-angle ``theta``; for
    ``theta < 0`` an inward arc of half-angle ``-theta``; for ``theta = 0``
    the chord. The signed area it adds to the ball is
    ``radius**2 (sin(eta)**2 h(theta) - g(eta))``.
    """
    if not 0.0 < eta <= 0.5 * math.pi or not -math.pi < theta < math.pi:
        raise DomainError(f"cap angles out of range: eta={eta!r}, theta={theta!r}")
    cx, cy = center
    ux, uy = math.cos(axis_angle), math.sin(axis_angle)
    p0 = (cx + radius * math.cos(axis_angle - eta), cy + radius * math.sin(axis_angle - eta))
    p1 = (cx + radius * math.cos(axis_angle + eta), cy + radius * math.sin(axis_angle + eta))
    if theta == 0.0:
        return Segment(p0, p1)
    r_cap = radius * math.sin(eta) / math.sin(theta)  # negative for inward caps
    offset = radius * math.cos(eta) - r_cap * math.cos(theta)
    c_cap = (cx + offset * ux, cy + offset * uy)
    if theta > 0.0:
        return Arc(c_cap, r_cap, axis_angle - theta, axis_angle + theta, True)
    t = -theta
    return Arc(c_cap, -r_cap, axis_angle + math.pi + t, axis_angle + math.pi - t, False)


def solve_cap(eta, target_area, side="outer", radius=1.0):
    """Cap angle giving a cap of area ``target_area`` over half-angle ``eta``.

    ``side='outer'`` adds the area outside the ball:
    ``theta = h_inv(h(eta) + a / sin(eta)**2)``; ``side='inner'`` removes it:
    ``theta = h_inv(h(eta) - a / sin(eta)**2)``, which is negative when the
    cap bends inward. ``a`` is ``target_area / radius**2``.
    """
    if not 0.0 < eta < 0.5 * math.pi + 1e-15:
        raise DomainError(f"eta must lie in (0, pi/2), got {eta!r}")
    if target_area < 0.0 or not math.isfinite(target_area):
        raise DomainError(f"target area must be finite and non-negative, got {target_area!r}")
    a = target_area / (radius * radius)
    s2 = math.sin(eta) ** 2
    if side == "outer":
        return h_inv(h(eta) + a / s2)
    if side == "inner":
        y = h(eta) - a / s2
        theta = h_inv(y)
        if theta <= -math.pi + 1e-9:
            raise DomainError("inner cap area is not achievable")
        return theta
    raise DomainError(f"side must be 'outer' or 'inner', got {side!r}")


def decompose(region, ball):
    """Split the ball boundary and symmetric difference into inside/outside parts."""
    arcs, clip = inside_arcs(region, ball, check_transversal=True)
    r = ball.radius
    gamma_out = r * sum(b - a for a, b in arcs) + clip.on_length
    gamma_out = min(gamma_out, TWO_PI * r)
    gamma_in = TWO_PI * r - gamma_out
    inter = clip.inside_area
    return Decomposition(
        gamma_in=gamma_in,
        gamma_out=gamma_out,
        area_out=max(region.area - inter, 0.0),
        area_in=max(ball.area - inter, 0.0),
        ball=ball,
    )


def build_symmetric(ball, eta_out, eta_in, area_out, area_in):
    """Doubly symmetric set with outer caps on the x axis and inner caps on the y axis.

    ``eta_out`` and ``eta_in`` are the half-angles of the cap chords,
    ``area_out`` and ``area_in`` the total areas added and removed (each
    split evenly between the two caps). Returns
    ``(region, theta_out, theta_in)``.
    """
    c, r = ball.center, ball.radius
    if eta_out < 0.0 or eta_in < 0.0 or eta_out + eta_in > 0.5 * math.pi + 1e-12:
        raise GeometryError("cap half-angles do not fit on the circle")
    theta_out = solve_cap(eta_out, 0.5 * area_out, "outer", r) if eta_out > 0.0 else 0.0
    theta_in = solve_cap(eta_in, 0.5 * area_in, "inner", r) if eta_in > 0.0 else 0.0
    etas = (eta_out, eta_in, eta_out, eta_in)
    thetas = (theta_out, theta_in, theta_out, theta_in)
    edges = []
    for k in range(4):
        axis = 0.5 * math.pi * k
        if etas[k] > 0.0:
            edges.append(cap_edge(axis, etas[k], thetas[k], c, r))
        a0 = axis + etas[k]
        a1 = axis + 0.5 * math.pi - etas[(k + 1) % 4]
        if a1 - a0 > 1e-12:
            edges.append(Arc(c, r, a0, a1, True))
    if not edges:
        edges.append(Arc(c, r, 0.0, 0.0, True))
    return ArcRegion((tuple(edges),)), theta_out, theta_in


def symmetrize(region, config=None, ball=None):
    """Rearrange ``region`` around its first optimal ball.

    Raises
    ------
    GeometryError
        If the region is not transversal to the ball or the outside arcs
        span more than half the circle.
    """
    if ball is None:
        asym = optimal_balls(region, config or SearchConfig())
        ball = Ball(asym.optimal_centers[0], asym.radius)
        if asym.lambda_ <= 1e-12:
            dec = Decomposition(0.0, TWO_PI * ball.radius, 0.0, 0.0, ball)
            disk = ArcRegion.disk(ball.center, ball.radius)
            return SymmetrizedSet(disk, ball, 0.0, 0.0, 0.0, 0.0, dec)
    dec = decompose(region, ball)
    r = ball.radius
    eta_out = dec.gamma_out / (4.0 * r) if dec.area_out > 0.0 else 0.0
    eta_in = dec.gamma_in / (4.0 * r) if dec.area_in > 0.0 else 0.0
    if eta_out >= 0.5 * math.pi or eta_in >= 0.5 * math.pi:
        raise GeometryError("the arcs on one side span at least half of the circle")
    sym, theta_out, theta_in = build_symmetric(ball, eta_out, eta_in, dec.area_out, dec.area_in)
    return SymmetrizedSet(sym, ball, eta_out, eta_in, theta_out, theta_in, dec)
