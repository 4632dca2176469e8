"""Planar regions bounded by circular arcs and segments.

A region is a tuple of closed counter-clockwise loops, each an ordered tuple
of edges. Areas come from Green's theorem with the exact circular-segment
term for arcs, so no edge is ever flattened. The only boolean operation
supported is intersection with a disk, which is what the Fraenkel asymmetry
needs: every edge is split at its crossings with the disk boundary, the
pieces inside the disk are integrated, and the arcs of the disk boundary
that lie inside the region close the contour.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from . import QisopError

__all__ = [
    "GeometryError",
    "TransversalityError",
    "Arc",
    "Segment",
    "Ball",
    "ArcRegion",
    "Crossing",
    "validate",
    "area",
    "perimeter",
    "centroid",
    "bounding_box",
    "winding_number",
    "contains",
    "circle_boundary_intersections",
    "intersection_area",
    "symm_diff_area",
    "inside_arcs",
    "rigid_transform",
    "scale",
    "region_to_json",
    "region_from_json",
]

TWO_PI = 2.0 * math.pi
CLOSURE_TOL = 1e-9
TANGENCY_TOL = 1e-9
# Parameter snapping of intersection points onto edge endpoints.
_PARAM_TOL = 1e-11
# Relative tolerance under which an arc is treated as lying on the disk boundary.
_ON_TOL = 1e-9


class GeometryError(QisopError, ValueError):
    """A region violates a structural invariant."""


class TransversalityError(GeometryError):
    """The region boundary touches the disk boundary without crossing it."""


def _wrap(angle):
    """Reduce an angle to ``(-pi, pi]``."""
    a = math.fmod(angle, TWO_PI)
    if a > math.pi:
        a -= TWO_PI
    elif a <= -math.pi:
        a += TWO_PI
    return a


def _mod2pi(angle):
    a = math.fmod(angle, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    return a


@dataclass(frozen=True)
class Arc:
    """Circular arc from ``start`` to ``end`` (radians) around ``center``.

    The sweep is the travelled angle in the direction given by ``ccw``. It
    lies in ``(0, 2 pi]``; equal start and end angles mean a full circle.
    """

    center: tuple
    radius: float
    start: float
    end: float
    ccw: bool = True
    sweep: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        if not self.radius > 0.0 or not math.isfinite(self.radius):
            raise GeometryError(f"arc radius must be positive, got {self.radius!r}")
        d = self.end - self.start if self.ccw else self.start - self.end
        if not 0.0 < d <= TWO_PI * (1.0 + 1e-14):
            d = _mod2pi(d)
            if d == 0.0:
                d = TWO_PI
        object.__setattr__(self, "sweep", min(d, TWO_PI))

    @property
    def signed_sweep(self):
        return self.sweep if self.ccw else -self.sweep

    def angle_at(self, s):
        return self.start + s * self.signed_sweep

    def point_at(self, s):
        a = self.angle_at(s)
        return (self.center[0] + self.radius * math.cos(a), self.center[1] + self.radius * math.sin(a))

    @property
    def start_point(self):
        return self.point_at(0.0)

    @property
    def end_point(self):
        return self.point_at(1.0)

    @property
    def length(self):
        return self.radius * self.sweep

    def reversed(self):
        return Arc(self.center, self.radius, self.end, self.start, not self.ccw)


@dataclass(frozen=True)
class Segment:
    """Straight segment from ``start`` to ``end``."""

    start: tuple
    end: tuple

    def __post_init__(self):
        object.__setattr__(self, "start", (float(self.start[0]), float(self.start[1])))
        object.__setattr__(self, "end", (float(self.end[0]), float(self.end[1])))

    def point_at(self, s):
        return (
            self.start[0] + s * (self.end[0] - self.start[0]),
            self.start[1] + s * (self.end[1] - self.start[1]),
        )

    @property
    def start_point(self):
        return self.start

    @property
    def end_point(self):
        return self.end

    @property
    def length(self):
        return math.hypot(self.end[0] - self.start[0], self.end[1] - self.start[1])

    def reversed(self):
        return Segment(self.end, self.start)


@dataclass(frozen=True)
class Ball:
    """Closed disk."""

    center: tuple
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        if not self.radius > 0.0 or not math.isfinite(self.radius):
            raise GeometryError(f"ball radius must be positive, got {self.radius!r}")

    @property
    def area(self):
        return math.pi * self.radius * self.radius


@dataclass(frozen=True)
class ArcRegion:
    """Region bounded by one or more closed counter-clockwise loops."""

    loops: tuple

    def __post_init__(self):
        loops = tuple(tuple(loop) for loop in self.loops)
        if not loops or any(len(loop) == 0 for loop in loops):
            raise GeometryError("a region needs at least one non-empty loop")
        object.__setattr__(self, "loops", loops)

    @classmethod
    def disk(cls, center=(0.0, 0.0), radius=1.0):
        """Disk bounded by a single full-circle arc starting at angle 0."""
        return cls(((Arc(center, radius, 0.0, 0.0, True),),))

    @classmethod
    def polygon(cls, points):
        """Polygon from its vertices listed counter-clockwise."""
        pts = [tuple(p) for p in points]
        edges = tuple(Segment(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts)))
        return cls((edges,))

    @property
    def edges(self):
        return tuple(e for loop in self.loops for e in loop)

    @cached_property
    def diagnostics(self):
        return validate(self)

    @cached_property
    def area(self):
        _require_valid(self)
        return sum(_loop_signed_area(loop) for loop in self.loops)

    @cached_property
    def perimeter(self):
        _require_valid(self)
        return sum(e.length for e in self.edges)


class Crossing(NamedTuple):
    """Transversal intersection of the region boundary with a circle."""

    point: tuple
    sign: int  # +1 where the boundary enters the disk, -1 where it leaves
    angle: float  # position on the circle, in [0, 2 pi)


# ---------------------------------------------------------------------------
# Integrals


def _green(edge):
    """Return half of the contour integral of ``x dy - y dx`` along ``edge``."""
    if isinstance(edge, Segment):
        (x0, y0), (x1, y1) = edge.start, edge.end
        return 0.5 * (x0 * y1 - x1 * y0)
    return _arc_green(edge.center, edge.radius, edge.start, edge.signed_sweep)


def _arc_green(center, radius, a0, dphi):
    cx, cy = center
    a1 = a0 + dphi
    dx = radius * (math.cos(a1) - math.cos(a0))
    dy = radius * (math.sin(a1) - math.sin(a0))
    return 0.5 * (cx * dy - cy * dx + radius * radius * dphi)


def _loop_signed_area(loop):
    return sum(_green(e) for e in loop)


def _first_moments(edge):
    # Contour integrals of x^2 dy and y^2 dx.
    if isinstance(edge, Segment):
        (x0, y0), (x1, y1) = edge.start, edge.end
        dx, dy = x1 - x0, y1 - y0
        return dy * (x0 * x0 + x0 * dx + dx * dx / 3.0), dx * (y0 * y0 + y0 * dy + dy * dy / 3.0)
    cx, cy = edge.center
    r = edge.radius
    a0 = edge.start
    a1 = a0 + edge.signed_sweep

    def ix(a):
        s, c = math.sin(a), math.cos(a)
        return cx * cx * r * s + 2 * cx * r * r * (a / 2 + math.sin(2 * a) / 4) + r**3 * (s - s**3 / 3)

    def iy(a):
        s, c = math.sin(a), math.cos(a)
        return -(cy * cy * r * (-c) + 2 * cy * r * r * (a / 2 - math.sin(2 * a) / 4) + r**3 * (-c + c**3 / 3))

    return ix(a1) - ix(a0), iy(a1) - iy(a0)


def area(region):
    """Area of ``region``; raises :class:`GeometryError` if it is invalid."""
    return region.area


def perimeter(region):
    """Total boundary length of ``region``."""
    return region.perimeter


def centroid(region_or_loop):
    """Centroid of a region, or of a single loop given as a tuple of edges."""
    if isinstance(region_or_loop, ArcRegion):
        edges = region_or_loop.edges
    else:
        edges = tuple(region_or_loop)
    a = sum(_green(e) for e in edges)
    mx = my = 0.0
    for e in edges:
        ix, iy = _first_moments(e)
        mx += ix
        my += iy
    return (0.5 * mx / a, -0.5 * my / a)


def _edge_bbox(edge):
    if isinstance(edge, Segment):
        xs = (edge.start[0], edge.end[0])
        ys = (edge.start[1], edge.end[1])
        return min(xs), min(ys), max(xs), max(ys)
    p0, p1 = edge.start_point, edge.end_point
    xs = [p0[0], p1[0]]
    ys = [p0[1], p1[1]]
    cx, cy = edge.center
    r = edge.radius
    for k, (dx, dy) in enumerate(((1, 0), (0, 1), (-1, 0), (0, -1))):
        if _param_on_arc(edge, 0.5 * math.pi * k) is not None:
            xs.append(cx + r * dx)
            ys.append(cy + r * dy)
    return min(xs), min(ys), max(xs), max(ys)


def bounding_box(region):
    """Return ``(xmin, ymin, xmax, ymax)`` of the region."""
    boxes = [_edge_bbox(e) for e in region.edges]
    return (
        min(b[0] for b in boxes),
        min(b[1] for b in boxes),
        max(b[2] for b in boxes),
        max(b[3] for b in boxes),
    )


def _edge_winding(edge, px, py):
    if isinstance(edge, Segment):
        a0 = math.atan2(edge.start[1] - py, edge.start[0] - px)
        a1 = math.atan2(edge.end[1] - py, edge.end[0] - px)
        return _wrap(a1 - a0)
    cx, cy = edge.center
    p0 = edge.start_point
    p1 = edge.end_point
    a0 = math.atan2(p0[1] - py, p0[0] - px)
    a1 = math.atan2(p1[1] - py, p1[0] - px)
    if math.hypot(px - cx, py - cy) > edge.radius:
        return _wrap(a1 - a0)
    if edge.sweep >= TWO_PI:
        return TWO_PI if edge.ccw else -TWO_PI
    if edge.ccw:
        d = _mod2pi(a1 - a0)
        return d if d > 0.0 else TWO_PI
    d = _mod2pi(a0 - a1)
    return -(d if d > 0.0 else TWO_PI)


def winding_number(region, point):
    """Winding number of the region boundary around ``point``."""
    px, py = point
    total = sum(_edge_winding(e, px, py) for e in region.edges)
    return int(round(total / TWO_PI))


def contains(region, point):
    return winding_number(region, point) != 0


# ---------------------------------------------------------------------------
# Validation


def _dist(p, q):
    return math.hypot(p[0] - q[0], p[1] - q[1])


def _param_on_arc(arc, angle, tol=0.0):
    """Parameter in [0, 1] of ``angle`` along ``arc`` or None if outside."""
    if arc.ccw:
        d = _mod2pi(angle - arc.start)
    else:
        d = _mod2pi(arc.start - angle)
    if d > TWO_PI - tol * arc.sweep:
        d -= TWO_PI
    s = d / arc.sweep
    if -tol <= s <= 1.0 + tol:
        return min(max(s, 0.0), 1.0)
    return None


def _line_circle(p0, p1, c, r):
    """Parameters where segment p0->p1 meets the circle, with transversality."""
    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    fx, fy = p0[0] - c[0], p0[1] - c[1]
    a = dx * dx + dy * dy
    b = fx * dx + fy * dy
    cc = fx * fx + fy * fy - r * r
    disc = b * b - a * cc
    # disc / (a r^2) is the squared sine of the angle between the segment and
    # the circle tangent at the meeting point.
    scale = a * r * r
    if disc < -TANGENCY_TOL**2 * scale:
        return []
    if disc <= 0.0:
        return [(-b / a, 0.0)]
    sq = math.sqrt(disc)
    trans = sq / math.sqrt(scale)
    # Stable quadratic roots.
    q = -(b + math.copysign(sq, b))
    roots = [q / a, cc / q] if q != 0.0 else [0.0, 0.0]
    return [(s, trans) for s in sorted(roots)]


def _circle_circle_angles(c1, r1, c2, r2):
    """Angles on circle 1 of its meeting points with circle 2.

    Returns ``(angles, transversality)`` or ``None`` for coincident circles.
    """
    dx, dy = c2[0] - c1[0], c2[1] - c1[1]
    d = math.hypot(dx, dy)
    scale = max(r1, r2)
    if d <= _ON_TOL * scale:
        if abs(r1 - r2) <= _ON_TOL * scale:
            return None
        return [], 1.0
    k = (d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)
    if abs(k) > 1.0 + TANGENCY_TOL:
        return [], 1.0
    k = min(max(k, -1.0), 1.0)
    base = math.atan2(dy, dx)
    spread = math.acos(k)
    trans = math.sqrt(max(0.0, 1.0 - k * k))
    if spread == 0.0 or spread == math.pi:
        return [base + spread], 0.0
    return [base - spread, base + spread], trans


def _snap_tol(edge):
    """Parameter tolerance worth ``_ON_TOL`` of length along ``edge``.

    Crossings this close to an edge end are snapped to the vertex, so they
    agree with the length tolerance that decides when a circle runs along
    an arc.
    """
    length = edge.length
    if not length > 0.0:
        return _PARAM_TOL
    return min(max(_PARAM_TOL, _ON_TOL / length), 1e-3)


def _edge_circle_params(edge, c, r):
    """Intersection parameters of ``edge`` with circle ``(c, r)``.

    Returns a sorted list of ``(s, transversality)`` or None when ``edge`` is
    an arc lying on the circle itself.
    """
    tol = _snap_tol(edge)
    if isinstance(edge, Segment):
        out = []
        for s, t in _line_circle(edge.start, edge.end, c, r):
            if -tol <= s <= 1.0 + tol:
                out.append((min(max(s, 0.0), 1.0), t))
        return out
    res = _circle_circle_angles(edge.center, edge.radius, c, r)
    if res is None:
        return None
    angles, trans = res
    out = []
    for a in angles:
        s = _param_on_arc(edge, a, tol)
        if s is not None:
            out.append((s, trans))
    out.sort()
    return out


def _edges_intersect(e1, e2):
    """Parameter pairs where two edges meet (overlaps reported as one pair)."""
    if isinstance(e1, Segment) and isinstance(e2, Segment):
        p, q = e1.start, e2.start
        rx, ry = e1.end[0] - p[0], e1.end[1] - p[1]
        sx, sy = e2.end[0] - q[0], e2.end[1] - q[1]
        den = rx * sy - ry * sx
        qpx, qpy = q[0] - p[0], q[1] - p[1]
        if abs(den) <= 1e-14 * (rx * rx + ry * ry + sx * sx + sy * sy):
            if abs(qpx * ry - qpy * rx) > 1e-12 * (rx * rx + ry * ry):
                return []
            rr = rx * rx + ry * ry
            t0 = (qpx * rx + qpy * ry) / rr
            t1 = t0 + (sx * rx + sy * ry) / rr
            lo, hi = min(t0, t1), max(t0, t1)
            lo, hi = max(lo, 0.0), min(hi, 1.0)
            if hi - lo > _PARAM_TOL:
                return [(0.5 * (lo + hi), None)]
            return []
        t = (qpx * sy - qpy * sx) / den
        u = (qpx * ry - qpy * rx) / den
        return [(t, u)]
    if isinstance(e1, Arc) and isinstance(e2, Segment):
        return [(b, a) for a, b in _edges_intersect(e2, e1)]
    if isinstance(e1, Segment):
        out = []
        for s, _ in _line_circle(e1.start, e1.end, e2.center, e2.radius):
            p = e1.point_at(s)
            a = math.atan2(p[1] - e2.center[1], p[0] - e2.center[0])
            u = _param_on_arc(e2, a, _PARAM_TOL)
            if u is not None:
                out.append((s, u))
        return out
    res = _circle_circle_angles(e1.center, e1.radius, e2.center, e2.radius)
    if res is None:
        # Same circle: overlapping if some interior point of one lies on the other.
        for s in (0.25, 0.5, 0.75):
            u = _param_on_arc(e2, e1.angle_at(s))
            if u is not None and _PARAM_TOL < u < 1 - _PARAM_TOL:
                return [(s, None)]
        for u in (0.25, 0.5, 0.75):
            s = _param_on_arc(e1, e2.angle_at(u))
            if s is not None and _PARAM_TOL < s < 1 - _PARAM_TOL:
                return [(s, None)]
        return []
    out = []
    for a in res[0]:
        s = _param_on_arc(e1, a, _PARAM_TOL)
        if s is None:
            continue
        p = e1.point_at(s)
        u = _param_on_arc(e2, math.atan2(p[1] - e2.center[1], p[0] - e2.center[0]), _PARAM_TOL)
        if u is not None:
            out.append((s, u))
    return out


def validate(region):
    """Return a list of human-readable violations; empty when valid.

    Checks loop closure (tolerance 1e-9), non-degenerate edges, pairwise
    edge intersections away from shared vertices, and counter-clockwise
    orientation of each loop.
    """
    problems = []
    flat = []
    for li, loop in enumerate(region.loops):
        n = len(loop)
        for ei, e in enumerate(loop):
            if isinstance(e, Segment) and _dist(e.start, e.end) <= CLOSURE_TOL:
                problems.append(f"loop {li} edge {ei}: degenerate segment")
            nxt = loop[(ei + 1) % n]
            gap = _dist(e.end_point, nxt.start_point)
            if gap > CLOSURE_TOL:
                problems.append(f"loop {li} edge {ei}: open loop, gap {gap:.3g} to next edge")
            flat.append((li, ei, n, e))
    if problems:
        return problems
    for i in range(len(flat)):
        li, ei, n, e1 = flat[i]
        for j in range(i + 1, len(flat)):
            lj, ej, m, e2 = flat[j]
            same = li == lj
            if same and n == 1:
                continue
            next_of_1 = same and ej == (ei + 1) % n
            next_of_2 = same and ei == (ej + 1) % n
            for s, u in _edges_intersect(e1, e2):
                if u is None:
                    problems.append(f"loop {li} edge {ei} overlaps loop {lj} edge {ej}")
                    break
                if not (-_PARAM_TOL <= s <= 1 + _PARAM_TOL and -_PARAM_TOL <= u <= 1 + _PARAM_TOL):
                    continue
                # Shared vertices of consecutive edges are not intersections.
                if next_of_1 and s > 1 - 1e-9 and u < 1e-9:
                    continue
                if next_of_2 and s < 1e-9 and u > 1 - 1e-9:
                    continue
                problems.append(f"loop {li} edge {ei} intersects loop {lj} edge {ej}")
                break
    for li, loop in enumerate(region.loops):
        if _loop_signed_area(loop) <= 0.0:
            problems.append(f"loop {li}: non-positive signed area (not counter-clockwise)")
    return problems


def _require_valid(region):
    problems = region.diagnostics
    if problems:
        raise GeometryError("invalid region: " + "; ".join(problems))


# ---------------------------------------------------------------------------
# Clipping against a disk

_OUT, _IN, _ON = 0, 1, 2


_PROBE_ANGLES = tuple(0.5 + 1.2566370614359172 * k for k in range(5))


class _Clip(NamedTuple):
    inside_area: float  # |region intersect disk|
    junctions: list  # (point, prev_state, next_state, transversality)
    arcs_inside: list  # (a, b) angle pairs, a < b, of disk-boundary arcs in the region
    on_length: float  # length of region boundary lying on the circle, ccw sense


def _classify(edge, s0, s1, c, r):
    p = edge.point_at(0.5 * (s0 + s1))
    d = math.hypot(p[0] - c[0], p[1] - c[1])
    return _IN if d < r else _OUT


def _piece_green(edge, s0, s1):
    if isinstance(edge, Segment):
        p0, p1 = edge.point_at(s0), edge.point_at(s1)
        return 0.5 * (p0[0] * p1[1] - p1[0] * p0[1])
    return _arc_green(edge.center, edge.radius, edge.angle_at(s0), (s1 - s0) * edge.signed_sweep)


def _clip(region, center, radius):
    c = (float(center[0]), float(center[1]))
    r = float(radius)
    area_in = 0.0
    junctions = []
    on_intervals = []  # (start angle, width) on the circle, ccw
    on_length = 0.0
    junction_angles = []
    for loop in region.loops:
        pieces = []  # (edge, s0, s1, state, start_on, transversality at start)
        for edge in loop:
            params = _edge_circle_params(edge, c, r)
            if params is None:
                pieces.append((edge, 0.0, 1.0, _ON, True, 0.0))
                continue
            tol = _snap_tol(edge)
            cuts = [0.0]
            trans_at = {0.0: None}
            for s, t in params:
                if s - cuts[-1] <= tol and cuts[-1] in trans_at:
                    trans_at[cuts[-1]] = t if trans_at[cuts[-1]] is None else min(trans_at[cuts[-1]], t)
                    continue
                cuts.append(s)
                trans_at[s] = t
            end_hit = None
            if cuts[-1] >= 1.0 - tol and len(cuts) > 1:
                end_hit = trans_at.pop(cuts[-1])
                cuts[-1] = 1.0
            else:
                cuts.append(1.0)
            for k in range(len(cuts) - 1):
                s0, s1 = cuts[k], cuts[k + 1]
                state = _classify(edge, s0, s1, c, r)
                t = trans_at.get(s0)
                pieces.append((edge, s0, s1, state, t is not None, t if t is not None else 1.0))
            if end_hit is not None:
                # Mark the start of the following piece as lying on the circle.
                pieces.append(("end", end_hit))
        # Resolve end-of-edge markers into start flags of the next piece.
        resolved = []
        pending = None
        for item in pieces:
            if item[0] == "end":
                pending = item[1]
                continue
            if pending is not None:
                edge, s0, s1, state, start_on, t = item
                t = pending if not start_on else min(t, pending)
                item = (edge, s0, s1, state, True, t)
                pending = None
            resolved.append(item)
        if pending is not None:
            edge, s0, s1, state, start_on, t = resolved[0]
            t = pending if not start_on else min(t, pending)
            resolved[0] = (edge, s0, s1, state, True, t)
        n = len(resolved)
        for k, (edge, s0, s1, state, start_on, t) in enumerate(resolved):
            if state == _IN:
                area_in += _piece_green(edge, s0, s1)
            elif state == _ON:
                if edge.ccw:
                    area_in += _piece_green(edge, s0, s1)
                    on_intervals.append((_mod2pi(edge.angle_at(s0)), (s1 - s0) * edge.sweep))
                    on_length += (s1 - s0) * edge.length
                else:
                    on_intervals.append((_mod2pi(edge.angle_at(s1)), (s1 - s0) * edge.sweep))
            if start_on:
                prev_state = resolved[k - 1][3] if n > 1 or k > 0 else state
                p = edge.point_at(s0)
                junctions.append((p, prev_state, state, t))
                junction_angles.append(_mod2pi(math.atan2(p[1] - c[1], p[0] - c[0])))
    arcs_inside = []
    if junction_angles:
        angles = sorted(junction_angles)
        m = len(angles)
        for k in range(m):
            a = angles[k]
            b = angles[k + 1] if k + 1 < m else angles[0] + TWO_PI
            if b - a <= 0.0:
                continue
            mid = 0.5 * (a + b)
            if any(_mod2pi(mid - lo) < w for lo, w in on_intervals):
                continue
            if winding_number(region, (c[0] + r * math.cos(mid), c[1] + r * math.sin(mid))) != 0:
                arcs_inside.append((a, b))
    else:
        # The circle touches the boundary at isolated points at most, so a
        # majority of probes decides. Off-axis angles avoid contact points
        # that lattice-aligned centers tend to produce.
        votes = sum(
            winding_number(region, (c[0] + r * math.cos(a), c[1] + r * math.sin(a))) != 0
            for a in _PROBE_ANGLES
        )
        if 2 * votes > len(_PROBE_ANGLES):
            arcs_inside.append((0.0, TWO_PI))
    for a, b in arcs_inside:
        area_in += _arc_green(c, r, a, b - a)
    return _Clip(area_in, junctions, arcs_inside, on_length)


def intersection_area(region, ball):
    """Area of the intersection of ``region`` with ``ball``."""
    _require_valid(region)
    return _clip(region, ball.center, ball.radius).inside_area


def symm_diff_area(region, ball):
    """Area of the symmetric difference of ``region`` and ``ball``."""
    inter = intersection_area(region, ball)
    inter = min(max(inter, 0.0), min(region.area, ball.area))
    return max(region.area + ball.area - 2.0 * inter, 0.0)


def circle_boundary_intersections(region, ball):
    """Transversal crossings of the region boundary with the ball boundary.

    Returns a list of :class:`Crossing` sorted counter-clockwise by angle on
    the ball boundary. Raises :class:`TransversalityError` on tangential
    contact (within 1e-9), on boundary pieces lying along the circle, and on
    vertices that touch the circle without crossing it.
    """
    _require_valid(region)
    clip = _clip(region, ball.center, ball.radius)
    return _crossings(clip, ball)


def _crossings(clip, ball):
    c = ball.center
    out = []
    for p, prev_state, state, t in clip.junctions:
        if prev_state == _ON or state == _ON:
            raise TransversalityError(f"boundary runs along the circle near {p}")
        if prev_state == state or t < TANGENCY_TOL:
            raise TransversalityError(f"tangential contact with the circle near {p}")
        sign = 1 if state == _IN else -1
        out.append(Crossing(p, sign, _mod2pi(math.atan2(p[1] - c[1], p[0] - c[0]))))
    out.sort(key=lambda x: x.angle)
    return out


def inside_arcs(region, ball, check_transversal=True):
    """Arcs ``(a, b)`` of the ball boundary lying inside the region.

    Angles satisfy ``a < b <= a + 2 pi`` and are measured counter-clockwise
    around the ball center.
    """
    _require_valid(region)
    clip = _clip(region, ball.center, ball.radius)
    if check_transversal:
        _crossings(clip, ball)
    return clip.arcs_inside, clip


# ---------------------------------------------------------------------------
# Transforms and serialisation


def _map_edge(edge, fn_point, rotation, factor):
    if isinstance(edge, Segment):
        return Segment(fn_point(edge.start), fn_point(edge.end))
    return Arc(fn_point(edge.center), edge.radius * factor, edge.start + rotation, edge.end + rotation, edge.ccw)


def rigid_transform(region, rotation=0.0, translation=(0.0, 0.0)):
    """Rotate by ``rotation`` about the origin, then translate."""
    cs, sn = math.cos(rotation), math.sin(rotation)
    tx, ty = translation

    def fn(p):
        if rotation == 0.0:
            # Keeps the identity transform exact.
            return (p[0] + tx, p[1] + ty)
        return (cs * p[0] - sn * p[1] + tx, sn * p[0] + cs * p[1] + ty)

    return ArcRegion(tuple(tuple(_map_edge(e, fn, rotation, 1.0) for e in loop) for loop in region.loops))


def reflect(region, axis="x"):
    """Mirror image across the x axis (``axis='x'``) or the y axis."""
    if axis not in ("x", "y"):
        raise ValueError("axis must be 'x' or 'y'")

    def fp(p):
        return (p[0], -p[1]) if axis == "x" else (-p[0], p[1])

    def fa(a):
        return -a if axis == "x" else math.pi - a

    loops = []
    for loop in region.loops:
        edges = []
        for e in reversed(loop):
            if isinstance(e, Segment):
                edges.append(Segment(fp(e.end), fp(e.start)))
            else:
                edges.append(Arc(fp(e.center), e.radius, fa(e.end), fa(e.start), e.ccw))
        loops.append(tuple(edges))
    return ArcRegion(tuple(loops))


def scale(region, factor):
    """Scale about the origin by ``factor > 0``."""
    if not factor > 0.0:
        raise GeometryError("scale factor must be positive")

    def fn(p):
        return (factor * p[0], factor * p[1])

    return ArcRegion(tuple(tuple(_map_edge(e, fn, 0.0, factor) for e in loop) for loop in region.loops))


def edge_to_json(edge):
    if isinstance(edge, Segment):
        return {"type": "segment", "from": list(edge.start), "to": list(edge.end)}
    return {
        "type": "arc",
        "center": list(edge.center),
        "radius": edge.radius,
        "start": edge.start,
        "end": edge.end,
        "ccw": edge.ccw,
    }


def region_to_json(region):
    """Serialise to ``{"loops": [[edge, ...], ...]}``."""
    return {"loops": [[edge_to_json(e) for e in loop] for loop in region.loops]}


def region_from_json(doc):
    """Inverse of :func:`region_to_json`; raises GeometryError on bad input."""
    try:
        loops = []
        for loop in doc["loops"]:
            edges = []
            for e in loop:
                kind = e["type"]
                if kind == "segment":
                    edges.append(Segment(tuple(e["from"]), tuple(e["to"])))
                elif kind == "arc":
                    edges.append(
                        Arc(tuple(e["center"]), float(e["radius"]), float(e["start"]), float(e["end"]), bool(e.get("ccw", True)))
                    )
                else:
                    raise GeometryError(f"unknown edge type {kind!r}")
            loops.append(tuple(edges))
        return ArcRegion(tuple(loops))
    except (KeyError, TypeError, IndexError) as exc:
        raise GeometryError(f"malformed shape document: {exc}") from exc
