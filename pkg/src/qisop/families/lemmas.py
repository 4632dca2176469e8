"""Grid scans of the exclusion lemmas for one-ball candidates.

Each lemma claims a predicate on a region of ``(n, theta, alpha)``. The
region is sampled on a ``grid x grid`` lattice per value of ``n``, mapped
onto the region fiberwise (theta uniform, then alpha uniform on its range at
that theta) with every boundary moved ``1e-4`` inward. Unbounded ranges of
``n`` stop at ``N_MAX``.

Two evaluation modes are used.

* ``grid``: sign predicates on the areas and on Phi are evaluated at every
  lattice point.
* ``balance``: predicates involving the quotient (``F > 0.406`` and
  ``Q < 0``) are only meaningful for sets of area ``pi``, i.e. on the curve
  where the area balance holds. The balance residual is followed along
  every lattice row and column; each sign change is refined by a 1-D root
  solve and the predicate is evaluated at the root. In the connected case
  the balance points must also satisfy ``A0 <= pi/n``.

The margin is positive exactly when the predicate holds.
"""

from __future__ import annotations

import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .report import ConfigurationError
from .rotsym import F_THRESHOLD, _areas, alpha_root, phi_factor, RotSymParams, rotsym_metrics

__all__ = ["LEMMA_IDS", "N_MAX", "INSET", "LemmaScanReport", "lemma_scan", "lemma_description"]

PI = math.pi
N_MAX = 40
INSET = 1e-4


@lru_cache(maxsize=None)
def _alpha_n(n):
    return alpha_root(n)


@dataclass(frozen=True)
class _Lemma:
    lemma_id: str
    connected: bool
    ns: tuple
    theta: object  # n -> (lo, hi)
    alpha: object  # (n, theta) -> (lo, hi)
    predicate: str
    text: str
    keep: object = None  # (n, theta, alpha) -> bool


def _r0(t, a):
    return math.sin(t) / math.sin(a)


def _w(n):
    return PI / n


_LEMMAS = (
    _Lemma("L44", True, tuple(range(4, N_MAX + 1)),
           lambda n: (PI / (2 * n), PI / n), lambda n, t: (PI / n, PI),
           "a0_gt_a1", "A0 - A1 > 0"),
    _Lemma("L45", True, tuple(range(4, N_MAX + 1)),
           lambda n: (0.0, PI / (2 * n)), lambda n, t: (PI / n, 0.5 * PI),
           "f_gt", "F > 0.406"),
    _Lemma("L47", True, tuple(range(4, N_MAX + 1)),
           lambda n: (0.0, PI / (2 * n)), lambda n, t: (0.5 * PI, 0.5 * PI + PI / n),
           "q_lt", "Q < 0"),
    _Lemma("L48", True, tuple(range(17, N_MAX + 1)),
           lambda n: (0.0, PI / (2 * n)), lambda n, t: (0.75 * PI, PI),
           "f_gt", "F > 0.406"),
    _Lemma("L49", True, tuple(range(8, N_MAX + 1)),
           lambda n: (0.0, PI / (2 * n)), lambda n, t: (0.5 * PI + PI / n, 0.75 * PI),
           "f_gt", "F > 0.406"),
    _Lemma("L411(i)", True, tuple(range(4, 17)),
           lambda n: (0.0, PI / (2 * n)), lambda n, t: (0.75 * PI, PI),
           "q_lt", "Q < 0"),
    _Lemma("L411(ii)", True, (5, 6, 7),
           lambda n: (0.0, PI / (2 * n)), lambda n, t: (0.5 * PI + PI / n, 0.75 * PI),
           "q_lt", "Q < 0"),
    _Lemma("L412(1)", True, (3,),
           lambda n: (0.0, PI / 6), lambda n, t: (PI / 3, 0.5 * PI),
           "f_gt", "F > 0.406"),
    _Lemma("L412(2)", True, (3,),
           lambda n: (0.0, PI / 6), lambda n, t: (0.5 * PI, 5 * PI / 6),
           "q_lt", "Q < 0"),
    _Lemma("L412(3)", True, (3,),
           lambda n: (0.0, PI / 12), lambda n, t: (5 * PI / 6, PI),
           "a1_gt_third", "A1 > pi/3"),
    _Lemma("L412(4)", True, (3,),
           lambda n: (PI / 12, PI / 6), lambda n, t: (5 * PI / 6, PI),
           "q_lt", "Q < 0"),
    _Lemma("L412(5)", True, (3,),
           lambda n: (PI / 6, PI / 3), lambda n, t: (PI / 3, PI),
           "a0_gt_a1", "A0 - A1 > 0"),
    _Lemma("L413", True, (2,),
           lambda n: (0.0, 0.5 * PI), lambda n, t: (0.5 * PI, PI),
           "q_lt", "Q < 0"),
    _Lemma("L415", False, tuple(range(2, N_MAX + 1)),
           lambda n: (0.0, PI / n), lambda n, t: (max(_alpha_n(n), t), PI),
           "phi_lt", "Phi < 0"),
    _Lemma("L416", False, tuple(range(3, N_MAX + 1)),
           lambda n: (PI / (2 * n), PI / n), lambda n, t: (t, PI),
           "balance_gt", "A0 - A1 + (pi/N) R0^2 > 0"),
    _Lemma("L417", False, tuple(range(3, N_MAX + 1)),
           lambda n: (0.0, PI / (2 * n)), lambda n, t: (PI / n, _alpha_n(n)),
           "f_gt", "F > 0.406"),
    _Lemma("L418", False, tuple(range(3, N_MAX + 1)),
           lambda n: (0.0, PI / (2 * n)), lambda n, t: (t, PI / n),
           "f_gt", "F > 0.406"),
    _Lemma("L419(1)", False, (2,),
           lambda n: (0.0, 0.5 * PI), lambda n, t: (max(_alpha_n(2), t), PI),
           "phi_lt", "Phi < 0"),
    _Lemma("L419(2)", False, (2,),
           lambda n: (0.25 * PI, 0.5 * PI), lambda n, t: (t, 0.5 * PI),
           "balance_gt", "A0 - A1 + (pi/2) R0^2 > 0"),
    _Lemma("L419(3)", False, (2,),
           lambda n: (0.0, PI / 6), lambda n, t: (t, PI / 6),
           "f_gt", "F > 0.406"),
    _Lemma("L419(4)", False, (2,),
           lambda n: (0.0, 0.25 * PI), lambda n, t: (max(PI / 6, t), _alpha_n(2)),
           "balance_lt", "A0 - A1 + (pi/2) R0^2 < 0", lambda n, t, a: _r0(t, a) <= 0.45),
    _Lemma("L419(5)", False, (2,),
           lambda n: (0.0, 0.25 * PI), lambda n, t: (max(PI / 6, t), _alpha_n(2)),
           "f_gt", "F > 0.406", lambda n, t, a: _r0(t, a) >= 0.45),
)

LEMMA_IDS = tuple(lem.lemma_id for lem in _LEMMAS)
_BY_KEY = {re.sub(r"[()\s_-]", "", lem.lemma_id.upper()): lem for lem in _LEMMAS}
_BALANCE_PREDICATES = ("f_gt", "q_lt")


def _lookup(lemma_id):
    key = re.sub(r"[()\s_-]", "", str(lemma_id).upper())
    try:
        return _BY_KEY[key]
    except KeyError:
        raise ConfigurationError(f"unknown lemma id {lemma_id!r}; known: {', '.join(LEMMA_IDS)}") from None


def lemma_description(lemma_id):
    return _lookup(lemma_id).text


def _balance(lem, n, t, a):
    a0, a1 = _areas(n, t, a)
    if lem.connected:
        return a0 - a1
    return a0 - a1 + _w(n) * _r0(t, a) ** 2


def _margin(lem, n, t, a):
    p = lem.predicate
    if p in _BALANCE_PREDICATES:
        rep = rotsym_metrics(RotSymParams(n, t, a, lem.connected))
        if p == "f_gt":
            return rep.value - F_THRESHOLD
        return -rep.q
    if p == "phi_lt":
        c = math.cos(a) / math.sin(a)
        return -(n * _r0(t, a) * (1.0 - a * c) * phi_factor(n, a))
    a0, a1 = _areas(n, t, a)
    if p == "a0_gt_a1":
        return a0 - a1
    if p == "a1_gt_third":
        return a1 - PI / 3
    bal = a0 - a1 + _w(n) * _r0(t, a) ** 2
    if p == "balance_gt":
        return bal
    if p == "balance_lt":
        return -bal
    raise ConfigurationError(f"unknown predicate {p!r}")


class _Mapper:
    """Maps the unit square onto the lemma region with insets."""

    def __init__(self, lem, n):
        self.lem, self.n = lem, n
        lo, hi = lem.theta(n)
        self.tlo, self.thi = lo + INSET, hi - INSET

    def theta(self, u):
        return self.tlo + u * (self.thi - self.tlo)

    def point(self, u, v):
        t = self.theta(u)
        lo, hi = self.lem.alpha(self.n, t)
        lo, hi = lo + INSET, hi - INSET
        if hi <= lo:
            return None
        return t, lo + v * (hi - lo)


def _admissible(lem, n, t, a):
    if lem.keep is not None and not lem.keep(n, t, a):
        return False
    if lem.predicate in _BALANCE_PREDICATES and lem.connected:
        a0, _ = _areas(n, t, a)
        if a0 > _w(n):
            return False
    return True


def _grid_points(lem, n, grid):
    m = _Mapper(lem, n)
    us = np.linspace(0.0, 1.0, grid)
    for u in us:
        for v in us:
            pt = m.point(float(u), float(v))
            if pt is not None and _admissible(lem, n, *pt):
                yield pt


def _balance_points(lem, n, grid):
    m = _Mapper(lem, n)
    us = [float(x) for x in np.linspace(0.0, 1.0, grid)]
    values = {}
    for i, u in enumerate(us):
        for j, v in enumerate(us):
            pt = m.point(u, v)
            values[i, j] = None if pt is None else _balance(lem, n, *pt)

    def refine(fn, lo, hi):
        return brentq(fn, lo, hi, xtol=1e-15)

    found = []
    # along alpha (v) at fixed theta, then along theta (u) at fixed v
    for i, u in enumerate(us):
        for j in range(grid - 1):
            f0, f1 = values[i, j], values[i, j + 1]
            if f0 is None or f1 is None or f0 * f1 > 0.0:
                continue
            if f0 == 0.0:
                found.append(m.point(u, us[j]))
                continue
            if f1 == 0.0:
                continue
            s = refine(lambda v: _balance(lem, n, *m.point(u, v)), us[j], us[j + 1])
            found.append(m.point(u, s))
    for j, v in enumerate(us):
        for i in range(grid - 1):
            f0, f1 = values[i, j], values[i + 1, j]
            if f0 is None or f1 is None or f0 * f1 >= 0.0:
                continue
            try:
                s = refine(lambda x: _balance(lem, n, *m.point(x, v)), us[i], us[i + 1])
            except (TypeError, ValueError):
                continue  # the alpha fiber degenerates inside the cell
            found.append(m.point(s, v))
    for pt in found:
        if pt is not None and _admissible(lem, n, *pt):
            yield pt


def _scan_slice(lemma_id, n, grid, keep_points):
    lem = _lookup(lemma_id)
    mode = "balance" if lem.predicate in _BALANCE_PREDICATES else "grid"
    pts = _balance_points(lem, n, grid) if mode == "balance" else _grid_points(lem, n, grid)
    count = 0
    worst = math.inf
    worst_pt = None
    failures = []
    kept = []
    for t, a in pts:
        margin = _margin(lem, n, t, a)
        count += 1
        if margin < worst:
            worst, worst_pt = margin, (n, t, a)
        if not margin > 0.0:
            failures.append({"n": n, "theta": t, "alpha": a, "margin": margin})
        if keep_points:
            kept.append((n, t, a, margin, margin > 0.0))
    return {"n": n, "points": count, "worst_margin": worst if count else None,
            "worst_point": worst_pt, "failures": failures, "kept": kept, "mode": mode}


@dataclass(frozen=True)
class LemmaScanReport:
    lemma_id: str
    predicate: str
    mode: str
    grid: int
    ns: tuple
    n_points: int
    worst_margin: float
    worst_point: tuple
    failures: tuple
    slices: tuple
    points: tuple = field(default=(), repr=False)

    @property
    def passed(self):
        return self.n_points > 0 and not self.failures and self.worst_margin > 0.0

    def to_dict(self):
        return {
            "lemma_id": self.lemma_id,
            "predicate": self.predicate,
            "mode": self.mode,
            "grid": self.grid,
            "n": [self.ns[0], self.ns[-1]],
            "points": self.n_points,
            "worst_margin": self.worst_margin,
            "worst_point": list(self.worst_point) if self.worst_point else None,
            "passed": self.passed,
            "failures": list(self.failures),
        }


def lemma_scan(lemma_id, grid=50, workers=None, keep_points=False):
    """Evaluate one lemma's predicate over its parameter region.

    Parameters
    ----------
    lemma_id : str
        One of :data:`LEMMA_IDS` (parentheses and case are ignored).
    grid : int
        Lattice resolution per ``n`` slice.
    workers : int, optional
        Number of worker processes; slices are independent and the result
        does not depend on scheduling.
    keep_points : bool
        Store ``(n, theta, alpha, margin, passed)`` for every evaluated point.

    Raises
    ------
    ConfigurationError
        For an unknown lemma id or a grid below 2.
    """
    lem = _lookup(lemma_id)
    grid = int(grid)
    if grid < 2:
        raise ConfigurationError("grid must be at least 2")
    args = [(lem.lemma_id, n, grid, keep_points) for n in lem.ns]
    if workers and workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            slices = list(ex.map(_scan_slice, *zip(*args)))
    else:
        slices = [_scan_slice(*a) for a in args]
    n_points = sum(s["points"] for s in slices)
    evaluated = [s for s in slices if s["points"]]
    if evaluated:
        worst_slice = min(evaluated, key=lambda s: s["worst_margin"])
        worst, worst_pt = worst_slice["worst_margin"], worst_slice["worst_point"]
    else:
        worst, worst_pt = None, None
    failures = tuple(f for s in slices for f in s["failures"])
    return LemmaScanReport(
        lemma_id=lem.lemma_id,
        predicate=lem.text,
        mode=slices[0]["mode"],
        grid=grid,
        ns=lem.ns,
        n_points=n_points,
        worst_margin=worst,
        worst_point=worst_pt,
        failures=failures,
        slices=tuple({k: s[k] for k in ("n", "points", "worst_margin")} for s in slices),
        points=tuple(p for s in slices for p in s["kept"]),
    )
