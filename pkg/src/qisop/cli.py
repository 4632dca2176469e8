"""Command-line interface.

Usage examples::

    qisop mask eval --alpha 0.2686247 --theta 0.5285017
    qisop mask optimize --json
    qisop metrics --shape shape.json --svg shape.svg
    qisop scan --lemma L413 --grid 200
    qisop soak --n 1000 --seed 42

Exit status is 0 on success, 2 on a usage or configuration error, 3 when
the input is outside the domain of the computation and 1 otherwise.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time

from . import DomainError, QisopError, __version__
from .fraenkel import NearBallError, SearchConfig, deficit, optimal_balls
from .geometry import (
    Ball,
    circle_boundary_intersections,
    region_from_json,
    region_to_json,
)

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _num(v):
    """Nine significant digits; non-finite values become strings."""
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        if not math.isfinite(v):
            return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
        return float(f"{v:.9g}") + 0.0  # adding 0.0 turns -0.0 into 0.0
    if isinstance(v, dict):
        return {k: _num(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_num(x) for x in v]
    return v


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.9g}"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


def _table(rows):
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)} = {_fmt(v)}" for k, v in rows)


def _load_shape(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise _UsageError(f"{path} is not valid JSON: {exc.msg}") from None
    return region_from_json(doc), doc


def _write_shape(path, region):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(region_to_json(region), fh, indent=1, sort_keys=True)
        fh.write("\n")


def _search_config(args):
    return SearchConfig(max_starts=args.starts) if args.starts else SearchConfig()


def _render(args, region, balls=(), axes=(), title=None):
    if not args.svg:
        return
    from .svg import render_svg, write_svg

    points = []
    for b in balls:
        try:
            points.extend(c.point for c in circle_boundary_intersections(region, b))
        except QisopError:
            pass
    write_svg(args.svg, render_svg(region, balls=balls, points=points, axes=axes, title=title))


# verb handlers return (rows, outputs)


def _cmd_metrics(args):
    region, _ = _load_shape(args.shape)
    asym = optimal_balls(region, _search_config(args))
    d = deficit(region)
    if asym.lambda_ > args.lambda_floor:
        value, note = d / asym.lambda_**2, None
    else:
        value, note = None, "undefined (near-ball)"
    rows = [
        ("area", region.area),
        ("perimeter", region.perimeter),
        ("delta", d),
        ("lambda", asym.lambda_),
        ("F", value if value is not None else note),
        ("optimal centers", list(asym.optimal_centers)),
    ]
    if args.emit_shape:
        _write_shape(args.emit_shape, region)
    _render(args, region, asym.balls, title="metrics")
    out = {
        "area": region.area,
        "perimeter": region.perimeter,
        "delta": d,
        "lambda": asym.lambda_,
        "value": value,
        "optimal_centers": [list(c) for c in asym.optimal_centers],
    }
    return rows, out


def _cmd_asymmetry(args):
    region, _ = _load_shape(args.shape)
    asym = optimal_balls(region, _search_config(args))
    rows = [
        ("lambda", asym.lambda_),
        ("psi at optimum", asym.psi_at_optimum),
        ("radius", asym.radius),
        ("optimal centers", list(asym.optimal_centers)),
    ]
    _render(args, region, asym.balls, title="asymmetry")
    out = {
        "lambda": asym.lambda_,
        "psi": asym.psi_at_optimum,
        "radius": asym.radius,
        "optimal_centers": [list(c) for c in asym.optimal_centers],
    }
    return rows, out


def _cmd_symmetrize(args):
    from .symmetrization import symmetrize

    region, _ = _load_shape(args.shape)
    sym = symmetrize(region, _search_config(args))
    dec = sym.decomposition
    rows = [
        ("gamma_out", dec.gamma_out),
        ("gamma_in", dec.gamma_in),
        ("area_out", dec.area_out),
        ("area_in", dec.area_in),
        ("eta_out", sym.eta_out),
        ("eta_in", sym.eta_in),
        ("theta_out", sym.theta_out),
        ("theta_in", sym.theta_in),
        ("area", sym.region.area),
        ("delta", deficit(sym.region)),
    ]
    if args.emit_shape:
        _write_shape(args.emit_shape, sym.region)
    c = sym.ball.center
    _render(args, sym.region, (sym.ball,), axes=((c, 0.0), (c, 0.5 * math.pi)), title="symmetrization")
    return rows, {k: v for k, v in rows}


def _report_rows(rep):
    rows = [("r0", rep.r0), ("r1", rep.r1), ("a0", rep.a0), ("a1", rep.a1),
            ("delta", rep.delta), ("lambda", rep.lambda_), ("F", rep.value)]
    if rep.q is not None:
        rows.append(("Q", rep.q))
    if rep.phi is not None:
        rows.append(("Phi", rep.phi))
    return rows


def _cmd_mask(args):
    from .families.mask import MaskParams, mask_construct, mask_metrics, mask_optimize, mask_x0_from_area, MaskOptimizeConfig
    from .families.rotsym import condition_check

    if args.action == "optimize":
        cfg = MaskOptimizeConfig(lattice=args.grid) if args.grid else MaskOptimizeConfig()
        p, rep = mask_optimize(cfg)
    else:
        if args.alpha is None or args.theta is None:
            raise _UsageError("mask eval needs --alpha and --theta")
        x0 = args.x0 if args.x0 is not None else mask_x0_from_area(args.alpha, args.theta)
        p = MaskParams(args.alpha, args.theta, x0)
        rep = mask_metrics(p)
    cond = condition_check(rep, tol=args.tol)
    rows = [("alpha", p.alpha), ("theta", p.theta), ("x0", p.x0)] + _report_rows(rep)
    rows += [("c*", rep.c_star), ("perimeter", rep.extra["perimeter"]), ("area", rep.extra["area"]),
             ("residual (ii)", cond.residuals["ii"])]
    region = mask_construct(p)
    if args.emit_shape:
        _write_shape(args.emit_shape, region)
    balls = tuple(Ball(c, 1.0) for c in rep.extra["centers"])
    _render(args, region, balls, axes=(((0.0, 0.0), 0.0), ((0.0, 0.0), 0.5 * math.pi)), title="mask")
    out = rep.to_dict()
    out.update(alpha=p.alpha, theta=p.theta, x0=p.x0, c_star=rep.c_star, conditions=cond.residuals)
    return rows, out


def _cmd_oval(args):
    from .families.ovals import OvalParams, oval_construct, oval_metrics

    p = OvalParams(args.eta1, args.eta2, args.eps)
    rep = oval_metrics(p)
    rows = _report_rows(rep) + [("theta1", rep.extra["theta1"]), ("theta2", rep.extra["theta2"])]
    region = oval_construct(p)
    if args.emit_shape:
        _write_shape(args.emit_shape, region)
    _render(args, region, (Ball((0.0, 0.0), 1.0),), axes=(((0.0, 0.0), 0.0), ((0.0, 0.0), 0.5 * math.pi)), title="oval")
    return rows, rep.to_dict()


def _cmd_rotsym(args):
    from .families.rotsym import RotSymParams, condition_check, rotsym_construct, rotsym_metrics, solve_area_balance

    connected = not args.nonconnected
    theta = args.theta
    if args.balance:
        theta = solve_area_balance(args.n, args.alpha, connected)
    if theta is None:
        raise _UsageError("rotsym needs --theta or --balance")
    p = RotSymParams(args.n, theta, args.alpha, connected)
    rep = rotsym_metrics(p)
    cond = condition_check(rep, tol=args.tol)
    rows = [("n", p.n), ("theta", p.theta), ("alpha", p.alpha)] + _report_rows(rep)
    rows += [(f"residual ({k})", v) for k, v in cond.residuals.items() if v is not None]
    region = rotsym_construct(p)
    if args.emit_shape:
        _write_shape(args.emit_shape, region)
    _render(args, region, (Ball((0.0, 0.0), 1.0),), title="rotsym")
    out = rep.to_dict()
    out["conditions"] = cond.residuals
    return rows, out


def _cmd_stadium(args):
    from .families.stadium import stadium, stadium_optimize, stadium_value

    if args.action == "optimize":
        t, _ = stadium_optimize()
    else:
        if args.t is None:
            raise _UsageError("stadium eval needs --t")
        t = args.t
    rep = stadium_value(t)
    rows = [("t", t)] + _report_rows(rep)
    region = stadium(t)
    if args.emit_shape:
        _write_shape(args.emit_shape, region)
    _render(args, region, (Ball((0.0, 0.0), 1.0),), title="stadium")
    out = rep.to_dict()
    out["t"] = t
    return rows, out


def _cmd_scan(args):
    from .families.lemmas import LEMMA_IDS, lemma_scan

    ids = LEMMA_IDS if args.lemma == "all" else (args.lemma,)
    reports = [lemma_scan(lid, grid=args.grid or 50, workers=args.workers) for lid in ids]
    rows = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        rows.append((r.lemma_id, f"{status}  {r.predicate}  points={r.n_points}  worst margin={_fmt(r.worst_margin)}"))
    out = {"scans": [r.to_dict() for r in reports], "passed": all(r.passed for r in reports)}
    return rows, out


def _cmd_soak(args):
    from .families.soak import ALL_KINDS, RANDOM_KINDS, soak_random

    kinds = tuple(args.kinds.split(",")) if args.kinds else RANDOM_KINDS
    for k in kinds:
        if k not in ALL_KINDS:
            raise _UsageError(f"unknown shape kind {k!r}")
    rep = soak_random(args.n, args.seed, kinds=kinds, config=_search_config(args), workers=args.workers)
    best = rep.min_sample or {}
    rows = [
        ("samples", rep.n),
        ("skipped", len(rep.skipped)),
        ("min F", rep.min_value),
        ("min kind", best.get("kind")),
        ("anomalies", len(rep.anomalies)),
        ("constant violations", len(rep.constant_violations)),
        ("status", "PASS" if rep.passed else "FAIL"),
    ]
    out = rep.to_dict()
    if out.get("min_sample"):
        out["min_sample"] = {k: v for k, v in out["min_sample"].items() if k != "shape"}
    if args.emit_shape and best.get("shape"):
        with open(args.emit_shape, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(best["shape"], fh, indent=1, sort_keys=True)
            fh.write("\n")
    return rows, out


def _cmd_render(args):
    region, _ = _load_shape(args.shape)
    if not args.svg:
        raise _UsageError("render needs --svg PATH")
    balls = ()
    if not args.no_balls:
        balls = optimal_balls(region, _search_config(args)).balls
    _render(args, region, balls, title="render")
    return [("svg", args.svg), ("balls", len(balls))], {"svg": args.svg, "balls": len(balls)}


_HANDLERS = {
    "metrics": _cmd_metrics,
    "asymmetry": _cmd_asymmetry,
    "symmetrize": _cmd_symmetrize,
    "mask": _cmd_mask,
    "oval": _cmd_oval,
    "rotsym": _cmd_rotsym,
    "stadium": _cmd_stadium,
    "scan": _cmd_scan,
    "soak": _cmd_soak,
    "render": _cmd_render,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON document instead of a table")
    common.add_argument("--timing", action="store_true", help="include wall time in the JSON document")
    common.add_argument("--svg", metavar="PATH", help="write an SVG figure")
    common.add_argument("--emit-shape", metavar="PATH", help="write the shape as JSON")
    common.add_argument("--tol", type=float, default=1e-8, help="tolerance for condition diagnostics")
    common.add_argument("--starts", type=int, default=None, help="maximum number of local descents")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--grid", type=int, default=None, help="grid or lattice resolution")
    common.add_argument("--workers", type=int, default=None, help="worker processes for scans and soaks")

    parser = argparse.ArgumentParser(prog="qisop", description="Quantitative isoperimetric computations.")
    parser.add_argument("--version", action="version", version=f"qisop {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    for name in ("metrics", "asymmetry", "symmetrize"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--shape", required=True, help="JSON shape file")
        p.add_argument("--lambda-floor", type=float, default=1e-6)

    p = sub.add_parser("mask", parents=[common])
    p.add_argument("action", choices=("eval", "optimize"))
    p.add_argument("--alpha", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--x0", type=float)

    p = sub.add_parser("oval", parents=[common])
    p.add_argument("--eta1", type=float, required=True)
    p.add_argument("--eta2", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)

    p = sub.add_parser("rotsym", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta", type=float)
    p.add_argument("--nonconnected", action="store_true")
    p.add_argument("--balance", action="store_true", help="solve theta from the area balance")

    p = sub.add_parser("stadium", parents=[common])
    p.add_argument("action", choices=("eval", "optimize"))
    p.add_argument("--t", type=float, help="aspect ratio half-length / cap radius")

    p = sub.add_parser("scan", parents=[common])
    p.add_argument("--lemma", required=True, help="lemma id such as L413, or 'all'")

    p = sub.add_parser("soak", parents=[common])
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--kinds", help="comma separated shape kinds")

    p = sub.add_parser("render", parents=[common])
    p.add_argument("--shape", required=True)
    p.add_argument("--no-balls", action="store_true")
    return parser


def _inputs_hash(argv, args):
    h = hashlib.sha256()
    h.update("\0".join(argv).encode())
    shape = getattr(args, "shape", None)
    if shape:
        try:
            with open(shape, "rb") as fh:
                h.update(fh.read())
        except OSError:
            pass
    return h.hexdigest()


def run(argv=None, stdout=None, stderr=None):
    """Run one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    from .families.report import ConfigurationError

    t0 = time.perf_counter()
    try:
        rows, outputs = _HANDLERS[args.verb](args)
    except (_UsageError, ConfigurationError) as exc:
        print(f"qisop: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except (DomainError, QisopError, NearBallError) as exc:
        print(f"qisop: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_DOMAIN
    except Exception as exc:  # noqa: BLE001 - last-resort diagnostic
        print(f"qisop: internal error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INTERNAL
    wall = time.perf_counter() - t0
    if args.json:
        doc = {
            "tool": "qisop",
            "version": __version__,
            "verb": args.verb,
            "inputs_hash": _inputs_hash(argv, args),
            "seed": args.seed,
            "outputs": _num(outputs),
        }
        if args.timing:
            doc["wall_time"] = wall
        json.dump(doc, stdout, indent=1, sort_keys=True)
        stdout.write("\n")
    else:
        stdout.write(_table(rows) + "\n")
    failed = args.verb in ("scan", "soak") and not outputs.get("passed", True)
    return EXIT_INTERNAL if failed else EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
