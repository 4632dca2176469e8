"""Deterministic SVG rendering of arc regions.

Arcs are written as native elliptical-arc path commands, so the picture is
exact at any zoom. The output depends only on the inputs: coordinates are
printed with a fixed number of decimals and no timestamps or ids are
emitted, so identical inputs give byte-identical documents.
"""

from __future__ import annotations

import math

from .geometry import Arc, bounding_box

__all__ = ["render_svg", "write_svg"]

_DECIMALS = 4


def _f(v):
    s = f"{v:.{_DECIMALS}f}"
    if s.startswith("-") and float(s) == 0.0:
        s = s[1:]
    return s


class _Frame:
    """Maps model coordinates (y up) to SVG user units (y down)."""

    def __init__(self, box, size, margin):
        xmin, ymin, xmax, ymax = box
        span = max(xmax - xmin, ymax - ymin, 1e-12)
        self.s = (size - 2 * margin) / span
        self.xmin, self.ymax = xmin, ymax
        self.margin = margin
        self.width = (xmax - xmin) * self.s + 2 * margin
        self.height = (ymax - ymin) * self.s + 2 * margin

    def pt(self, p):
        return (self.margin + (p[0] - self.xmin) * self.s, self.margin + (self.ymax - p[1]) * self.s)

    def len(self, r):
        return r * self.s


def _arc_commands(arc, frame):
    # A counter-clockwise arc in model space stays counter-clockwise on
    # screen after the y flip, which is sweep-flag 0.
    sweep = arc.sweep
    flag = 0 if arc.ccw else 1
    r = _f(frame.len(arc.radius))
    cmds = []
    pieces = 2 if sweep > math.pi else 1  # a single command cannot draw a full circle
    for k in range(1, pieces + 1):
        s = k / pieces
        x, y = frame.pt(arc.point_at(s))
        large = 1 if sweep / pieces > math.pi else 0
        cmds.append(f"A {r} {r} 0 {large} {flag} {_f(x)} {_f(y)}")
    return cmds


def _loop_path(loop, frame):
    x, y = frame.pt(loop[0].start_point)
    cmds = [f"M {_f(x)} {_f(y)}"]
    for edge in loop:
        if isinstance(edge, Arc):
            cmds.extend(_arc_commands(edge, frame))
        else:
            x, y = frame.pt(edge.end_point)
            cmds.append(f"L {_f(x)} {_f(y)}")
    cmds.append("Z")
    return " ".join(cmds)


def render_svg(region, balls=(), points=(), axes=(), size=480, margin=24, title=None):
    """Return an SVG 1.1 document for ``region``.

    Parameters
    ----------
    region : ArcRegion
    balls : sequence of Ball
        Drawn as dashed circles (optimal balls).
    points : sequence of (x, y)
        Marked with small dots (boundary intersection points).
    axes : sequence of ((x, y), angle)
        Dashed lines through a point with the given direction, clipped to
        the picture (symmetry axes).
    """
    xmin, ymin, xmax, ymax = bounding_box(region)
    for b in balls:
        (cx, cy), r = b.center, b.radius
        xmin, ymin = min(xmin, cx - r), min(ymin, cy - r)
        xmax, ymax = max(xmax, cx + r), max(ymax, cy + r)
    pad = 0.05 * max(xmax - xmin, ymax - ymin)
    box = (xmin - pad, ymin - pad, xmax + pad, ymax + pad)
    frame = _Frame(box, size, margin)
    w, h = _f(frame.width), _f(frame.height)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
    ]
    if title:
        esc = str(title).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        out.append(f"<title>{esc}</title>")
    d = " ".join(_loop_path(loop, frame) for loop in region.loops)
    out.append(f'<path d="{d}" fill="#d9d9d9" fill-rule="evenodd" stroke="#000000" stroke-width="1.5"/>')
    for (px, py), angle in axes:
        ux, uy = math.cos(angle), math.sin(angle)
        reach = 2.0 * max(box[2] - box[0], box[3] - box[1])
        x0, y0 = frame.pt((px - reach * ux, py - reach * uy))
        x1, y1 = frame.pt((px + reach * ux, py + reach * uy))
        out.append(
            f'<line x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" y2="{_f(y1)}" '
            'stroke="#808080" stroke-width="0.75" stroke-dasharray="2 3"/>'
        )
    for b in balls:
        cx, cy = frame.pt(b.center)
        out.append(
            f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(frame.len(b.radius))}" fill="none" '
            'stroke="#1f4e9c" stroke-width="1" stroke-dasharray="6 4"/>'
        )
    for p in points:
        x, y = frame.pt(p)
        out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="3" fill="#c0392b"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, document):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(document)
