"""Static SVG rendering of points, hulls, coverages, and witness disks."""

from __future__ import annotations

import math
from typing import Optional, Sequence

from .geom import Disk, Point
from .hull import Arc, CircularHull, Coverage

_SIZE = 1000.0
_MARGIN = 60.0


class _Frame:
    def __init__(self, xs: list[float], ys: list[float]):
        self.minx = min(xs)
        self.maxx = max(xs)
        self.miny = min(ys)
        self.maxy = max(ys)
        w = max(self.maxx - self.minx, 1e-9)
        h = max(self.maxy - self.miny, 1e-9)
        self.scale = (_SIZE - 2 * _MARGIN) / max(w, h)

    def map(self, p: Point) -> tuple[float, float]:
        x = _MARGIN + (p.x - self.minx) * self.scale
        y = _SIZE - _MARGIN - (p.y - self.miny) * self.scale
        return x, y


def arc_path(arcs: Sequence[Arc], frame: _Frame) -> str:
    """SVG path data for a closed sequence of ccw arcs (y axis flipped)."""
    if not arcs:
        return ""
    start = arcs[0].start_point()
    x0, y0 = frame.map(start)
    parts = [f"M {x0:.2f} {y0:.2f}"]
    for arc in arcs:
        rad = arc.radius * frame.scale
        segs = max(1, int(math.ceil(arc.extent / (0.5 * math.pi))))
        for s in range(1, segs + 1):
            ang = arc.start + arc.extent * s / segs
            ex, ey = frame.map(arc.point_at(ang))
            # math-ccw arcs read clockwise after the y flip: sweep flag 1
            parts.append(f"A {rad:.2f} {rad:.2f} 0 0 1 {ex:.2f} {ey:.2f}")
    parts.append("Z")
    return " ".join(parts)


def render_svg(
    path: str,
    points: Sequence[Point],
    hulls: Sequence[CircularHull] = (),
    coverages: Sequence[Coverage] = (),
    disks: Sequence[Disk] = (),
) -> None:
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    for d in disks:
        xs.extend([d.center.x - d.radius, d.center.x + d.radius])
        ys.extend([d.center.y - d.radius, d.center.y + d.radius])
    for cov in coverages:
        for a in cov.arcs:
            xs.extend([a.center.x - a.radius, a.center.x + a.radius])
            ys.extend([a.center.y - a.radius, a.center.y + a.radius])
    if not xs:
        xs = [0.0, 1.0]
        ys = [0.0, 1.0]
    frame = _Frame(xs, ys)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE:.0f}" '
        f'height="{_SIZE:.0f}" viewBox="0 0 {_SIZE:.0f} {_SIZE:.0f}">',
        f'<rect width="{_SIZE:.0f}" height="{_SIZE:.0f}" fill="white"/>',
    ]
    for d in disks:
        cx, cy = frame.map(d.center)
        out.append(
            f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{d.radius * frame.scale:.2f}" '
            'fill="steelblue" fill-opacity="0.15" stroke="steelblue"/>'
        )
    for cov in coverages:
        d_attr = arc_path(cov.arcs, frame)
        if d_attr:
            out.append(
                f'<path d="{d_attr}" fill="none" stroke="darkorange" '
                'stroke-dasharray="6 4" stroke-width="1.5"/>'
            )
    for hull in hulls:
        if len(hull.vertices) == 1:
            cx, cy = frame.map(hull.vertices[0])
            out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="seagreen"/>')
            continue
        d_attr = arc_path(hull.arcs, frame)
        if d_attr:
            out.append(
                f'<path d="{d_attr}" fill="seagreen" fill-opacity="0.12" '
                'stroke="seagreen" stroke-width="1.5"/>'
            )
    for p in points:
        cx, cy = frame.map(p)
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="2.5" fill="black"/>')
    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out) + "\n")
