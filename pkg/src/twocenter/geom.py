"""Planar primitives: points, disks, circumcircles, minimum enclosing disks,
rotation frames, and farthest pairs.

All boundary decisions use a single relative tolerance ``EPS``: a point is
inside a disk when its distance to the center is at most ``r * (1 + EPS)``.
Everything here is a pure function over immutable values.
"""

from __future__ import annotations

import math
import random
from typing import NamedTuple, Optional, Sequence

from .errors import CollinearError, DegenerateError, EmptyInputError

EPS = 1e-9
# slack used *inside* incremental MEB updates, far below EPS so the result
# radius is still exact to ~1e-12 relative
_MEB_SLACK = 1e-14


class Point(NamedTuple):
    x: float
    y: float


class Disk(NamedTuple):
    center: Point
    radius: float

    def contains(self, p: Point, eps: float = EPS) -> bool:
        r = self.radius * (1.0 + eps)
        dx = p.x - self.center.x
        dy = p.y - self.center.y
        return dx * dx + dy * dy <= r * r


class RotationFrame(NamedTuple):
    angle: float
    index: int


class FarthestPairResult(NamedTuple):
    a: Point
    b: Point
    distance: float
    midpoint: Point


def dist(p: Point, q: Point) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def dist2(p: Point, q: Point) -> float:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def cross(o: Point, a: Point, b: Point) -> float:
    """Signed area of the parallelogram (a-o, b-o); >0 means left turn."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def midpoint(p: Point, q: Point) -> Point:
    return Point((p.x + q.x) * 0.5, (p.y + q.y) * 0.5)


def rotation_frames(count: int) -> list[RotationFrame]:
    """``count`` frames spanning 180 degrees; frame k rotates by k*pi/count."""
    return [RotationFrame(k * math.pi / count, k) for k in range(count)]


def rotate_frame(points: Sequence[Point], frame: RotationFrame) -> list[Point]:
    """Rotate every point by -frame.angle about the origin (axis rotation)."""
    c = math.cos(frame.angle)
    s = math.sin(frame.angle)
    return [Point(p.x * c + p.y * s, -p.x * s + p.y * c) for p in points]


def unrotate_point(p: Point, frame: RotationFrame) -> Point:
    """Inverse of :func:`rotate_frame` for a single point."""
    c = math.cos(frame.angle)
    s = math.sin(frame.angle)
    return Point(p.x * c - p.y * s, p.x * s + p.y * c)


def circumcircle(p: Point, q: Point, s: Point) -> Disk:
    """Disk whose boundary passes through three non-collinear points."""
    scale = max(dist(p, q), dist(q, s), dist(p, s))
    if scale == 0.0:
        raise CollinearError("coincident points have no circumcircle")
    area2 = cross(p, q, s)
    if abs(area2) <= EPS * scale * scale:
        raise CollinearError(f"collinear points within tolerance: {p}, {q}, {s}")
    d = 2.0 * (p.x * (q.y - s.y) + q.x * (s.y - p.y) + s.x * (p.y - q.y))
    p2 = p.x * p.x + p.y * p.y
    q2 = q.x * q.x + q.y * q.y
    s2 = s.x * s.x + s.y * s.y
    ux = (p2 * (q.y - s.y) + q2 * (s.y - p.y) + s2 * (p.y - q.y)) / d
    uy = (p2 * (s.x - q.x) + q2 * (p.x - s.x) + s2 * (q.x - p.x)) / d
    center = Point(ux, uy)
    return Disk(center, dist(center, p))


def disk_centers_through(p: Point, q: Point, r: float) -> list[Point]:
    """Centers of radius-r disks whose boundary passes through p and q.

    Two centers when |pq| < 2r, one (the midpoint) when |pq| = 2r within
    tolerance, none when |pq| > 2r.  The first returned center lies to the
    left of the directed segment p->q.
    """
    if p == q:
        raise DegenerateError("coincident points")
    d = dist(p, q)
    if d > 2.0 * r * (1.0 + EPS):
        return []
    mid = midpoint(p, q)
    if d >= 2.0 * r * (1.0 - EPS):
        return [mid]
    h = math.sqrt(max(r * r - 0.25 * d * d, 0.0))
    # unit normal pointing left of p->q
    nx = -(q.y - p.y) / d
    ny = (q.x - p.x) / d
    return [Point(mid.x + h * nx, mid.y + h * ny), Point(mid.x - h * nx, mid.y - h * ny)]


def supporting_center(p: Point, q: Point, r: float) -> Point:
    """Center at distance r from p and q on the left of p->q, clamped.

    Used for hull arcs where |pq| may exceed 2r by rounding noise only.
    """
    if p == q:
        raise DegenerateError("coincident points")
    d = dist(p, q)
    mid = midpoint(p, q)
    h2 = r * r - 0.25 * d * d
    if h2 <= 0.0:
        return mid
    h = math.sqrt(h2)
    nx = -(q.y - p.y) / d
    ny = (q.x - p.x) / d
    return Point(mid.x + h * nx, mid.y + h * ny)


# ---------------------------------------------------------------------------
# minimum enclosing disk (randomized incremental, seeded by input length)


def _circle_two(p: Point, q: Point) -> tuple[float, float, float]:
    cx = (p.x + q.x) * 0.5
    cy = (p.y + q.y) * 0.5
    r = max(math.hypot(p.x - cx, p.y - cy), math.hypot(q.x - cx, q.y - cy))
    return cx, cy, r


def _circle_three(a: Point, b: Point, c: Point) -> Optional[tuple[float, float, float]]:
    ox = (min(a.x, b.x, c.x) + max(a.x, b.x, c.x)) * 0.5
    oy = (min(a.y, b.y, c.y) + max(a.y, b.y, c.y)) * 0.5
    ax = a.x - ox
    ay = a.y - oy
    bx = b.x - ox
    by = b.y - oy
    cx = c.x - ox
    cy = c.y - oy
    d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
    if d == 0.0:
        return None
    x = ox + ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    y = oy + ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    r = max(math.hypot(a.x - x, a.y - y), math.hypot(b.x - x, b.y - y), math.hypot(c.x - x, c.y - y))
    return x, y, r


def _grow2(r: float) -> float:
    rr = r * (1.0 + _MEB_SLACK)
    return rr * rr


def _meb_two_fixed(pts: Sequence[Point], n: int, p: Point, q: Point) -> tuple[float, float, float]:
    # smallest circle through p and q containing pts[:n]
    cx, cy, r = _circle_two(p, q)
    rr2 = _grow2(r)
    left: Optional[tuple[float, float, float]] = None
    right: Optional[tuple[float, float, float]] = None
    px, py = p
    qx, qy = q
    ex = qx - px
    ey = qy - py
    for k in range(n):
        s = pts[k]
        dx = s.x - cx
        dy = s.y - cy
        if dx * dx + dy * dy <= rr2:
            continue
        crs = ex * (s.y - py) - ey * (s.x - px)
        c3 = _circle_three(p, q, s)
        if c3 is None:
            continue
        if crs > 0.0 and (left is None or ex * (c3[1] - py) - ey * (c3[0] - px) > ex * (left[1] - py) - ey * (left[0] - px)):
            left = c3
        elif crs < 0.0 and (right is None or ex * (c3[1] - py) - ey * (c3[0] - px) < ex * (right[1] - py) - ey * (right[0] - px)):
            right = c3
    if left is None and right is None:
        return cx, cy, r
    if left is None:
        return right  # type: ignore[return-value]
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _meb_one_fixed(pts: Sequence[Point], n: int, p: Point) -> tuple[float, float, float]:
    cx, cy, r = p.x, p.y, 0.0
    rr2 = 0.0
    for k in range(n):
        q = pts[k]
        dx = q.x - cx
        dy = q.y - cy
        if dx * dx + dy * dy > rr2:
            if r == 0.0:
                cx, cy, r = _circle_two(p, q)
            else:
                cx, cy, r = _meb_two_fixed(pts, k, p, q)
            rr2 = _grow2(r)
    return cx, cy, r


def _meb_core(pts: list[Point], limit: Optional[float]) -> Optional[tuple[float, float, float]]:
    """Shared incremental MEB; aborts early (returns None) when the radius
    provably exceeds ``limit``."""
    cx, cy, r = pts[0].x, pts[0].y, 0.0
    rr2 = 0.0
    for i in range(1, len(pts)):
        p = pts[i]
        dx = p.x - cx
        dy = p.y - cy
        if dx * dx + dy * dy > rr2:
            cx, cy, r = _meb_one_fixed(pts, i, p)
            if limit is not None and r > limit:
                return None
            rr2 = _grow2(r)
    return cx, cy, r


def _shuffled(points: Sequence[Point]) -> list[Point]:
    pts = list(points)
    if len(pts) > 16:  # tiny inputs gain nothing from the randomized order
        rng = random.Random(len(pts))
        rng.shuffle(pts)
    return pts


_NP_MEB_CUTOVER = 2048


def meb(points: Sequence[Point]) -> Disk:
    """Smallest disk containing all points (expected linear time)."""
    if not points:
        raise EmptyInputError("meb of empty set")
    if len(points) > _NP_MEB_CUTOVER:
        import numpy as np

        got = _np_meb_core(np.asarray(points, dtype=float), None)
        assert got is not None
        return Disk(Point(got[0], got[1]), got[2])
    cx, cy, r = _meb_core(_shuffled(points), None)  # type: ignore[misc]
    return Disk(Point(cx, cy), r)


def meb_within(points: Sequence[Point], r: float) -> Optional[Point]:
    """Center of a radius-<=r disk containing the points, or None.

    Equivalent to ``meb(points).radius <= r*(1+EPS)`` but aborts as soon as
    the growing radius exceeds the bound.
    """
    if not points:
        raise EmptyInputError("meb of empty set")
    if len(points) > _NP_MEB_CUTOVER:
        import numpy as np

        got = _np_meb_core(np.asarray(points, dtype=float), r * (1.0 + EPS))
        if got is None:
            return None
        return Point(got[0], got[1])
    got = _meb_core(_shuffled(points), r * (1.0 + EPS))
    if got is None:
        return None
    return Point(got[0], got[1])


# -- vectorized variant for large arrays -------------------------------------


def meb_within_arr(arr, r: float) -> Optional[tuple[float, float]]:
    """Array-based meb_within; arr is an (n, 2) float array."""
    import numpy as np

    if len(arr) == 0:
        raise EmptyInputError("meb of empty set")
    got = _np_meb_core(np.asarray(arr, dtype=float), r * (1.0 + EPS))
    if got is None:
        return None
    return got[0], got[1]


def _np_first_violator(A, i: int, cx: float, cy: float, rr2: float) -> int:
    import numpy as np

    n = len(A)
    while i < n:
        j = min(i + 2048, n)
        dx = A[i:j, 0] - cx
        dy = A[i:j, 1] - cy
        bad = np.nonzero(dx * dx + dy * dy > rr2)[0]
        if len(bad):
            return i + int(bad[0])
        i = j
    return -1


def _np_two_fixed(P, px: float, py: float, qx: float, qy: float):
    """Vectorized smallest circle through (p, q) containing the rows of P."""
    import numpy as np

    cx, cy, r = _circle_two(Point(px, py), Point(qx, qy))
    if len(P) == 0:
        return cx, cy, r
    rr2 = _grow2(r)
    dx = P[:, 0] - cx
    dy = P[:, 1] - cy
    out = dx * dx + dy * dy > rr2
    if not out.any():
        return cx, cy, r
    S = P[out]
    ex = qx - px
    ey = qy - py
    crs = ex * (S[:, 1] - py) - ey * (S[:, 0] - px)
    # circumcenters of (p, q, s) for every candidate s
    ox = (min(px, qx) + max(px, qx)) * 0.5
    oy = (min(py, qy) + max(py, qy)) * 0.5
    ax, ay = px - ox, py - oy
    bx, by = qx - ox, qy - oy
    sx = S[:, 0] - ox
    sy = S[:, 1] - oy
    d = (ax * (by - sy) + bx * (sy - ay) + sx * (ay - by)) * 2.0
    ok = d != 0.0
    a2 = ax * ax + ay * ay
    b2 = bx * bx + by * by
    s2 = sx * sx + sy * sy
    with np.errstate(divide="ignore", invalid="ignore"):
        ccx = ox + (a2 * (by - sy) + b2 * (sy - ay) + s2 * (ay - by)) / d
        ccy = oy + (a2 * (sx - bx) + b2 * (ax - sx) + s2 * (bx - ax)) / d
    cc_cross = ex * (ccy - py) - ey * (ccx - px)
    left = ok & (crs > 0.0)
    right = ok & (crs < 0.0)
    best = None
    if left.any():
        k = int(np.nanargmax(np.where(left, cc_cross, -np.inf)))
        lx, ly = float(ccx[k]), float(ccy[k])
        lr = max(
            math.hypot(px - lx, py - ly),
            math.hypot(qx - lx, qy - ly),
            float(np.hypot(S[k, 0] - lx, S[k, 1] - ly)),
        )
        best = (lx, ly, lr)
    if right.any():
        k = int(np.nanargmin(np.where(right, cc_cross, np.inf)))
        rx, ry = float(ccx[k]), float(ccy[k])
        rrad = max(
            math.hypot(px - rx, py - ry),
            math.hypot(qx - rx, qy - ry),
            float(np.hypot(S[k, 0] - rx, S[k, 1] - ry)),
        )
        if best is None or rrad < best[2]:
            best = (rx, ry, rrad)
    if best is None:
        return cx, cy, r
    return best


def _np_one_fixed(P, px: float, py: float):
    cx, cy, r = px, py, 0.0
    rr2 = 0.0
    i = 0
    while True:
        j = _np_first_violator(P, i, cx, cy, rr2)
        if j < 0:
            return cx, cy, r
        qx = float(P[j, 0])
        qy = float(P[j, 1])
        if r == 0.0:
            cx, cy, r = _circle_two(Point(px, py), Point(qx, qy))
        else:
            cx, cy, r = _np_two_fixed(P[:j], px, py, qx, qy)
        rr2 = _grow2(r)
        i = j + 1


def _np_meb_core(A, limit: Optional[float]):
    import numpy as np

    rng = np.random.default_rng(len(A))
    A = A[rng.permutation(len(A))]
    cx, cy, r = float(A[0, 0]), float(A[0, 1]), 0.0
    rr2 = 0.0
    i = 1
    while True:
        j = _np_first_violator(A, i, cx, cy, rr2)
        if j < 0:
            return cx, cy, r
        cx, cy, r = _np_one_fixed(A[:j], float(A[j, 0]), float(A[j, 1]))
        if limit is not None and r > limit:
            return None
        rr2 = _grow2(r)
        i = j + 1


# ---------------------------------------------------------------------------


def convex_hull(points: Sequence[Point]) -> list[Point]:
    """Strict convex hull in ccw order (collinear interior points dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


_FP_SCAN_LIMIT = 4096


def farthest_pair_bichromatic(first: Sequence[Point], second: Sequence[Point]) -> FarthestPairResult:
    """argmax |ab| over first x second; ties broken by lexicographic (a, b).

    Quadratic scan; when the product of sizes is large the scan runs over
    convex hull vertices only (every maximizing pair is extreme in both sets).
    """
    if not first or not second:
        raise EmptyInputError("farthest pair needs two nonempty sets")
    a_pts: Sequence[Point] = first
    b_pts: Sequence[Point] = second
    if len(first) * len(second) > _FP_SCAN_LIMIT:
        a_pts = convex_hull(first)
        b_pts = convex_hull(second)
    best_d2 = -1.0
    best: tuple[Point, Point] = (a_pts[0], b_pts[0])
    for a in a_pts:
        for b in b_pts:
            d2 = dist2(a, b)
            if d2 > best_d2 or (d2 == best_d2 and (a, b) < best):
                best_d2 = d2
                best = (a, b)
    a, b = best
    return FarthestPairResult(a, b, math.sqrt(best_d2), midpoint(a, b))
