"""r-circular hulls and r-coverages.

The r-circular hull of Q is the intersection of all radius-r disks containing
Q; it exists iff Q fits in one radius-r disk.  Its boundary is a cyclic
sequence of radius-r arcs meeting at points of Q (the hull vertices).  The
r-coverage is the union of all radius-r disks containing Q; its boundary
alternates radius-r and radius-2r arcs.

Membership tests go through the dual *center region* C = set of centers of
radius-r disks containing Q.  C is the intersection of the radius-r disks
around the hull vertices; its boundary arcs are centered at hull vertices and
its corners are the supporting centers of the hull arcs.  Then

    z in hull      <=>  max_{c in C} |zc| <= r
    z in coverage  <=>  dist(z, C) <= r
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DegenerateError,
    EmptyInputError,
    NoCoverageError,
    RadiusMismatchError,
    UnsortedInputError,
)
from .geom import EPS, Disk, Point, convex_hull, dist, meb, meb_within, supporting_center

TWO_PI = 2.0 * math.pi
# a computed ccw arc extent this close to 2*pi is fp noise on a zero extent
_WRAP_CLAMP = 1e-7
# pop a vertex only when it is strictly inside the neighbor disk; keeps
# boundary-tied vertices alive at degenerate radii (r equal to an meb radius)
_POP_MARGIN = 1e-12


class Arc:
    """Circular arc traversed counterclockwise around its center."""

    __slots__ = ("center", "radius", "start", "extent", "orientation")

    def __init__(self, center: Point, radius: float, start: float, extent: float):
        self.center = center
        self.radius = radius
        self.start = start
        self.extent = extent
        self.orientation = "ccw"

    @property
    def end(self) -> float:
        return self.start + self.extent

    def point_at(self, angle: float) -> Point:
        return Point(
            self.center.x + self.radius * math.cos(angle),
            self.center.y + self.radius * math.sin(angle),
        )

    def start_point(self) -> Point:
        return self.point_at(self.start)

    def end_point(self) -> Point:
        return self.point_at(self.end)

    def sample(self, count: int) -> list[Point]:
        step = self.extent / max(count - 1, 1)
        return [self.point_at(self.start + k * step) for k in range(count)]

    def __repr__(self) -> str:
        return f"Arc(c={self.center}, r={self.radius:.6g}, start={self.start:.6g}, extent={self.extent:.6g})"


def _ccw_extent(a: float, b: float) -> float:
    ext = (b - a) % TWO_PI
    if ext > TWO_PI - _WRAP_CLAMP:
        ext = 0.0
    return ext


def _angle_in(a: float, extent: float, phi: float) -> bool:
    return (phi - a) % TWO_PI <= extent


class EmptyHull:
    """Sentinel hull of the empty set: contains everything, merge identity."""

    radius = None
    vertices: tuple = ()
    arcs: tuple = ()
    degenerate = False

    def contains(self, z: Point, eps: float = EPS) -> bool:
        return True

    def __repr__(self) -> str:
        return "EmptyHull()"


EMPTY_HULL = EmptyHull()


class CircularHull:
    """Immutable r-circular hull: vertex cycle plus boundary arcs."""

    __slots__ = ("radius", "vertices", "arcs", "degenerate", "_centers", "_carcs")

    def __init__(self, radius: float, vertices: Sequence[Point]):
        verts = list(vertices)
        if not verts:
            raise EmptyInputError("hull needs at least one vertex")
        # canonical rotation: cycle starts at the lexicographically smallest vertex
        k = min(range(len(verts)), key=lambda i: verts[i])
        verts = verts[k:] + verts[:k]
        self.radius = radius
        self.vertices = tuple(verts)
        m = len(verts)
        centers: list[Point] = []
        arcs: list[Arc] = []
        if m >= 2:
            for i in range(m):
                u = verts[i]
                w = verts[(i + 1) % m]
                o = supporting_center(u, w, radius)
                a = math.atan2(u.y - o.y, u.x - o.x)
                b = math.atan2(w.y - o.y, w.x - o.x)
                ext = (b - a) % TWO_PI
                if m == 2 and ext == 0.0:
                    ext = math.pi  # diameter pair: two half circles
                centers.append(o)
                arcs.append(Arc(o, radius, a, ext))
        self._centers = tuple(centers)
        self.arcs = tuple(arcs)
        # C-arc of vertex i: ccw part of the center-region boundary centered
        # at the vertex, spanning from the previous supporting center to the next
        carcs: list[tuple[float, float]] = []
        if m == 1:
            carcs.append((-math.pi, TWO_PI))
        else:
            for i in range(m):
                q = verts[i]
                o_prev = centers[(i - 1) % m]
                o_next = centers[i]
                a = math.atan2(o_prev.y - q.y, o_prev.x - q.x)
                b = math.atan2(o_next.y - q.y, o_next.x - q.x)
                carcs.append((a, _ccw_extent(a, b)))
        self._carcs = tuple(carcs)
        self.degenerate = m == 1 or (
            m == 2 and dist(verts[0], verts[1]) >= 2.0 * radius * (1.0 - EPS)
        )

    # -- center region ------------------------------------------------------

    def center_region_arcs(self) -> list[Arc]:
        """Boundary arcs of the center region C (centered at hull vertices)."""
        return [
            Arc(v, self.radius, a, ext)
            for v, (a, ext) in zip(self.vertices, self._carcs)
        ]

    def max_center_distance(self, z: Point) -> float:
        """max over c in C of |zc|; the hull contains z iff this is <= r."""
        r = self.radius
        best = 0.0
        for o in self._centers:
            d = math.hypot(z.x - o.x, z.y - o.y)
            if d > best:
                best = d
        for q, (a, ext) in zip(self.vertices, self._carcs):
            d = math.hypot(q.x - z.x, q.y - z.y)
            if d == 0.0:
                cand = r
            else:
                phi = math.atan2(q.y - z.y, q.x - z.x)
                if not _angle_in(a, ext, phi):
                    continue
                cand = d + r
            if cand > best:
                best = cand
        return best

    def center_distance(self, z: Point) -> float:
        """dist(z, C); z lies in the r-coverage iff this is <= r."""
        r = self.radius
        zx, zy = z.x, z.y
        rr = r * (1.0 + EPS)
        rr2 = rr * rr
        inside = True
        for q in self.vertices:
            dx = zx - q.x
            dy = zy - q.y
            if dx * dx + dy * dy > rr2:
                inside = False
                break
        if inside:
            return 0.0
        best2 = math.inf
        for o in self._centers:
            dx = zx - o.x
            dy = zy - o.y
            d2 = dx * dx + dy * dy
            if d2 < best2:
                best2 = d2
        best = math.sqrt(best2)
        for q, (a, ext) in zip(self.vertices, self._carcs):
            if ext == 0.0:
                continue
            phi = math.atan2(zy - q.y, zx - q.x)
            if _angle_in(a, ext, phi):
                dx = zx - q.x
                dy = zy - q.y
                d = abs(math.sqrt(dx * dx + dy * dy) - r)
                if d < best:
                    best = d
        return best

    def contains(self, z: Point, eps: float = EPS) -> bool:
        return self.max_center_distance(z) <= self.radius * (1.0 + eps)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CircularHull)
            and self.radius == other.radius
            and self.vertices == other.vertices
        )

    def __hash__(self) -> int:
        return hash((self.radius, self.vertices))

    def __repr__(self) -> str:
        return f"CircularHull(r={self.radius:.6g}, vertices={list(self.vertices)})"


def _strictly_redundant(u: Point, v: Point, w: Point, r: float) -> bool:
    """True when v cannot be a hull vertex between cyclic neighbors u and w."""
    if u == w:
        return v == u
    c = supporting_center(u, w, r)
    return dist(v, c) <= r * (1.0 - _POP_MARGIN)


def _reduce_cycle(verts: list[Point], r: float) -> list[Point]:
    """Drop convex-hull vertices that are not r-circular-hull vertices."""
    m = len(verts)
    if m <= 2:
        return verts
    nxt = list(range(1, m)) + [0]
    prv = [m - 1] + list(range(m - 1))
    alive = [True] * m
    count = m
    from collections import deque

    queue = deque(range(m))
    queued = [True] * m
    while queue and count > 2:
        i = queue.popleft()
        queued[i] = False
        if not alive[i] or count <= 2:
            continue
        u, w = prv[i], nxt[i]
        if _strictly_redundant(verts[u], verts[i], verts[w], r):
            alive[i] = False
            count -= 1
            nxt[u] = w
            prv[w] = u
            for j in (u, w):
                if not queued[j]:
                    queue.append(j)
                    queued[j] = True
    start = next(i for i in range(m) if alive[i])
    out = [verts[start]]
    j = nxt[start]
    while j != start:
        out.append(verts[j])
        j = nxt[j]
    return out


def build_hull(points: Sequence[Point], r: float) -> Optional[CircularHull] | EmptyHull:
    """Compute the r-circular hull of x-sorted points; None when it does not exist."""
    pts = list(points)
    if not pts:
        return EMPTY_HULL
    for a, b in zip(pts, pts[1:]):
        if (a.x, a.y) > (b.x, b.y):
            raise UnsortedInputError("points must be sorted by x, ties by y")
    uniq = [pts[0]]
    for p in pts[1:]:
        if p != uniq[-1]:
            uniq.append(p)
    if meb_within(uniq, r) is None:
        return None
    if len(uniq) == 1:
        return CircularHull(r, uniq)
    cvx = convex_hull(uniq)
    if len(cvx) == 1:
        return CircularHull(r, cvx)
    cycle = _reduce_cycle(cvx, r)
    return CircularHull(r, cycle)


def hull_contains(hull: CircularHull | EmptyHull, z: Point, eps: float = EPS) -> bool:
    return hull.contains(z, eps)


def hull_from_vertices(vertices: Iterable[Point], r: float) -> Optional[CircularHull] | EmptyHull:
    """Hull of an unsorted vertex collection (sorts, then builds)."""
    return build_hull(sorted(set(vertices)), r)


# ---------------------------------------------------------------------------
# ordered insertion builder


class HullBuilder:
    """Incremental r-circular hull under ccw (or cw) angular insertion order.

    The current hull vertex cycle is kept in cyclic order.  A new point is
    attached at the boundary arc it violates (found by a ring search starting
    at the previous attachment), popping covered vertices on both sides; a
    point violating no arc is interior and changes nothing.  Every vertex is
    popped at most once, so total pops never exceed total insertions.  Once
    the inserted points stop fitting in a radius-r disk the builder is dead
    for good.

    Each insertion records an op, so persistent mirrors can replay structure
    changes without redoing geometry:
        ("noop",) | ("push", q) | ("attach", slot, a, b, q) | ("dead",)
    where "attach" means: rotate the cycle so the slot arc seam is at the
    ends, drop a vertices from the front and b from the back, append q.
    """

    def __init__(self, anchor: Point, r: float, orientation: int = 1):
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 (ccw) or -1 (cw)")
        self.anchor = anchor
        self.r = r
        self.orientation = orientation
        self.items: list[Point] = []  # mirrored coordinates, ccw cycle order
        self.alive = True
        self.inserts = 0
        self.pops = 0
        self.last_op: tuple = ("noop",)
        self._cert: Optional[Point] = None
        self._prev_raw: Optional[float] = None
        self._span = 0.0
        self._hint = 0

    # points are mirrored across the x-axis for cw order so the internal
    # cycle is always ccw
    def _tf(self, p: Point) -> Point:
        return p if self.orientation == 1 else Point(p.x, -p.y)

    def _check_order(self, p: Point):
        raw = math.atan2(
            self.orientation * (p.y - self.anchor.y), p.x - self.anchor.x
        )
        if self._prev_raw is None:
            self._prev_raw = raw
            return
        step = (raw - self._prev_raw) % TWO_PI
        if step > TWO_PI - 1e-9:
            step = 0.0
        self._span += step
        if self._span > TWO_PI + 1e-9:
            from .errors import OrderViolationError

            raise OrderViolationError(
                f"insertion order wrapped past the start around {self.anchor}"
            )
        self._prev_raw = raw

    def vertices(self) -> tuple[Point, ...]:
        if self.orientation == 1:
            return tuple(self.items)
        return tuple(Point(p.x, -p.y) for p in self.items)

    def insert(self, p: Point) -> bool:
        """Insert the next point in angular order; returns liveness."""
        self._check_order(p)
        self.inserts += 1
        if not self.alive:
            self.last_op = ("dead",)
            return False
        r = self.r
        q = self._tf(p)
        items = self.items
        n = len(items)
        if n == 0:
            items.append(q)
            self._cert = q
            self.last_op = ("push", q)
            return True
        # death check: does the grown set still fit in a radius-r disk?
        c = self._cert
        if c is None or math.hypot(q.x - c.x, q.y - c.y) > r * (1.0 + EPS):
            c2 = meb_within(items + [q], r)
            if c2 is None:
                self.alive = False
                self.last_op = ("dead",)
                return False
            self._cert = c2
        if n == 1:
            if q != items[0]:
                items.append(q)
                self.last_op = ("push", q)
            else:
                self.last_op = ("noop",)
            return True
        # ring search for an attachment arc, starting at the hint: q must lie
        # on the outer side of the chord (right of u->w for a ccw cycle) and
        # outside the arc's supporting disk
        slot = -1
        start = self._hint
        qx, qy = q.x, q.y
        for t in range(n):
            k = start + t
            if k >= n:
                k -= n
            u = items[k]
            w = items[k + 1] if k + 1 < n else items[0]
            ex = w.x - u.x
            ey = w.y - u.y
            px = qx - u.x
            py = qy - u.y
            cxv = ex * py - ey * px
            e2 = ex * ex + ey * ey
            p2 = px * px + py * py
            if cxv * cxv >= 1e-24 * e2 * p2 and cxv > 0.0:
                continue  # q clearly left of the chord
            # supporting center on the left of u->w (clamped to the midpoint)
            d = math.sqrt(e2)
            h2 = r * r - 0.25 * e2
            if h2 <= 0.0 or d == 0.0:
                ox = u.x + 0.5 * ex
                oy = u.y + 0.5 * ey
            else:
                h = math.sqrt(h2) / d
                ox = u.x + 0.5 * ex - h * ey
                oy = u.y + 0.5 * ey + h * ex
            dq = math.hypot(qx - ox, qy - oy)
            if dq > r * (1.0 - _POP_MARGIN):
                slot = k
                break
        if slot < 0:
            self.last_op = ("noop",)  # interior point
            return True
        lst = items[slot + 1 :] + items[: slot + 1]
        a = 0
        while len(lst) >= 2 and _strictly_redundant(q, lst[0], lst[1], r):
            lst.pop(0)
            a += 1
        b = 0
        while len(lst) >= 2 and _strictly_redundant(lst[-2], lst[-1], q, r):
            lst.pop()
            b += 1
        lst.append(q)
        self.pops += a + b
        self.items = lst
        self._hint = len(lst) - 1
        self.last_op = ("attach", slot, a, b, q)
        return True

    def hull(self) -> Optional[CircularHull] | EmptyHull:
        if not self.alive:
            return None
        verts = self.vertices()
        if not verts:
            return EMPTY_HULL
        return hull_from_vertices(verts, self.r)


def insert_ordered(builder: HullBuilder, p: Point) -> HullBuilder:
    """Insert p (next in angular order) into the builder; dead state is sticky."""
    builder.insert(p)
    return builder


# ---------------------------------------------------------------------------
# tangents and merging


@dataclass
class TangentResult:
    kind: str  # "bridges" | "a_contains_b" | "b_contains_a" | "union_nonexistent"
    bridges: Optional[tuple[tuple[Point, Point], tuple[Point, Point]]] = None
    merged: Optional[CircularHull] = None


def merge_separated(
    hull_a: CircularHull | EmptyHull,
    hull_b: CircularHull | EmptyHull,
    r: float,
) -> Optional[CircularHull] | EmptyHull:
    """Hull of the union of two hulls' generating sets, or None.

    Existence is decided by the minimum enclosing disk of the combined vertex
    sets, which equals the full-set MEB because every MEB support point is a
    hull vertex.
    """
    if isinstance(hull_a, EmptyHull):
        return hull_b
    if isinstance(hull_b, EmptyHull):
        return hull_a
    if hull_a.radius != r or hull_b.radius != r:
        raise RadiusMismatchError(
            f"hull radii {hull_a.radius}, {hull_b.radius} do not match {r}"
        )
    verts = sorted(set(hull_a.vertices) | set(hull_b.vertices))
    if meb_within(verts, r) is None:
        return None
    return build_hull(verts, r)


def tangents(
    hull_a: CircularHull, hull_b: CircularHull
) -> TangentResult:
    """Bridge arcs of the merged hull of two line-separated hulls.

    Returns the two bridge arcs as (vertex of A, vertex of B) pairs, or
    reports containment / nonexistence of the union hull.
    """
    if isinstance(hull_a, EmptyHull) or isinstance(hull_b, EmptyHull):
        raise DegenerateError("tangents need two nonempty hulls")
    if hull_a.radius != hull_b.radius:
        raise RadiusMismatchError(
            f"hull radii differ: {hull_a.radius} vs {hull_b.radius}"
        )
    r = hull_a.radius
    merged = merge_separated(hull_a, hull_b, r)
    if merged is None:
        return TangentResult(kind="union_nonexistent")
    averts = set(hull_a.vertices)
    bverts = set(hull_b.vertices)
    mverts = merged.vertices
    has_a = any(v in averts for v in mverts)
    has_b = any(v in bverts for v in mverts)
    if not has_b:
        return TangentResult(kind="a_contains_b", merged=merged)
    if not has_a:
        return TangentResult(kind="b_contains_a", merged=merged)
    m = len(mverts)
    bridges: list[tuple[Point, Point]] = []
    for i in range(m):
        u = mverts[i]
        w = mverts[(i + 1) % m]
        u_in_a = u in averts
        w_in_a = w in averts
        if u_in_a != w_in_a:
            pair = (u, w) if u_in_a else (w, u)
            bridges.append(pair)
    if len(bridges) != 2:
        raise DegenerateError(
            f"expected 2 bridge arcs between line-separated hulls, got {len(bridges)}"
        )
    return TangentResult(kind="bridges", bridges=(bridges[0], bridges[1]), merged=merged)


# ---------------------------------------------------------------------------
# coverage


@dataclass(frozen=True)
class Coverage:
    radius: float
    arcs: tuple[Arc, ...]
    hull: CircularHull = field(repr=False)

    def contains(self, z: Point, eps: float = EPS) -> bool:
        return self.hull.center_distance(z) <= self.radius * (1.0 + eps)

    def boundary_sample(self, total: int) -> list[Point]:
        """Points along the boundary in traversal order (for convexity checks)."""
        full = sum(a.extent for a in self.arcs)
        out: list[Point] = []
        for a in self.arcs:
            k = max(int(round(total * a.extent / full)), 2) if full > 0 else 2
            step = a.extent / k
            out.extend(a.point_at(a.start + j * step) for j in range(k))
        return out


def build_coverage(hull: CircularHull) -> Coverage:
    """r-coverage from the hull: one 2r-arc per vertex, one r-arc per hull arc."""
    r = hull.radius
    verts = hull.vertices
    m = len(verts)
    if m == 1:
        arc = Arc(verts[0], 2.0 * r, -math.pi, TWO_PI)
        return Coverage(radius=r, arcs=(arc,), hull=hull)
    arcs: list[Arc] = []
    for i in range(m):
        a, ext = hull._carcs[i]
        arcs.append(Arc(verts[i], 2.0 * r, a, ext))
        harc = hull.arcs[i]
        start = math.atan2(
            math.sin(harc.start + math.pi), math.cos(harc.start + math.pi)
        )
        arcs.append(Arc(harc.center, r, start, harc.extent))
    return Coverage(radius=r, arcs=tuple(arcs), hull=hull)


def coverage_contains(points: Sequence[Point], z: Point, r: float) -> bool:
    """True iff some radius-r disk contains points and z.

    By definition this is meb(points + {z}).radius <= r; the geometric test
    against the built coverage agrees (checked in the tests).
    """
    if not points:
        raise EmptyInputError("coverage of empty set")
    if meb_within(points, r) is None:
        raise NoCoverageError(f"point set does not fit in a disk of radius {r}")
    return meb_within(list(points) + [z], r) is not None


def coverage_membership(
    hull: CircularHull, zs: np.ndarray, eps: float = EPS
) -> np.ndarray:
    """Vectorized coverage membership for an (n, 2) array of query points."""
    r = hull.radius
    verts = np.array(hull.vertices, dtype=float)
    zs = np.asarray(zs, dtype=float)
    dv = np.hypot(zs[:, None, 0] - verts[None, :, 0], zs[:, None, 1] - verts[None, :, 1])
    in_c = (dv <= r * (1.0 + eps)).all(axis=1)
    best = np.full(len(zs), np.inf)
    if hull._centers:
        cent = np.array(hull._centers, dtype=float)
        do = np.hypot(zs[:, None, 0] - cent[None, :, 0], zs[:, None, 1] - cent[None, :, 1])
        best = do.min(axis=1)
    starts = np.array([a for a, _ in hull._carcs])
    exts = np.array([e for _, e in hull._carcs])
    phi = np.arctan2(zs[:, None, 1] - verts[None, :, 1], zs[:, None, 0] - verts[None, :, 0])
    in_arc = ((phi - starts[None, :]) % TWO_PI) <= exts[None, :]
    radial = np.where(in_arc, np.abs(dv - r), np.inf)
    best = np.minimum(best, radial.min(axis=1))
    return in_c | (best <= r * (1.0 + eps))
