"""Fixed-radius decision for heavily overlapping disks.

Given a point o expected to lie in both optimal disks, the plane splits at o
into the points above the axis (sorted counterclockwise from the positive
axis direction) and below it (sorted clockwise).  With S[i,j] the union of
the first i upper and first j lower points, the radii A[i,j] of the minimum
enclosing disk of S[i,j] and B[i,j] of its complement are monotone in i and
j, so a single staircase walk over j that tracks the largest i with
A[i,j] <= r decides feasibility.  A and B probes reduce to hull-existence
tests over prefix/suffix hull vertex sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .geom import EPS, Disk, Point, dist, meb, meb_within, convex_hull
from .prefix import PrefixHullIndex, build_prefix_hulls, build_suffix_hulls
from .solution import TwoDiskSolution, solution_from_disks


@dataclass
class AngularSplit:
    """Points split by an axis through o, each side in its walk order."""

    o: Point
    axis: str  # "x" or "y"
    plus: list[Point]  # above the axis, ccw from the positive axis direction
    minus: list[Point]  # below the axis, cw from the positive axis direction
    plus_idx: list[int]
    minus_idx: list[int]


def build_split(points: Sequence[Point], o: Point, axis: str) -> AngularSplit:
    """Split and sort; on-axis points go to the plus side.

    For the y-axis the plane is rotated a quarter turn so the same code
    applies; sorting keys are computed in the rotated frame but the stored
    points stay in input coordinates.
    """
    plus: list[tuple] = []
    minus: list[tuple] = []
    for idx, p in enumerate(points):
        dx = p.x - o.x
        dy = p.y - o.y
        if axis == "y":
            dx, dy = dy, -dx
        ang = math.atan2(dy, dx)
        r2 = dx * dx + dy * dy
        if dy >= 0.0:
            plus.append((ang, r2, idx, p))
        else:
            minus.append((-ang, r2, idx, p))
    plus.sort()
    minus.sort()
    return AngularSplit(
        o=o,
        axis=axis,
        plus=[t[3] for t in plus],
        minus=[t[3] for t in minus],
        plus_idx=[t[2] for t in plus],
        minus_idx=[t[2] for t in minus],
    )


@dataclass
class StaircaseState:
    """Prefix/suffix hull indices for one split at one radius; the suffix
    indices (needed only by B probes) are built on first use."""

    split: AngularSplit
    r: float
    prefix_plus: PrefixHullIndex
    prefix_minus: PrefixHullIndex
    trace: list = field(default_factory=list)  # i(j) along the walk
    _suffix_plus: Optional[PrefixHullIndex] = None
    _suffix_minus: Optional[PrefixHullIndex] = None
    _cert_a: Optional[Point] = None
    _cert_b: Optional[Point] = None

    @classmethod
    def build(cls, split: AngularSplit, r: float) -> "StaircaseState":
        o = split.o
        return cls(
            split=split,
            r=r,
            prefix_plus=build_prefix_hulls(split.plus, r, o, 1),
            prefix_minus=build_prefix_hulls(split.minus, r, o, -1),
        )

    @property
    def suffix_plus(self) -> PrefixHullIndex:
        if self._suffix_plus is None:
            self._suffix_plus = build_suffix_hulls(self.split.plus, self.r, self.split.o, 1)
        return self._suffix_plus

    @property
    def suffix_minus(self) -> PrefixHullIndex:
        if self._suffix_minus is None:
            self._suffix_minus = build_suffix_hulls(self.split.minus, self.r, self.split.o, -1)
        return self._suffix_minus

    def _feasible(self, va, vb, which: str) -> bool:
        if va is None or vb is None:
            return False
        verts = list(va) + list(vb)
        if not verts:
            return True
        r = self.r
        cert = self._cert_a if which == "a" else self._cert_b
        if cert is not None:
            rr = r * (1.0 + EPS)
            rr2 = rr * rr
            if all((p.x - cert.x) ** 2 + (p.y - cert.y) ** 2 <= rr2 for p in verts):
                return True
        c = meb_within(verts, r)
        if c is None:
            return False
        if which == "a":
            self._cert_a = c
        else:
            self._cert_b = c
        return True

    def _verts(self, index: PrefixHullIndex, i: int, slot: int):
        cache = getattr(self, "_vcache", None)
        if cache is None:
            cache = self._vcache = [None, None, None, None]
        hit = cache[slot]
        if hit is not None and hit[0] is index and hit[1] == i:
            return hit[2]
        v = index.vertices_at(i)
        cache[slot] = (index, i, v)
        return v

    def a_feasible(self, i: int, j: int) -> bool:
        """A[i,j] <= r, by existence of the merged prefix hull."""
        return self._feasible(
            self._verts(self.prefix_plus, i, 0),
            self._verts(self.prefix_minus, j, 1),
            "a",
        )

    def b_feasible(self, i: int, j: int) -> bool:
        """B[i,j] <= r, by existence of the merged suffix hull."""
        n_p = self.prefix_plus.n
        n_m = self.prefix_minus.n
        return self._feasible(
            self._verts(self.suffix_plus, n_p - i, 2),
            self._verts(self.suffix_minus, n_m - j, 3),
            "b",
        )


def staircase_walk(split: AngularSplit, r: float) -> tuple[Optional[tuple[int, int]], StaircaseState]:
    """Walk j upward keeping i(j) maximal with A[i(j), j] <= r; stop at the
    first (i(j), j) whose complement also fits."""
    st = StaircaseState.build(split, r)
    n_p = len(split.plus)
    n_m = len(split.minus)
    death_p = st.prefix_plus.death_index
    i = n_p if math.isinf(death_p) else min(n_p, int(death_p) - 1)
    for j in range(0, n_m + 1):
        if j > 0 and st.prefix_minus.vertices_at(j) is None:
            break  # A[0, j] already exceeds r and A is monotone in j
        while i > 0 and not st.a_feasible(i, j):
            i -= 1
        if i == 0 and not st.a_feasible(0, j):
            break
        st.trace.append((i, j))
        if st.b_feasible(i, j):
            return (i, j), st
    return None, st


def staircase_feasible(split: AngularSplit, r: float) -> Optional[tuple[int, int]]:
    found, _ = staircase_walk(split, r)
    return found


def explicit_matrices(split: AngularSplit) -> tuple[np.ndarray, np.ndarray]:
    """Dense A and B matrices by direct minimum-enclosing-disk computation
    (test oracle; exponential in nothing but quadratic in n)."""
    n_p = len(split.plus)
    n_m = len(split.minus)
    a = np.zeros((n_p + 1, n_m + 1))
    b = np.zeros((n_p + 1, n_m + 1))
    allpts = split.plus + split.minus
    for i in range(n_p + 1):
        for j in range(n_m + 1):
            inside = split.plus[:i] + split.minus[:j]
            outside = split.plus[i:] + split.minus[j:]
            a[i, j] = meb(inside).radius if inside else 0.0
            b[i, j] = meb(outside).radius if outside else 0.0
    assert len(allpts) == n_p + n_m
    return a, b


def decide_nearby(
    points: Sequence[Point], r: float, o: Point, axes: Sequence[str] = ("x", "y")
) -> Optional[TwoDiskSolution]:
    """Decision for one candidate center o; sound unconditionally, complete
    when o lies in both optimal disks and one of the axes separates the two
    boundary-crossing rays."""
    if not points:
        return None
    pts = list(points)
    if any(p == o for p in pts):
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        d = math.hypot(max(xs) - min(xs), max(ys) - min(ys))
        o = Point(o.x + EPS * max(d, 1.0), o.y + EPS * max(d, 1.0))
    for axis in axes:
        split = build_split(pts, o, axis)
        found, st = staircase_walk(split, r)
        if found is None:
            continue
        i, j = found
        side1 = split.plus[:i] + split.minus[:j]
        side2 = split.plus[i:] + split.minus[j:]
        d1 = meb(side1) if side1 else Disk(pts[0], 0.0)
        d2 = meb(side2) if side2 else Disk(pts[0], 0.0)
        sol = solution_from_disks(
            pts,
            d1,
            d2,
            r,
            branch={"method": "nearby", "o": (o.x, o.y), "axis": axis, "i": i, "j": j},
        )
        if sol is not None:
            return sol
    return None


def decide_nearby_sweep(
    points: Sequence[Point], r: float, centers: Sequence[Point]
) -> Optional[TwoDiskSolution]:
    """Run the overlap decision over many candidate centers, skipping centers
    that induce a split (membership + angular order) already tried: equal
    splits give equal staircases."""
    pts = list(points)
    if not pts:
        return None
    seen: set = set()
    for o in centers:
        if any(p == o for p in pts):
            xs = [p.x for p in pts]
            ys = [p.y for p in pts]
            d = math.hypot(max(xs) - min(xs), max(ys) - min(ys))
            o = Point(o.x + EPS * max(d, 1.0), o.y + EPS * max(d, 1.0))
        for axis in ("x", "y"):
            split = build_split(pts, o, axis)
            key = (axis, tuple(split.plus_idx), tuple(split.minus_idx))
            if key in seen:
                continue
            seen.add(key)
            found, _ = staircase_walk(split, r)
            if found is None:
                continue
            i, j = found
            side1 = split.plus[:i] + split.minus[:j]
            side2 = split.plus[i:] + split.minus[j:]
            d1 = meb(side1) if side1 else Disk(pts[0], 0.0)
            d2 = meb(side2) if side2 else Disk(pts[0], 0.0)
            sol = solution_from_disks(
                pts,
                d1,
                d2,
                r,
                branch={
                    "method": "nearby",
                    "o": (o.x, o.y),
                    "axis": axis,
                    "i": i,
                    "j": j,
                },
            )
            if sol is not None:
                return sol
    return None


_GRID_DIV = 24


class _CenterList(list):
    """List of candidate centers; callers may cache a numpy view on it."""

    _arr_cache = None


def candidate_centers(points: Sequence[Point]) -> list[Point]:
    """Deterministic candidate set for the overlap point o: the minimum
    enclosing disk center first, then a grid over the expanded bounding box
    ordered by distance from it."""
    pts = sorted(set(points))
    if len(pts) < 1:
        return []
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    d = math.hypot(maxx - minx, maxy - miny)
    mc = meb(pts).center
    if d == 0.0:
        return _CenterList([mc])
    step = d / _GRID_DIV
    gx = np.arange(minx - 2.0 * d, maxx + 2.0 * d + step * 0.5, step)
    gy = np.arange(miny - 2.0 * d, maxy + 2.0 * d + step * 0.5, step)
    xx, yy = np.meshgrid(gx, gy)
    flat = np.column_stack([xx.ravel(), yy.ravel()])
    d2 = (flat[:, 0] - mc.x) ** 2 + (flat[:, 1] - mc.y) ** 2
    order = np.lexsort((flat[:, 1], flat[:, 0], d2))
    out = _CenterList([mc])
    out.extend(Point(float(x), float(y)) for x, y in flat[order])
    return out


def reachable_centers(
    points: Sequence[Point],
    centers: Sequence[Point],
    r: float,
    centers_arr: Optional[np.ndarray] = None,
    hull_arr: Optional[np.ndarray] = None,
) -> list[Point]:
    """Filter candidate centers to those within 2r of every point (a point
    of S farther than 2r from o cannot share a radius-r disk pair with it)."""
    arr = hull_arr if hull_arr is not None else np.asarray(convex_hull(points), dtype=float)
    if len(arr) == 0:
        return []
    cs = centers_arr if centers_arr is not None else np.asarray(centers, dtype=float)
    if len(cs) == 0:
        return []
    dx = cs[:, 0:1] - arr[None, :, 0]
    dy = cs[:, 1:2] - arr[None, :, 1]
    ok = ((dx * dx + dy * dy) <= (2.0 * r * (1.0 + EPS)) ** 2).all(axis=1)
    return [centers[int(k)] for k in np.nonzero(ok)[0]]
