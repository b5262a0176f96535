"""Fixed-radius decision for well-separated disks.

The plane is swept through a fixed set of rotation frames so that in one of
them the optimal centers are nearly horizontal.  Per frame, a small family
of vertical line pairs yields side sets S1 (left) and S2 (right) that must
go to different disks.  Two subcases are then decided:

  * Subcase 1 (each disk's exposed contact point lies in the other disk):
    the midpoint of the bichromatic farthest pair of (S1, S2) lies in both
    optimal disks, so the overlap decision takes over from there.
  * Subcase 2 (a contact point is exposed): points are classified against
    the r-coverages of S1 and S2, the mutual-coverage points are swept in
    angular order, the largest sweep prefix that still fits in one radius-r
    disk fixes a boundary arc of the first disk, and the rest must fit in
    the second.

Every returned witness is re-verified against the untransformed input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .config import SolverConfig
from .geom import (
    EPS,
    Disk,
    Point,
    RotationFrame,
    dist,
    farthest_pair_bichromatic,
    meb,
    meb_within,
    rotation_frames,
    unrotate_point,
)
from .hull import Arc, CircularHull, build_hull, coverage_membership
from .prefix import build_prefix_hulls
from .solution import TwoDiskSolution, solution_from_disks

_LINES = 26  # grid lines across the x-extent; spacing W/25 <= 0.28 r* when W <= 7 r*


@dataclass
class SplitPair:
    """A candidate vertical line pair in the rotated frame.

    Points are split left-inclusively: S1 takes x <= l1, S2 takes x > l2,
    the rest sit between the lines.
    """

    l1: float
    l2: float
    points: list[Point]  # x-sorted rotated points
    n1: int  # |S1| = points with x <= l1
    n2: int  # |S2| = points with x > l2

    @property
    def s1(self) -> list[Point]:
        return self.points[: self.n1]

    @property
    def s2(self) -> list[Point]:
        return self.points[len(self.points) - self.n2 :]

    @property
    def mid(self) -> list[Point]:
        return self.points[self.n1 : len(self.points) - self.n2]


def _bisect_right(xs: Sequence[float], v: float) -> int:
    import bisect

    return bisect.bisect_right(xs, v)


def candidate_line_pairs(points: Sequence[Point]) -> list[SplitPair]:
    """Line pairs from the max-gap line (paired with itself) plus all ordered
    pairs of 26 evenly spaced lines across the x-extent; at most 326 pairs,
    deduplicated by the split they induce."""
    pts = sorted(points)
    xs = [p.x for p in pts]
    n = len(pts)
    out: list[SplitPair] = []
    seen: set[tuple[int, int]] = set()

    def add(l1: float, l2: float):
        n1 = _bisect_right(xs, l1)
        n2 = n - _bisect_right(xs, l2)
        key = (n1, n2)
        if key in seen:
            return
        seen.add(key)
        out.append(SplitPair(l1, l2, pts, n1, n2))

    gaps = [(xs[k + 1] - xs[k], k) for k in range(n - 1)]
    if gaps:
        _, k = max(gaps)
        g = 0.5 * (xs[k] + xs[k + 1])
        add(g, g)
    w = xs[-1] - xs[0]
    if w > 0.0:
        lines = [xs[0] + w * t / (_LINES - 1) for t in range(_LINES)]
        for a in range(_LINES):
            for b in range(a + 1, _LINES):
                add(lines[a], lines[b])
    return out


# ---------------------------------------------------------------------------
# subcase 2 machinery


@dataclass
class MutualCoverageSeq:
    """Points of S inside both coverages, swept ccw around o1 starting after
    the largest angular gap; plus the three-way classification of S."""

    o1: Point
    points: list[Point]  # the sweep sequence s_1..s_t
    base: list[Point]  # S inside CR1 only
    other: list[Point]  # S inside CR2 only
    in1: list[bool]
    in2: list[bool]


@dataclass
class SubcaseTwoWitness:
    """Witness of the exposed-contact pipeline, in its canonical frame."""

    d1: Disk
    d2: Disk
    gamma: Optional[Arc]
    k: int
    contact: Optional[Point]  # coverage vertex where d1 touches CR1
    halfplane_line: Optional[tuple[Point, Point]]  # (contact, center) of d1
    seq: MutualCoverageSeq
    points: list[Point]  # canonical-frame input
    s1: list[Point]
    flip: tuple[int, int]  # canonical frame = rotated frame scaled by this


def _classify(hull: CircularHull, pts: Sequence[Point]) -> list[bool]:
    if len(pts) > 64:
        arr = np.asarray(pts, dtype=float)
        return [bool(b) for b in coverage_membership(hull, arr)]
    tol = hull.radius * (1.0 + EPS)
    return [hull.center_distance(p) <= tol for p in pts]


def _sweep_order(mutual: list[Point], o1: Point) -> list[Point]:
    """ccw order around o1 starting just after the largest angular gap."""
    if len(mutual) <= 1:
        return list(mutual)
    dec = sorted(
        (math.atan2(p.y - o1.y, p.x - o1.x), (p.x - o1.x) ** 2 + (p.y - o1.y) ** 2, k)
        for k, p in enumerate(mutual)
    )
    angs = [a for a, _, _ in dec]
    m = len(angs)
    gaps = [
        ((angs[(k + 1) % m] - angs[k]) % (2.0 * math.pi), k) for k in range(m)
    ]
    _, kmax = max(gaps)
    order = [dec[(kmax + 1 + t) % m][2] for t in range(m)]
    return [mutual[k] for k in order]


def largest_prefix_k(
    seq: MutualCoverageSeq, base_hull: Optional[CircularHull], r: float
) -> int:
    """Largest k such that one radius-r disk holds the base set plus the
    first k sweep points; binary search over incremental sweep-prefix hulls,
    with a linear rescan if the probes ever look non-monotone."""
    t = len(seq.points)
    if t == 0:
        return 0
    base_verts: tuple[Point, ...] = base_hull.vertices if base_hull else ()
    idx = build_prefix_hulls(seq.points, r, seq.o1, 1)

    def probe(i: int) -> bool:
        verts = idx.vertices_at(i)
        if verts is None:
            return False
        pool = list(base_verts) + list(verts)
        if not pool:
            return True
        return meb_within(pool, r) is not None

    if probe(t):
        return t
    lo, hi = 0, t  # probe(0) holds: the base hull exists
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if probe(mid):
            lo = mid
        else:
            hi = mid
    if not probe(lo):  # non-monotone probes: fall back to a linear scan
        k = 0
        while k < t and probe(k + 1):
            k += 1
        return k
    return lo


def _subcase2_canonical(
    pts: list[Point], s1: list[Point], s2: list[Point], r: float, flip: tuple[int, int]
) -> Optional[SubcaseTwoWitness]:
    h1 = build_hull(sorted(s1), r)
    if h1 is None:
        return None
    h2 = build_hull(sorted(s2), r)
    if h2 is None:
        return None
    in1 = _classify(h1, pts)
    in2 = _classify(h2, pts)
    if any(not a and not b for a, b in zip(in1, in2)):
        return None  # a point escapes both coverages: infeasible for this split
    o1 = min(s1)
    base = [p for p, a, b in zip(pts, in1, in2) if a and not b]
    other = [p for p, a, b in zip(pts, in1, in2) if b and not a]
    mutual = [p for p, a, b in zip(pts, in1, in2) if a and b]
    seq = MutualCoverageSeq(
        o1=o1, points=_sweep_order(mutual, o1), base=base, other=other, in1=in1, in2=in2
    )
    base_hull = build_hull(sorted(base), r) if base else None
    if base and base_hull is None:
        return None
    k = largest_prefix_k(seq, base_hull, r)
    first = base + seq.points[:k]
    if not first:
        return None
    hull_q = build_hull(sorted(first), r)
    if hull_q is None:
        return None
    s1_set = set(s1)
    gamma: Optional[Arc] = None
    for arc, u, w in zip(
        hull_q.arcs,
        hull_q.vertices,
        hull_q.vertices[1:] + hull_q.vertices[:1],
    ):
        if u in s1_set and w not in s1_set:
            gamma = arc
            break
    if gamma is not None:
        d1 = Disk(gamma.center, r)
        s_on = gamma.start_point()
        contact = Point(2.0 * gamma.center.x - s_on.x, 2.0 * gamma.center.y - s_on.y)
        hline = (contact, d1.center)
    else:
        d1 = Disk(meb(first).center, r)
        contact = None
        hline = None
    outside = [p for p in pts if not d1.contains(p)]
    if outside:
        d2 = meb(outside)
        if d2.radius > r * (1.0 + EPS):
            return None
    else:
        d2 = Disk(pts[0], 0.0)
    return SubcaseTwoWitness(
        d1=d1,
        d2=d2,
        gamma=gamma,
        k=k,
        contact=contact,
        halfplane_line=hline,
        seq=seq,
        points=pts,
        s1=list(s1),
        flip=flip,
    )


_FLIPS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def decide_subcase2(
    split: SplitPair, points: Sequence[Point], r: float
) -> Optional[SubcaseTwoWitness]:
    """Runs the canonical pipeline on the four symmetric variants obtained by
    x/y reflections (role swap and sweep-direction swap)."""
    for sx, sy in _FLIPS:
        pts_t = [Point(sx * p.x, sy * p.y) for p in points]
        a = [Point(sx * p.x, sy * p.y) for p in split.s1]
        b = [Point(sx * p.x, sy * p.y) for p in split.s2]
        s1, s2 = (a, b) if sx == 1 else (b, a)
        if not s1 or not s2:
            continue
        wit = _subcase2_canonical(pts_t, s1, s2, r, (sx, sy))
        if wit is not None:
            return wit
    return None


def decide_subcase1(
    split: SplitPair,
    points: Sequence[Point],
    r: float,
    _cache: Optional[dict] = None,
) -> Optional[TwoDiskSolution]:
    """Overlapping-contact subcase: reduce to the overlap decision at the
    midpoint of the bichromatic farthest pair of (S1, S2)."""
    if split.n1 == 0 or split.n2 == 0:
        return None
    from .nearby import decide_nearby

    fp = farthest_pair_bichromatic(split.s1, split.s2)
    key = (fp.a, fp.b)
    if _cache is not None and key in _cache:
        return _cache[key]
    sol = decide_nearby(points, r, fp.midpoint)
    if _cache is not None:
        _cache[key] = sol
    return sol


# ---------------------------------------------------------------------------


def _max_feasible_prefix(arr: np.ndarray, r: float) -> int:
    """Largest m such that the first m rows (x-sorted) fit in a radius-r disk.

    Tracks a certificate center covering the prefix within r; only points
    escaping the full allowance trigger a (radius-capped) recomputation, so
    the scan stays near-linear even on sorted input.
    """
    n = len(arr)
    if n == 0:
        return 0
    rr = r * (1.0 + EPS)
    cx, cy = float(arr[0, 0]), float(arr[0, 1])
    pts: list[Point] = [Point(cx, cy)]
    k = 1
    while k < n:
        end = min(k + 512, n)
        chunk = arr[k:end]
        d = np.hypot(chunk[:, 0] - cx, chunk[:, 1] - cy)
        bad = np.nonzero(d > rr)[0]
        if len(bad) == 0:
            k = end
            continue
        m = k + int(bad[0])
        while len(pts) < m + 1:
            j = len(pts)
            pts.append(Point(float(arr[j, 0]), float(arr[j, 1])))
        c = meb_within(pts, r)
        if c is None:
            return m
        cx, cy = c.x, c.y
        k = m + 1
    return n


def _pair_counts(xs: np.ndarray, w: float, r: float) -> list[tuple[int, int, float, float]]:
    """Deduplicated (n1, n2, l1, l2) splits for one frame; only the max-gap
    pair when the x-extent rules out the near-distant regime at this r."""
    n = len(xs)
    out: list[tuple[int, int, float, float]] = []
    seen: set[tuple[int, int]] = set()
    if n >= 2:
        diffs = np.diff(xs)
        k = int(np.argmax(diffs))
        g = 0.5 * (float(xs[k]) + float(xs[k + 1]))
        n1 = int(np.searchsorted(xs, g, side="right"))
        n2 = n - n1
        if n1 and n2:
            seen.add((n1, n2))
            out.append((n1, n2, g, g))
    if w > 7.0 * r or w == 0.0:
        return out
    lines = np.array([float(xs[0]) + w * t / (_LINES - 1) for t in range(_LINES)])
    counts = np.searchsorted(xs, lines, side="right")
    for a in range(_LINES):
        n1 = int(counts[a])
        if n1 == 0:
            continue
        for b in range(a + 1, _LINES):
            n2 = n - int(counts[b])
            key = (n1, n2)
            if n2 == 0 or key in seen:
                continue
            seen.add(key)
            out.append((n1, n2, float(lines[a]), float(lines[b])))
    return out


def decide_distant(
    points: Sequence[Point], r: float, cfg: Optional[SolverConfig] = None
) -> Optional[TwoDiskSolution]:
    """Distant-case decision: Some verified witness when a feasible pair of
    radius-r disks exists along any rotation/line-pair/subcase branch."""
    cfg = cfg or SolverConfig()
    pts = list(points)
    n = len(pts)
    if n == 0:
        return None
    c = meb_within(pts, r)
    if c is not None:
        m = meb(pts)
        return solution_from_disks(
            pts, m, Disk(pts[0], 0.0), r, branch={"method": "trivial"}
        )
    if n < 2:
        return None
    arr = np.asarray(pts, dtype=float)
    # the exposed-contact pipeline depends only on the side sets (its four
    # variants cover both sweep orientations), so repeats of the same split
    # across rotations are skipped
    sub2_seen: set = set()
    for frame in rotation_frames(cfg.rotations):
        ca = math.cos(frame.angle)
        sa = math.sin(frame.angle)
        rot = arr @ np.array([[ca, -sa], [sa, ca]])
        order = np.lexsort((rot[:, 1], rot[:, 0]))
        sorted_arr = rot[order]
        xs = sorted_arr[:, 0]
        w = float(xs[-1] - xs[0])
        pairs = _pair_counts(xs, w, r)
        if not pairs:
            continue
        nmax1 = _max_feasible_prefix(sorted_arr, r)
        nmax2 = _max_feasible_prefix(sorted_arr[::-1], r)
        rpts: Optional[list[Point]] = None
        sub1_cache: dict = {}
        for n1, n2, l1, l2 in pairs:
            if n1 > nmax1 or n2 > nmax2:
                continue
            if rpts is None:
                rpts = [Point(float(x), float(y)) for x, y in sorted_arr]
            split = SplitPair(l1, l2, rpts, n1, n2)
            sol = decide_subcase1(split, rpts, r, _cache=sub1_cache)
            if sol is not None:
                out = _unrotate_solution(pts, sol, frame, r)
                if out is not None:
                    out.branch.update(
                        {"rotation": frame.index, "subcase": 1, "n1": n1, "n2": n2}
                    )
                    return out
            key = frozenset(
                (frozenset(order[:n1].tolist()), frozenset(order[n - n2 :].tolist()))
            )
            if key not in sub2_seen:
                sub2_seen.add(key)
                wit = decide_subcase2(split, rpts, r)
                if wit is not None:
                    sx, sy = wit.flip
                    d1 = Disk(Point(sx * wit.d1.center.x, sy * wit.d1.center.y), wit.d1.radius)
                    d2 = Disk(Point(sx * wit.d2.center.x, sy * wit.d2.center.y), wit.d2.radius)
                    out = _unrotate_disks(pts, d1, d2, frame, r)
                    if out is not None:
                        out.branch.update(
                            {
                                "rotation": frame.index,
                                "subcase": 2,
                                "n1": n1,
                                "n2": n2,
                                "k": wit.k,
                                "flip": wit.flip,
                            }
                        )
                        return out
    return None


def _unrotate_disks(
    pts: Sequence[Point], d1: Disk, d2: Disk, frame: RotationFrame, r: float
) -> Optional[TwoDiskSolution]:
    u1 = Disk(unrotate_point(d1.center, frame), d1.radius)
    u2 = Disk(unrotate_point(d2.center, frame), d2.radius)
    return solution_from_disks(pts, u1, u2, r, branch={"method": "distant"})


def _unrotate_solution(
    pts: Sequence[Point], sol: TwoDiskSolution, frame: RotationFrame, r: float
) -> Optional[TwoDiskSolution]:
    out = _unrotate_disks(pts, sol.disk1, sol.disk2, frame, r)
    if out is not None:
        out.branch["nearby"] = sol.branch
    return out
