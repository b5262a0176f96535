"""Farthest-point Voronoi diagram with centroid-decomposition queries.

The diagram of sites in convex position is the dual of the farthest-point
Delaunay triangulation, obtained from the upper convex hull of the standard
paraboloid lifting.  Its skeleton (triangle circumcenters plus adjacency) is
a tree; a centroid decomposition of that tree supports logarithmic descent
for "minimum enclosing disk with two fixed boundary points" queries: at each
skeleton vertex the three rays away from the incident sites split the plane
into cones, and evaluating the query objective at the (at most three)
ray/bisector intersections tells which cone holds the optimal center.

Small or degenerate site sets (fewer than four usable sites, cocircular or
collinear inputs) fall back to exact direct enumeration behind the same
interface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import DegenerateError, EmptyInputError
from .geom import EPS, Disk, Point, circumcircle, dist, midpoint
from .errors import CollinearError

_RAY_TOL = 1e-12


class FvdTree:
    """Farthest-point Voronoi diagram of a point set.

    ``triangles`` lists the farthest-Delaunay triangles as site-index triples;
    ``centers`` holds their circumcenters (the skeleton vertices); ``adj``
    maps a triangle to its skeleton neighbors.  ``small`` trees have no
    skeleton and answer queries by direct enumeration.
    """

    __slots__ = ("sites", "triangles", "centers", "adj", "small", "_site_arr")

    def __init__(self, sites, triangles, centers, adj, small):
        self.sites = tuple(sites)
        self.triangles = tuple(triangles)
        self.centers = tuple(centers)
        self.adj = adj
        self.small = small
        self._site_arr = np.asarray(self.sites, dtype=float)

    def farthest_site(self, z: Point) -> tuple[Point, float]:
        """Farthest site from z and its distance (ties: lowest site index)."""
        arr = self._site_arr
        d = np.hypot(arr[:, 0] - z.x, arr[:, 1] - z.y)
        k = int(np.argmax(d))
        return self.sites[k], float(d[k])

    def skeleton_is_tree(self) -> bool:
        n = len(self.triangles)
        if n == 0:
            return True
        edges = sum(len(v) for v in self.adj.values()) // 2
        return edges == n - 1 and _connected(self.adj, n)


def _connected(adj: dict, n: int) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w, _ in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def build_fvd(points: Sequence[Point]) -> FvdTree:
    """Farthest-point Voronoi diagram; degenerate inputs get a direct-scan tree."""
    if not points:
        raise EmptyInputError("FVD of empty set")
    sites = sorted(set(points))
    if len(sites) <= 3:
        return _small_tree(sites)
    arr = np.asarray(sites, dtype=float)
    # collinear sites: only the two extremes are ever farthest
    span = arr.max(axis=0) - arr.min(axis=0)
    d0 = arr[-1] - arr[0]
    crossmax = np.abs(
        d0[0] * (arr[:, 1] - arr[0, 1]) - d0[1] * (arr[:, 0] - arr[0, 0])
    ).max()
    if crossmax <= EPS * max(span[0], span[1]) ** 2:
        return _small_tree([sites[0], sites[-1]])
    try:
        from scipy.spatial import ConvexHull, QhullError

        lifted = np.column_stack([arr, (arr * arr).sum(axis=1)])
        hull3 = ConvexHull(lifted)
    except QhullError:
        return _small_tree(sites)  # cocircular or otherwise flat lifting
    normals = hull3.equations[:, 2]
    upper = np.nonzero(normals > 1e-12)[0]
    if len(upper) == 0:
        return _small_tree(sites)
    upper_set = {int(f): k for k, f in enumerate(upper)}
    triangles = []
    centers = []
    for f in upper:
        tri = tuple(int(v) for v in hull3.simplices[f])
        try:
            c = circumcircle(sites[tri[0]], sites[tri[1]], sites[tri[2]])
        except CollinearError:
            return _small_tree(sites)
        triangles.append(tri)
        centers.append(c.center)
    adj: dict[int, list[tuple[int, frozenset]]] = {k: [] for k in range(len(upper))}
    for f in upper:
        k = upper_set[int(f)]
        for nb in hull3.neighbors[f]:
            if int(nb) in upper_set:
                j = upper_set[int(nb)]
                shared = frozenset(triangles[k]) & frozenset(triangles[j])
                if len(shared) == 2 and j > k:
                    adj[k].append((j, shared))
                    adj[j].append((k, shared))
    tree = FvdTree(sites, triangles, centers, adj, small=False)
    if not tree.skeleton_is_tree():
        return _small_tree(sites)  # near-degenerate triangulation; stay exact
    return tree


def _small_tree(sites) -> FvdTree:
    return FvdTree(sites, (), (), {}, small=True)


# ---------------------------------------------------------------------------
# centroid decomposition


@dataclass
class _CentroidNode:
    tri: int
    depth: int
    children: dict = field(default_factory=dict)  # neighbor tri id -> node


@dataclass
class CentroidTree:
    root: Optional[_CentroidNode]
    height: int


def build_centroid(fvd: FvdTree) -> CentroidTree:
    n = len(fvd.triangles)
    if n == 0:
        return CentroidTree(root=None, height=0)
    neighbors = {v: [w for w, _ in fvd.adj[v]] for v in range(n)}
    removed = [False] * n

    def comp_sizes(start):
        sizes = {}
        order = []
        parent = {start: None}
        stack = [start]
        while stack:
            v = stack.pop()
            order.append(v)
            for w in neighbors[v]:
                if not removed[w] and w != parent[v]:
                    parent[w] = v
                    stack.append(w)
        for v in reversed(order):
            sizes[v] = 1 + sum(sizes[w] for w in neighbors[v] if not removed[w] and parent.get(w) == v)
        return sizes, parent

    def find_centroid(start):
        sizes, parent = comp_sizes(start)
        total = sizes[start]
        v = start
        while True:
            heavy = None
            for w in neighbors[v]:
                if not removed[w] and parent.get(w) == v and sizes[w] > total // 2:
                    heavy = w
                    break
            if heavy is None:
                up = total - sizes[v]
                if up > total // 2:
                    pass  # cannot happen after walking down the heavy path
                return v
            v = heavy

    height = 0

    def build(start, depth) -> _CentroidNode:
        nonlocal height
        c = find_centroid(start)
        removed[c] = True
        node = _CentroidNode(tri=c, depth=depth)
        height = max(height, depth + 1)
        for w in neighbors[c]:
            if not removed[w]:
                node.children[w] = build(w, depth + 1)
        return node

    root = build(0, 0)
    return CentroidTree(root=root, height=height)


# ---------------------------------------------------------------------------
# queries


def _disk_through_two(x: Point, y: Point) -> Disk:
    c = midpoint(x, y)
    return Disk(c, dist(x, y) / 2.0)


def _valid(fvd: FvdTree, d: Disk, eps: float = EPS) -> bool:
    _, far = fvd.farthest_site(d.center)
    return far <= d.radius * (1.0 + eps)


def _bisector_frame(x: Point, y: Point) -> tuple[Point, Point]:
    """(midpoint, unit direction of the bisector), center param c(t)=mid+t*u."""
    mid = midpoint(x, y)
    d = dist(x, y)
    u = Point(-(y.y - x.y) / d, (y.x - x.x) / d)
    return mid, u


def _descend_candidates(fvd: FvdTree, cent: CentroidTree, x: Point, y: Point) -> set:
    """Sites seen while descending the centroid tree along the bisector."""
    mid, u = _bisector_frame(x, y)
    out: set[int] = set()
    node = cent.root
    while node is not None:
        tri = fvd.triangles[node.tri]
        w = fvd.centers[node.tri]
        out.update(tri)
        hits = []
        for si in tri:
            s = fvd.sites[si]
            dx = w.x - s.x
            dy = w.y - s.y
            norm = math.hypot(dx, dy)
            if norm == 0.0:
                continue
            dxn, dyn = dx / norm, dy / norm
            # solve mid + t*u = w + a*(dxn, dyn)
            det = u.x * (-dyn) - u.y * (-dxn)
            if abs(det) < _RAY_TOL:
                continue
            bx = w.x - mid.x
            by = w.y - mid.y
            t = (bx * (-dyn) - by * (-dxn)) / det
            a = (u.x * by - u.y * bx) / det
            if a >= -_RAY_TOL:
                hits.append((t, si))
        target_dir: Optional[float] = None
        if not hits:
            rep = mid  # whole bisector inside one cone
        else:
            hits.sort()
            seg = _optimal_segment(fvd, mid, u, x, hits)
            if seg is None:
                break  # optimum pinned at a ray; its cell is already recorded
            rep = Point(mid.x + seg * u.x, mid.y + seg * u.y)
        nxt = _cone_neighbor(fvd, node.tri, rep)
        if nxt is None:
            break
        child = node.children.get(nxt)
        if child is None:
            break
        node = child
    return out


def _slope(mid: Point, u: Point, t: float, a: Point) -> float:
    cx = mid.x + t * u.x
    cy = mid.y + t * u.y
    d = math.hypot(cx - a.x, cy - a.y)
    if d == 0.0:
        return 0.0
    return (u.x * (cx - a.x) + u.y * (cy - a.y)) / d


def _optimal_segment(fvd, mid, u, x, hits) -> Optional[float]:
    """Representative t of the segment containing the minimum of the
    unimodal objective max(|c(t)-x|, farthest(c(t))); None when pinned at a hit."""
    slopes = []
    for t, si in hits:
        s = fvd.sites[si]
        cx = mid.x + t * u.x
        cy = mid.y + t * u.y
        vx = math.hypot(cx - x.x, cy - x.y)
        vp = math.hypot(cx - s.x, cy - s.y)
        sx = _slope(mid, u, t, x)
        sp = _slope(mid, u, t, s)
        if vx > vp * (1.0 + 1e-12):
            lo = hi = sx
        elif vp > vx * (1.0 + 1e-12):
            lo = hi = sp
        else:
            lo, hi = min(sx, sp), max(sx, sp)
        slopes.append((t, lo, hi))
    span = abs(slopes[-1][0] - slopes[0][0]) + 1.0
    if slopes[0][1] > 0.0:
        return slopes[0][0] - span
    if slopes[-1][2] < 0.0:
        return slopes[-1][0] + span
    for k in range(len(slopes)):
        t, lo, hi = slopes[k]
        if lo <= 0.0 <= hi:
            return None  # minimum at this breakpoint
        if hi < 0.0 and k + 1 < len(slopes) and slopes[k + 1][1] > 0.0:
            return 0.5 * (t + slopes[k + 1][0])
    return None


def _cone_neighbor(fvd: FvdTree, tri_id: int, z: Point) -> Optional[int]:
    """Skeleton neighbor across the cone of tri_id containing z."""
    w = fvd.centers[tri_id]
    tri = fvd.triangles[tri_id]
    if z == w:
        return None
    zang = math.atan2(z.y - w.y, z.x - w.x)
    rays = []
    for si in tri:
        s = fvd.sites[si]
        ang = math.atan2(w.y - s.y, w.x - s.x)
        rays.append((ang, si))
    rays.sort()
    m = len(rays)
    for k in range(m):
        a0, s0 = rays[k]
        a1, s1 = rays[(k + 1) % m]
        if (zang - a0) % (2 * math.pi) <= (a1 - a0) % (2 * math.pi):
            pair = frozenset((s0, s1))
            for nb, shared in fvd.adj[tri_id]:
                if shared == pair:
                    return nb
            return None
    return None


def _exact_interval(
    sites: Sequence[Point], x: Point, y: Point
) -> tuple[float, float]:
    """Feasible bisector interval [lo, hi] for disks through x,y containing
    all sites; each site gives a linear constraint in the parameter t."""
    mid, u = _bisector_frame(x, y)
    lo, hi = -math.inf, math.inf
    for s in sites:
        # |c(t)-s|^2 <= |c(t)-x|^2  becomes  coef * t <= rhs
        coef = 2.0 * (u.x * (x.x - s.x) + u.y * (x.y - s.y))
        rhs = (
            (x.x - mid.x) ** 2
            + (x.y - mid.y) ** 2
            - (s.x - mid.x) ** 2
            - (s.y - mid.y) ** 2
        )
        if abs(coef) < _RAY_TOL * max(1.0, abs(rhs)):
            if rhs < -_RAY_TOL:
                return math.inf, -math.inf
            continue
        b = rhs / coef
        if coef > 0:
            hi = min(hi, b)
        else:
            lo = max(lo, b)
    return lo, hi


def _disk_at(x: Point, y: Point, t: float) -> Disk:
    mid, u = _bisector_frame(x, y)
    c = Point(mid.x + t * u.x, mid.y + t * u.y)
    return Disk(c, dist(c, x))


def med_two_boundary(
    fvd: FvdTree, centroid: Optional[CentroidTree], x: Point, y: Point
) -> Optional[Disk]:
    """Smallest disk with x and y on its boundary containing all sites.

    The centroid descent narrows the support site to O(log n) candidates.
    The candidate constraints bound a superset of the true feasible bisector
    interval, so if the disk at the clamped parameter verifies against the
    true farthest site it is provably optimal; otherwise an exact solve over
    all sites backs the descent up.
    """
    if x == y:
        raise DegenerateError("query points coincide")
    base = _disk_through_two(x, y)
    if _valid(fvd, base):
        return base
    if fvd.small or centroid is None or centroid.root is None:
        cand = set(range(len(fvd.sites)))
    else:
        cand = _descend_candidates(fvd, centroid, x, y)
    lo, hi = _exact_interval([fvd.sites[i] for i in cand], x, y)
    if lo > hi + _RAY_TOL:
        return None  # infeasible already for a subset of the constraints
    t = min(max(0.0, lo), hi)
    d = _disk_at(x, y, t)
    if _valid(fvd, d):
        return d
    # descent missed the binding site: exact interval over all sites
    lo, hi = _exact_interval(fvd.sites, x, y)
    if lo > hi + _RAY_TOL:
        return None
    t = min(max(0.0, lo), hi)
    return _disk_at(x, y, t)


# ---------------------------------------------------------------------------
# block index over a sequence


class PrefixMedResult(NamedTuple):
    disk: Disk
    support: Optional[Point]


@dataclass
class _BlockNode:
    lo: int  # first block (1-based, inclusive)
    hi: int  # last block (inclusive)
    fvd: FvdTree
    centroid: CentroidTree
    left: Optional["_BlockNode"] = None
    right: Optional["_BlockNode"] = None


class BlockIndex:
    """Complete binary tree over fixed-size blocks of a point sequence; each
    node stores the FVD + centroid structures of its blocks' union."""

    def __init__(self, seq: Sequence[Point], block_size: int = 64):
        if not seq:
            raise EmptyInputError("block index needs points")
        self.seq = list(seq)
        self.block_size = block_size
        self.blocks: list[list[Point]] = [
            self.seq[i : i + block_size] for i in range(0, len(self.seq), block_size)
        ]
        self.t = len(self.blocks)
        self.root = self._build(1, self.t)

    def _build(self, lo: int, hi: int) -> _BlockNode:
        pts = [p for b in range(lo, hi + 1) for p in self.blocks[b - 1]]
        fvd = build_fvd(pts)
        cent = build_centroid(fvd)
        node = _BlockNode(lo, hi, fvd, cent)
        if lo < hi:
            m = (lo + hi) // 2
            node.left = self._build(lo, m)
            node.right = self._build(m + 1, hi)
        return node

    def cover_prefix(self, k: int) -> list[_BlockNode]:
        """Canonical nodes covering blocks [1, k]; empty when k < 1."""
        out: list[_BlockNode] = []

        def rec(node: Optional[_BlockNode]):
            if node is None or k < node.lo:
                return
            if node.hi <= k:
                out.append(node)
                return
            rec(node.left)
            rec(node.right)

        rec(self.root)
        return out


def prefix_med_two_boundary(
    index: BlockIndex, k: int, p: Point, q: Point
) -> PrefixMedResult:
    """Minimum enclosing disk of blocks [1, k-1] plus {p, q} with p, q on its
    boundary: the largest of the per-node answers over the covering nodes."""
    if p == q:
        raise DegenerateError("query points coincide")
    if k < 1 or k > index.t:
        raise IndexError(f"block number {k} outside [1, {index.t}]")
    best = _disk_through_two(p, q)
    support: Optional[Point] = None
    for node in index.cover_prefix(k - 1):
        d = med_two_boundary(node.fvd, node.centroid, p, q)
        if d is None:
            continue
        if d.radius > best.radius * (1.0 + 1e-15):
            best = d
            s, far = node.fvd.farthest_site(d.center)
            support = s if far >= d.radius * (1.0 - 1e-9) else None
    return PrefixMedResult(best, support)


_UNBOUNDED = Disk(Point(math.nan, math.nan), math.inf)


def largest_enclosing_two_boundary(
    index: BlockIndex, ell: int, p: Point, q: Point, side: int = 1
) -> Optional[Disk]:
    """Largest disk with p, q on its boundary containing the first ell points,
    with its center on the chosen bisector branch (+1: left of p->q).

    Returns the unbounded sentinel (radius inf) when no point constrains the
    branch, or None when the branch is infeasible.
    """
    if p == q:
        raise DegenerateError("query points coincide")
    if ell < 0 or ell > len(index.seq):
        raise IndexError(f"prefix length {ell} outside [0, {len(index.seq)}]")
    pts = index.seq[:ell]
    lo, hi = _exact_interval(pts, p, q) if pts else (-math.inf, math.inf)
    if side == 1:
        if hi < -_RAY_TOL:
            return None
        if math.isinf(hi):
            return _UNBOUNDED
        return _disk_at(p, q, hi)
    if lo > _RAY_TOL:
        return None
    if math.isinf(lo):
        return _UNBOUNDED
    return _disk_at(p, q, lo)
