"""Persistent per-prefix circular hulls at a fixed radius.

For a sequence of points sorted angularly around an anchor, the index holds
one hull version per prefix length.  Small sequences snapshot the vertex
cycle directly; larger ones share structure through a path-copying treap
that replays the builder's structural ops, so a version stays reachable in
O(log n) and total space is O(n log n) nodes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .geom import Point
from .hull import EMPTY_HULL, CircularHull, EmptyHull, HullBuilder, hull_from_vertices

_SNAPSHOT_LIMIT = 128


# -- persistent treap (sequence by position) --------------------------------


class _Node:
    __slots__ = ("val", "pri", "left", "right", "size")

    def __init__(self, val, pri, left, right):
        self.val = val
        self.pri = pri
        self.left = left
        self.right = right
        self.size = 1 + (left.size if left else 0) + (right.size if right else 0)


def _merge(a: Optional[_Node], b: Optional[_Node]) -> Optional[_Node]:
    if a is None:
        return b
    if b is None:
        return a
    if a.pri > b.pri:
        return _Node(a.val, a.pri, a.left, _merge(a.right, b))
    return _Node(b.val, b.pri, _merge(a, b.left), b.right)


def _split(n: Optional[_Node], k: int) -> tuple[Optional[_Node], Optional[_Node]]:
    """First k items to the left tree."""
    if n is None:
        return None, None
    left_size = n.left.size if n.left else 0
    if k <= left_size:
        l, r = _split(n.left, k)
        return l, _Node(n.val, n.pri, r, n.right)
    l, r = _split(n.right, k - left_size - 1)
    return _Node(n.val, n.pri, n.left, l), r


def _to_list(n: Optional[_Node]) -> list:
    out: list = []
    stack: list = []
    while n or stack:
        while n:
            stack.append(n)
            n = n.left
        n = stack.pop()
        out.append(n.val)
        n = n.right
    return out


def tree_height(n: Optional[_Node]) -> int:
    if n is None:
        return 0
    return 1 + max(tree_height(n.left), tree_height(n.right))


class _TreapLog:
    """Applies builder ops persistently; each version is a treap root."""

    def __init__(self, seed: int = 0x5EED):
        self.root: Optional[_Node] = None
        self._rng = random.Random(seed)

    def _leaf(self, val) -> _Node:
        return _Node(val, self._rng.random(), None, None)

    def apply(self, op: tuple):
        kind = op[0]
        if kind == "noop" or kind == "dead":
            return
        if kind == "push":
            self.root = _merge(self.root, self._leaf(op[1]))
            return
        _, slot, a, b, q = op
        left, right = _split(self.root, slot + 1)
        root = _merge(right, left)
        if a:
            _, root = _split(root, a)
        if b:
            size = root.size if root else 0
            root, _ = _split(root, size - b)
        self.root = _merge(root, self._leaf(q))


_DEAD = object()


class HullVersion:
    """Read-only view of one prefix hull, usable by merge/tangent callers."""

    __slots__ = ("radius", "_verts", "_hull")

    def __init__(self, radius: float, verts: tuple[Point, ...]):
        self.radius = radius
        self._verts = verts
        self._hull: Optional[CircularHull] = None

    @property
    def exists(self) -> bool:
        return True

    def vertices(self) -> tuple[Point, ...]:
        return self._verts

    def hull(self) -> CircularHull | EmptyHull:
        if not self._verts:
            return EMPTY_HULL
        if self._hull is None:
            self._hull = hull_from_vertices(self._verts, self.radius)
        return self._hull


@dataclass
class PrefixHullIndex:
    radius: float
    anchor: Point
    orientation: int
    n: int
    death_index: float  # smallest prefix length without a hull, or math.inf
    pops: int
    inserts: int
    _versions: list  # per prefix: tuple of vertices | treap root | _DEAD
    _backend: str

    def hull_at(self, i: int) -> Optional[HullVersion] | EmptyHull:
        """Hull view of the first i points; None once the hull has died."""
        if i < 0 or i > self.n:
            raise IndexError(f"prefix length {i} outside [0, {self.n}]")
        if i == 0:
            return EMPTY_HULL
        if i >= self.death_index:
            return None
        v = self._versions[i]
        if v is _DEAD:
            return None
        if self._backend == "list":
            verts = v
        else:
            verts = tuple(_to_list(v))
            if self.orientation == -1:
                verts = tuple(Point(p.x, -p.y) for p in verts)
        return HullVersion(self.radius, verts)

    def vertices_at(self, i: int) -> Optional[tuple[Point, ...]]:
        """Vertex cycle of version i; () for i=0; None past death."""
        view = self.hull_at(i)
        if view is None:
            return None
        if isinstance(view, EmptyHull):
            return ()
        return view.vertices()

    def version_height(self, i: int) -> int:
        """Tree height of version i (treap backend; 0 for list snapshots)."""
        if self._backend == "list":
            return 0
        v = self._versions[i]
        return 0 if v is _DEAD else tree_height(v)


def build_prefix_hulls(
    seq: Sequence[Point], r: float, anchor: Point, orientation: int = 1
) -> PrefixHullIndex:
    """One hull version per prefix of a ccw-sorted (cw for orientation=-1)
    sequence around the anchor."""
    n = len(seq)
    backend = "list" if n <= _SNAPSHOT_LIMIT else "treap"
    builder = HullBuilder(anchor, r, orientation=orientation)
    log = _TreapLog() if backend == "treap" else None
    versions: list = [()]
    death: float = math.inf
    for i, p in enumerate(seq, start=1):
        if death is not math.inf:
            versions.append(_DEAD)
            continue
        alive = builder.insert(p)
        if not alive:
            death = i
            versions.append(_DEAD)
        elif backend == "list":
            versions.append(builder.vertices())
        else:
            log.apply(builder.last_op)
            versions.append(log.root)
    return PrefixHullIndex(
        radius=r,
        anchor=anchor,
        orientation=orientation,
        n=n,
        death_index=death,
        pops=builder.pops,
        inserts=builder.inserts,
        _versions=versions,
        _backend=backend,
    )


def hull_at(index: PrefixHullIndex, i: int):
    return index.hull_at(i)


def build_suffix_hulls(
    seq: Sequence[Point], r: float, anchor: Point, orientation: int = 1
) -> PrefixHullIndex:
    """Prefix hulls of the reversed sequence: entry i covers the last i points.

    Reversing a ccw-sorted sequence yields cw order around the same anchor,
    so the builder runs with the opposite orientation.
    """
    return build_prefix_hulls(list(reversed(seq)), r, anchor, orientation=-orientation)
