"""Optimal two-disk search over candidate radii.

The optimum radius is always the radius of the minimum enclosing disk of one
side of some 2-partition, hence a pair half-distance or a triple circumradius.
Exact mode binary-searches that explicit candidate set with the combined
decision; beyond a size cap a plain bisection on the radius takes over.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

from .config import SolverConfig
from .errors import CollinearError, EmptyInputError, TooLargeError
from .geom import EPS, Disk, Point, circumcircle, dist, meb, meb_within
from .solution import TwoDiskSolution, solution_from_disks

_ORACLE_CAP = 16


def candidate_radii(points: Sequence[Point]) -> list[float]:
    """0, all pair half-distances, and all non-collinear triple circumradii."""
    pts = sorted(set(points))
    if not pts:
        raise EmptyInputError("candidate radii of empty set")
    vals = {0.0}
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            vals.add(dist(pts[i], pts[j]) / 2.0)
            for k in range(j + 1, n):
                try:
                    vals.add(circumcircle(pts[i], pts[j], pts[k]).radius)
                except CollinearError:
                    continue
    return sorted(vals)


def feasible(
    points: Sequence[Point],
    r: float,
    cfg: Optional[SolverConfig] = None,
    centers: Optional[list[Point]] = None,
) -> Optional[TwoDiskSolution]:
    """Combined decision: can two radius-r disks cover the points?

    Tries the overlap (nearby) decision over its candidate centers first,
    then the distant sweep; the first verified witness wins.
    """
    import numpy as np

    from .distant import decide_distant
    from .geom import convex_hull
    from .nearby import candidate_centers, decide_nearby_sweep, reachable_centers

    cfg = cfg or SolverConfig()
    pts = list(points)
    if not pts:
        return None
    c = meb_within(pts, r)
    if c is not None:
        m = meb(pts)
        return solution_from_disks(
            pts, m, Disk(pts[0], 0.0), r, branch={"method": "trivial"}
        )
    if centers is None:
        centers = candidate_centers(pts)
    arr = getattr(centers, "_arr_cache", None)
    if arr is None:
        arr = np.asarray(centers, dtype=float)
        try:
            centers._arr_cache = arr  # type: ignore[attr-defined]
        except AttributeError:
            pass
    hull_arr = getattr(centers, "_hull_cache", None)
    if hull_arr is None:
        hull_arr = np.asarray(convex_hull(pts), dtype=float)
        try:
            centers._hull_cache = hull_arr  # type: ignore[attr-defined]
        except AttributeError:
            pass
    sol = decide_nearby_sweep(
        pts, r, reachable_centers(pts, centers, r, centers_arr=arr, hull_arr=hull_arr)
    )
    if sol is not None:
        return sol
    return decide_distant(pts, r, cfg)


def _dedupe(points: Sequence[Point]) -> tuple[list[Point], list[int]]:
    uniq: list[Point] = []
    index: dict[Point, int] = {}
    back: list[int] = []
    for p in points:
        k = index.get(p)
        if k is None:
            k = len(uniq)
            index[p] = k
            uniq.append(p)
        back.append(k)
    return uniq, back


def _expand(sol: TwoDiskSolution, points: Sequence[Point], back: list[int]) -> TwoDiskSolution:
    assignment = [sol.assignment[k] for k in back]
    return TwoDiskSolution(sol.disk1, sol.disk2, sol.radius, assignment, sol.branch)


def solve(points: Sequence[Point], cfg: Optional[SolverConfig] = None) -> TwoDiskSolution:
    """Smallest r with a feasible two-disk, with its witness.

    Binary search over the explicit candidate set; inputs larger than the
    exact cap switch to bisection automatically.
    """
    cfg = cfg or SolverConfig()
    if not points:
        raise EmptyInputError("solve needs points")
    uniq, back = _dedupe(list(points))
    if len(uniq) > cfg.exact_cap:
        sol = solve_bisect(uniq, cfg.bisect_tol, cfg)
        return _expand(sol, points, back)
    if len(uniq) <= 2:
        d1 = Disk(uniq[0], 0.0)
        d2 = Disk(uniq[-1], 0.0)
        sol = solution_from_disks(uniq, d1, d2, 0.0, branch={"method": "tiny"})
        return _expand(sol, points, back)

    from .nearby import candidate_centers

    centers = candidate_centers(uniq)
    cands = candidate_radii(uniq)
    memo: dict[int, Optional[TwoDiskSolution]] = {}

    def probe(k: int) -> Optional[TwoDiskSolution]:
        if k not in memo:
            memo[k] = feasible(uniq, cands[k], cfg, centers=centers)
        return memo[k]

    lo, hi = 0, len(cands) - 1
    if probe(lo) is not None:
        hi = lo
    else:
        # meb radius is always feasible and always a candidate
        while probe(hi) is None:  # pragma: no cover - top candidate is feasible
            hi += 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if probe(mid) is not None:
                hi = mid
            else:
                lo = mid
    flagged = False
    if hi > 0 and probe(hi - 1) is not None:
        # monotonicity violation: walk down linearly and flag the result
        flagged = True
        while hi > 0 and probe(hi - 1) is not None:
            hi -= 1
    sol = probe(hi)
    assert sol is not None
    sol = TwoDiskSolution(sol.disk1, sol.disk2, cands[hi], list(sol.assignment), dict(sol.branch))
    sol.branch["mode"] = "exact"
    if flagged:
        sol.branch["monotonicity_flag"] = True
    return _expand(sol, points, back)


def solve_bisect(
    points: Sequence[Point], tol: float, cfg: Optional[SolverConfig] = None
) -> TwoDiskSolution:
    """Bisection on [0, meb radius] until the bracket shrinks below
    tol * meb radius; returns the witness at the feasible end."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    cfg = cfg or SolverConfig()
    if not points:
        raise EmptyInputError("solve needs points")
    uniq, back = _dedupe(list(points))
    from .nearby import candidate_centers

    full = meb(uniq)
    probes: list[tuple[float, bool]] = []
    if full.radius == 0.0:
        sol = solution_from_disks(
            uniq, Disk(uniq[0], 0.0), Disk(uniq[0], 0.0), 0.0, branch={"method": "tiny"}
        )
        sol.branch["mode"] = "bisect"
        sol.branch["probes"] = probes
        return _expand(sol, points, back)
    centers = candidate_centers(uniq)
    lo = 0.0
    hi = full.radius
    best = solution_from_disks(
        uniq, full, Disk(uniq[0], 0.0), full.radius, branch={"method": "trivial"}
    )
    probes.append((hi, True))
    while hi - lo > tol * full.radius:
        mid = 0.5 * (lo + hi)
        sol = feasible(uniq, mid, cfg, centers=centers)
        probes.append((mid, sol is not None))
        if sol is not None:
            hi = mid
            best = sol
        else:
            lo = mid
    out = TwoDiskSolution(best.disk1, best.disk2, hi, list(best.assignment), dict(best.branch))
    out.branch["mode"] = "bisect"
    out.branch["probes"] = probes
    return _expand(out, points, back)


def oracle_solve(points: Sequence[Point]) -> TwoDiskSolution:
    """Exact reference by exhaustive 2-partition; guarded to 16 points."""
    if not points:
        raise EmptyInputError("oracle needs points")
    uniq, back = _dedupe(list(points))
    n = len(uniq)
    if n > _ORACLE_CAP:
        raise TooLargeError(f"oracle capped at {_ORACLE_CAP} points, got {n}")
    if n == 1:
        sol = solution_from_disks(
            uniq, Disk(uniq[0], 0.0), Disk(uniq[0], 0.0), 0.0, branch={"method": "oracle"}
        )
        return _expand(sol, points, back)
    best_r = math.inf
    best: Optional[tuple[Disk, Disk, int]] = None
    for mask in range(2 ** (n - 1)):
        side1 = [uniq[0]]
        side2 = []
        for k in range(1, n):
            (side1 if (mask >> (k - 1)) & 1 else side2).append(uniq[k])
        d1 = meb(side1)
        d2 = meb(side2) if side2 else Disk(side1[0], 0.0)
        r = max(d1.radius, d2.radius)
        if r < best_r - 1e-18:
            best_r = r
            best = (d1, d2, mask)
    assert best is not None
    d1, d2, _ = best
    sol = solution_from_disks(uniq, d1, d2, best_r, branch={"method": "oracle"})
    assert sol is not None
    return _expand(sol, points, back)
