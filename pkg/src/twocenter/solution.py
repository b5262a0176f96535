"""Two-disk solution record shared by the decision procedures and the solver."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .geom import EPS, Disk, Point, dist


@dataclass
class TwoDiskSolution:
    """A verified pair of congruent-or-smaller disks covering the input.

    ``radius`` is the radius the decision was asked about (both disks fit in
    it); ``assignment`` labels each input point 1 or 2, with points covered
    by both disks labeled 1.  ``branch`` records which decision branch
    produced the witness.
    """

    disk1: Disk
    disk2: Disk
    radius: float
    assignment: list[int]
    branch: dict = field(default_factory=dict)

    def verify(self, points: Sequence[Point], eps: float = EPS) -> bool:
        return verify_solution(points, self, eps=eps)


def verify_solution(points: Sequence[Point], sol: TwoDiskSolution, eps: float = EPS) -> bool:
    """Independent coverage check: labeled disk contains each point, radii fit."""
    if len(sol.assignment) != len(points):
        return False
    tol = sol.radius * (1.0 + eps) + 1e-300
    if sol.disk1.radius > tol or sol.disk2.radius > tol:
        return False
    for p, lab in zip(points, sol.assignment):
        d = sol.disk1 if lab == 1 else sol.disk2
        if not d.contains(p, eps):
            return False
    return True


def solution_from_disks(
    points: Sequence[Point],
    d1: Disk,
    d2: Disk,
    radius: float,
    branch: Optional[dict] = None,
    eps: float = EPS,
) -> Optional[TwoDiskSolution]:
    """Label points against the disks; None unless the pair covers everything."""
    if d1.radius > radius * (1.0 + eps) or d2.radius > radius * (1.0 + eps):
        return None
    assignment = []
    for p in points:
        if d1.contains(p, eps):
            assignment.append(1)
        elif d2.contains(p, eps):
            assignment.append(2)
        else:
            return None
    return TwoDiskSolution(d1, d2, radius, assignment, branch or {})
