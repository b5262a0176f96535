"""Solver configuration knobs."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class SolverConfig:
    # rotation frames over 180 degrees; 24 keeps cos(step/2) > 0.99
    rotations: int = 24
    # exact candidate-radius mode caps n here; larger inputs use bisection
    exact_cap: int = 400
    # relative tolerance of the automatic bisection mode
    bisect_tol: float = 1e-6
    # block size of the FVD block index
    block_size: int = 64
    # branch-level parallelism (1 = sequential)
    jobs: int = 1
