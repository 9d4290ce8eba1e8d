"""End-to-end run orchestration: problem -> basis -> system -> solution -> report.

Block weighting: boundary and initial rows are scaled so their row-rms
matches the PDE block's row-rms times a fixed emphasis factor (default
1000).  This enforces Dirichlet/initial data nearly exactly, which the
operator rows alone cannot (differential operators annihilate their
homogeneous solutions, so value rows carry all of that information).
Weights are configurable per block; "auto" is the default.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .analysis import ErrorReport, error_report, evaluation_grid
from .assembly import LinearSystem, assemble_system
from .basis import Basis1D, TensorBasis, build_ladder
from .lstsq import SolveReport, default_rcond, solve
from .problems import ProblemSpec, build_collocation
from .solution import Solution

__all__ = ["RunResult", "BlockWeights", "weighted_system", "basis_for", "solve_problem"]

BOUNDARY_EMPHASIS = 1000.0


@dataclass(frozen=True)
class BlockWeights:
    """Scalar row weights per block; None means the auto rms rule."""

    boundary: float | None = None
    initial: float | None = None

    def weight_for(self, tag: str, rms_pde: float, rms_block: float) -> float:
        explicit = getattr(self, tag, None)
        if explicit is not None:
            return float(explicit)
        return BOUNDARY_EMPHASIS * rms_pde / rms_block


def weighted_system(system: LinearSystem, weights: BlockWeights = BlockWeights()) -> LinearSystem:
    """Scale constraint blocks relative to the PDE block's row-rms."""
    matrix = system.matrix.copy()
    rhs = system.rhs.copy()
    pde = system.rows_for("pde")
    rms_pde = float(np.sqrt(np.mean(np.sum(matrix[pde] ** 2, axis=1))))
    for tag, start, stop in system.block_tags:
        if tag == "pde":
            continue
        rows = slice(start, stop)
        rms_block = float(np.sqrt(np.mean(np.sum(matrix[rows] ** 2, axis=1))))
        if rms_block == 0.0:
            continue
        w = weights.weight_for(tag, rms_pde, rms_block)
        matrix[rows] *= w
        rhs[rows] *= w
    return LinearSystem(matrix, rhs, system.block_tags)


def basis_for(spec: ProblemSpec, ladders) -> TensorBasis:
    """Per-axis ladders over the problem geometry's bounding box."""
    bounds = spec.geometry.bounds
    if len(ladders) != len(bounds):
        raise ValueError(
            f"problem {spec.name!r} has {len(bounds)} axes but got {len(ladders)} ladders"
        )
    return TensorBasis(
        [build_ladder(j0, jmax, lo, hi) for (j0, jmax), (lo, hi) in zip(ladders, bounds)]
    )


@dataclass(frozen=True)
class RunResult:
    spec: ProblemSpec
    basis: TensorBasis
    solution: Solution
    system: LinearSystem
    report: SolveReport
    error: ErrorReport | None
    grid: np.ndarray
    elapsed_seconds: float
    # full-domain error with basis-scale neighborhoods of known target
    # discontinuities excluded (fit benchmarks); None otherwise
    error_smooth: float | None = None


# fit targets with jump discontinuities: error away from the jumps is the
# meaningful convergence measure (any L2 including them floors at O(sqrt(h)))
_JUMP_POINTS: dict[str, tuple[float, ...]] = {"repr_f1": (-0.8, -0.5)}
_JUMP_RADIUS = 0.05


def solve_problem(
    spec: ProblemSpec,
    ladders=None,
    n_interior: int | None = None,
    n_boundary: int | None = None,
    n_initial: int | None = None,
    strategy: str | None = None,
    seed: int | None = None,
    rcond: float | None = None,
    weights: BlockWeights = BlockWeights(),
    eval_points: int | None = None,
) -> RunResult:
    """Assemble, weight, solve and evaluate one linear problem."""
    if spec.nonlinear:
        raise ValueError(f"problem {spec.name!r} is nonlinear; use timestepper.march")
    d = spec.defaults
    ladders = ladders if ladders is not None else d["ladders"]
    n_interior = n_interior if n_interior is not None else d["n_interior"]
    n_boundary = n_boundary if n_boundary is not None else d["n_boundary"]
    n_initial = n_initial if n_initial is not None else d.get("n_initial", 0)
    strategy = strategy or d["strategy"]
    seed = seed if seed is not None else d["seed"]

    t0 = time.perf_counter()
    basis = basis_for(spec, ladders)
    axis_counts = None
    if strategy == "grid" and basis.ndim > 1:
        # keep each axis sampled above its ladder's Nyquist rate; an equal
        # per-axis split aliases the finer axis and collapses the rank
        nyquist = [2.0 ** (jmax + 1) for (_j0, jmax) in ladders]
        r = (n_interior / np.prod(nyquist)) ** (1.0 / basis.ndim)
        axis_counts = tuple(max(2, round(r * s)) for s in nyquist)
    colloc = build_collocation(
        spec, n_interior, n_boundary, n_initial, strategy, seed, axis_counts
    )
    system = assemble_system(basis, spec.operator, colloc)
    weights_vec, report = solve(weighted_system(system, weights), rcond)
    solution = Solution(basis, weights_vec)

    grid = evaluation_grid(spec.geometry, eval_points)
    error = None
    error_smooth = None
    if spec.exact is not None:
        error = error_report(solution.eval(grid), spec.exact(grid), grid)
        jumps = _JUMP_POINTS.get(spec.name)
        if jumps:
            keep = np.ones(grid.shape[0], dtype=bool)
            for x0 in jumps:
                keep &= np.abs(grid[:, 0] - x0) > _JUMP_RADIUS
            error_smooth = error_report(
                solution.eval(grid[keep]), spec.exact(grid[keep]), grid[keep]
            ).relative_l2
    elapsed = time.perf_counter() - t0
    return RunResult(spec, basis, solution, system, report, error, grid, elapsed, error_smooth)
