"""Backward-Euler time marching with Picard linearization for Burgers flow.

Each step freezes the convection coefficient at the previous Picard
iterate, assembles the linearized spatial collocation system

    (1/dt) u + c u_x - eps u_xx = u_prev/dt + f,   u = g on the boundary,

and solves it by least squares.  The basis evaluation tables at the fixed
collocation points are computed once per march; only the convection column
scaling and right-hand side change between iterations, so the inner solve
uses the fast normal-equations path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .basis import Basis1D, TensorBasis, build_ladder
from .geometry import BoxTime, Interval, sample_interior
from .assembly import LinearSystem
from .lstsq import solve, solve_normal
from .problems import ProblemSpec
from .solution import Solution

__all__ = ["MarchConfig", "Trajectory", "PicardDivergenceError", "picard_step", "march"]


class PicardDivergenceError(RuntimeError):
    """A Picard iterate became non-finite."""


@dataclass(frozen=True)
class MarchConfig:
    """Parameters of one Burgers-type march."""

    dt: float
    t_end: float
    epsilon: float
    picard_iters: int = 10
    j0: int = -1
    jmax: int = 9
    n_interior: int = 2000
    n_boundary: int = 2
    picard_tol: float = 1e-10
    strategy: str = "grid"
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.dt <= self.t_end:
            raise ValueError("need 0 < dt <= t_end")
        if self.picard_iters < 1:
            raise ValueError("need at least one Picard iteration")
        if self.picard_tol < 0.0:
            raise ValueError("picard_tol must be non-negative")


@dataclass(frozen=True)
class Trajectory:
    """Spatial weight vectors at times 0, dt, 2 dt, ..."""

    times: np.ndarray
    weights_per_time: tuple[np.ndarray, ...]
    basis: TensorBasis

    def __post_init__(self) -> None:
        if len(self.times) != len(self.weights_per_time):
            raise ValueError("one weight vector per time is required")
        if self.times[0] != 0.0:
            raise ValueError("trajectories start at t = 0")

    def solution_at(self, index: int) -> Solution:
        return Solution(self.basis, self.weights_per_time[index])

    def eval_grid(self, xs: np.ndarray) -> np.ndarray:
        """Values u(t_i, x_j) with shape (len(times), len(xs))."""
        rows = self.basis.eval_rows(np.asarray(xs, dtype=float).reshape(-1, 1), (0,))
        return np.vstack([rows @ w for w in self.weights_per_time])


class _StepWorkspace:
    """Fixed collocation points and basis tables reused across time steps."""

    def __init__(self, basis: TensorBasis, cfg: MarchConfig, interval: Interval) -> None:
        self.basis = basis
        self.interior = sample_interior(interval, cfg.n_interior, cfg.strategy, cfg.seed)
        self.boundary = np.array([[interval.lo], [interval.hi]])
        self.value = basis.eval_rows(self.interior, (0,))
        self.deriv1 = basis.eval_rows(self.interior, (1,))
        self.deriv2 = basis.eval_rows(self.interior, (2,))
        self.boundary_rows = basis.eval_rows(self.boundary, (0,))
        # (1/dt) u - eps u_xx rows never change during the march
        self.fixed = self.value / cfg.dt - cfg.epsilon * self.deriv2
        # emphasize the Dirichlet rows like the stationary pipeline does
        rms_pde = float(np.sqrt(np.mean(np.sum(self.fixed**2, axis=1))))
        rms_b = float(np.sqrt(np.mean(np.sum(self.boundary_rows**2, axis=1))))
        self.boundary_weight = 1000.0 * rms_pde / rms_b
        n_rows = self.interior.shape[0] + self.boundary.shape[0]
        self.matrix = np.empty((n_rows, basis.size))
        self.rhs = np.empty(n_rows)
        self.matrix[self.interior.shape[0] :] = self.boundary_weight * self.boundary_rows


def _workspace_for(prev: Solution, cfg: MarchConfig, interval: Interval) -> _StepWorkspace:
    return _StepWorkspace(prev.basis, cfg, interval)


def picard_step(
    prev: Solution,
    cfg: MarchConfig,
    f: Callable[[np.ndarray], np.ndarray],
    g_d: Callable[[np.ndarray], np.ndarray],
    workspace: _StepWorkspace | None = None,
    initial_guess: np.ndarray | None = None,
) -> tuple[np.ndarray, list[float]]:
    """One backward-Euler step solved by Picard iteration.

    f and g_d take spatial points (n, 1) and return source/boundary values
    at the new time level.  Returns the final weights and the history of
    sup-norm changes of the iterate at the interior points.
    """
    if workspace is None:
        lo, hi = prev.basis.axes[0].lo, prev.basis.axes[0].hi
        workspace = _StepWorkspace(prev.basis, cfg, Interval(lo, hi))
    ws = workspace
    n_int = ws.interior.shape[0]

    ws.rhs[:n_int] = (ws.value @ prev.weights) / cfg.dt + f(ws.interior)
    ws.rhs[n_int:] = ws.boundary_weight * g_d(ws.boundary)

    weights = prev.weights if initial_guess is None else initial_guess
    values = ws.value @ weights
    history: list[float] = []
    for k in range(cfg.picard_iters):
        np.multiply(values[:, None], ws.deriv1, out=ws.matrix[:n_int])
        ws.matrix[:n_int] += ws.fixed
        weights = solve_normal(ws.matrix, ws.rhs)
        new_values = ws.value @ weights
        if not np.all(np.isfinite(new_values)):
            raise PicardDivergenceError(f"Picard iterate {k} is non-finite")
        change = float(np.max(np.abs(new_values - values)))
        history.append(change)
        values = new_values
        if change < cfg.picard_tol:
            break
    return weights, history


def march(problem: ProblemSpec, cfg: MarchConfig) -> Trajectory:
    """March a nonlinear problem from its initial state to t_end."""
    if not problem.nonlinear:
        raise ValueError(f"problem {problem.name!r} is linear; solve it in space-time instead")
    if problem.initial is None:
        raise ValueError(f"problem {problem.name!r} has no initial condition")
    if not isinstance(problem.geometry, BoxTime) or len(problem.geometry.space) != 1:
        raise ValueError("marching needs a 1D-space space-time geometry")

    lo, hi = problem.geometry.space[0]
    interval = Interval(lo, hi)
    basis = TensorBasis([build_ladder(cfg.j0, cfg.jmax, lo, hi)])
    ws = _StepWorkspace(basis, cfg, interval)

    def at_time(t: float, fn: Callable[[np.ndarray], np.ndarray]) -> Callable[[np.ndarray], np.ndarray]:
        return lambda xs: fn(np.column_stack([xs, np.full(xs.shape[0], t)]))

    # project the initial condition onto the spatial basis (value fit at the
    # interior and boundary collocation points, boundary rows emphasized)
    h0 = at_time(0.0, problem.initial)
    rms_v = float(np.sqrt(np.mean(np.sum(ws.value**2, axis=1))))
    rms_b = float(np.sqrt(np.mean(np.sum(ws.boundary_rows**2, axis=1))))
    wb = 1000.0 * rms_v / rms_b
    fit = np.vstack([ws.value, wb * ws.boundary_rows])
    target = np.concatenate(
        [h0(ws.interior), wb * at_time(0.0, problem.dirichlet)(ws.boundary)]
    )
    # one-time fit: use the accurate SVD path (the ridge path costs ~5e-5)
    weights0, _ = solve(LinearSystem(fit, target, (("pde", 0, fit.shape[0]),)))

    n_steps = int(round(cfg.t_end / cfg.dt))
    times = cfg.dt * np.arange(n_steps + 1)
    weights_list = [weights0]
    current = Solution(basis, weights0)
    for n in range(1, n_steps + 1):
        t_n = times[n]
        w, _ = picard_step(
            current,
            cfg,
            at_time(t_n, problem.source),
            at_time(t_n, problem.dirichlet),
            workspace=ws,
        )
        weights_list.append(w)
        current = Solution(basis, w)
    return Trajectory(times, tuple(weights_list), basis)
