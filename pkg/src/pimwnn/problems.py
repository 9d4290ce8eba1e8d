"""Registry of benchmark problems: geometry, operator, data and exact solution.

Each entry packages one experiment (function fits, stationary and
space-time linear PDEs, and the nonlinear viscous Burgers march) so runs
are constructible by name.  Source terms are manufactured from the exact
solutions by hand; the test suite re-derives every one symbolically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .assembly import CollocationSet, LinearOperator
from .geometry import (
    Box,
    BoxTime,
    Geometry,
    Interval,
    StarDomain,
    sample_boundary,
    sample_initial,
    sample_interior,
)

__all__ = [
    "ProblemSpec",
    "UnknownProblemError",
    "ParameterError",
    "ExactUnavailableError",
    "make_problem",
    "exact_eval",
    "problem_names",
    "build_collocation",
]

PointFn = Callable[[np.ndarray], np.ndarray]


class UnknownProblemError(KeyError):
    """Requested name is not in the problem registry."""


class ParameterError(ValueError):
    """An override key or value is not valid for the problem."""


class ExactUnavailableError(RuntimeError):
    """The problem has no closed-form solution."""


@dataclass(frozen=True)
class ProblemSpec:
    """A benchmark problem with data functions and run defaults."""

    name: str
    geometry: Geometry
    operator: LinearOperator | None
    source: PointFn
    dirichlet: PointFn
    initial: PointFn | None = None
    exact: PointFn | None = None
    nonlinear: bool = False
    description: str = ""
    # per-axis (j0, jmax), collocation counts, sampling, march parameters
    defaults: Mapping[str, object] = field(default_factory=dict)
    # documented data inconsistencies opt out of the registration trace check
    trace_check: bool = True

    def __post_init__(self) -> None:
        if self.trace_check and self.exact is not None:
            pts = sample_boundary(self.geometry, 50, "grid")
            if not np.allclose(self.dirichlet(pts), self.exact(pts), rtol=0.0, atol=1e-10):
                raise ValueError(f"{self.name}: boundary data disagrees with exact solution")
            if self.initial is not None and isinstance(self.geometry, BoxTime):
                pts0 = sample_initial(self.geometry, 50, "grid")
                if not np.allclose(self.initial(pts0), self.exact(pts0), rtol=0.0, atol=1e-10):
                    raise ValueError(f"{self.name}: initial data disagrees with exact solution")


def _col(points: np.ndarray, axis: int) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    return pts[:, axis]


def _zeros(points: np.ndarray) -> np.ndarray:
    pts = np.asarray(points)
    return np.zeros(pts.shape[0] if pts.ndim > 1 else pts.size)


# --- sharp-gradient fit targets ------------------------------------------


def _f1(points: np.ndarray) -> np.ndarray:
    x = _col(points, 0)
    out = np.zeros_like(x)
    m = x <= -0.5
    out[m] = 0.5 * (np.sign(x[m] + 0.8) - np.sign(x[m] + 0.5))
    m = (x > -0.5) & (x <= 0.5)
    out[m] = np.exp(-100.0 * x[m] ** 2)
    m = (x > 0.5) & (x <= 0.65)
    out[m] = 20.0 / 3.0 * x[m] - 10.0 / 3.0
    m = (x > 0.65) & (x <= 0.8)
    out[m] = -20.0 / 3.0 * x[m] + 16.0 / 3.0
    return out


def _f2(points: np.ndarray) -> np.ndarray:
    x, y = _col(points, 0), _col(points, 1)
    return np.exp(-20.0 * (x**2 + y**2))


# --- registry ---------------------------------------------------------------


def _make_repr_f1() -> ProblemSpec:
    return ProblemSpec(
        name="repr_f1",
        geometry=Interval(-1.0, 1.0),
        operator=LinearOperator.identity(1),
        source=_f1,
        dirichlet=_f1,
        exact=_f1,
        description=(
            "fit of a piecewise target on [-1,1]: square pulse on [-0.8,-0.5], "
            "exp(-100 x^2) on (-0.5,0.5], a triangle on (0.5,0.8], else 0"
        ),
        defaults={
            "ladders": ((0, 9),),
            "n_interior": 5000,
            "n_boundary": 2,
            "strategy": "grid",
            "seed": 0,
        },
    )


def _make_repr_f2() -> ProblemSpec:
    return ProblemSpec(
        name="repr_f2",
        geometry=Box(((-0.5, 0.5), (-0.5, 0.5))),
        operator=LinearOperator.identity(2),
        source=_f2,
        dirichlet=_f2,
        exact=_f2,
        description="fit of exp(-20 (x^2 + y^2)) on [-0.5,0.5]^2",
        defaults={
            "ladders": ((0, 3), (0, 3)),
            "n_interior": 2000,
            "n_boundary": 400,
            "strategy": "random",
            "seed": 0,
        },
    )


def _make_adv1d() -> ProblemSpec:
    def exact(points):
        x = _col(points, 0)
        return np.sin(2 * np.pi * x) * np.cos(4 * np.pi * x) + 1.0

    def source(points):
        x = _col(points, 0)
        return 2 * np.pi * np.cos(2 * np.pi * x) * np.cos(4 * np.pi * x) - 4 * np.pi * np.sin(
            2 * np.pi * x
        ) * np.sin(4 * np.pi * x)

    return ProblemSpec(
        name="adv1d",
        geometry=Interval(0.0, 1.0),
        operator=LinearOperator([(1.0, (1,))]),
        source=source,
        dirichlet=exact,
        exact=exact,
        description="u_x = f on (0,1); exact u = sin(2 pi x) cos(4 pi x) + 1",
        defaults={
            "ladders": ((0, 3),),
            "n_interior": 100,
            "n_boundary": 2,
            "strategy": "grid",
            "seed": 0,
        },
    )


def _make_diff1d() -> ProblemSpec:
    a, b = np.pi / 2.0, 2.0 * np.pi

    def exact(points):
        x = _col(points, 0)
        return np.sin(a * x) * np.cos(b * x) + 1.0

    def source(points):
        x = _col(points, 0)
        return -(a**2 + b**2) * np.sin(a * x) * np.cos(b * x) - 2 * a * b * np.cos(
            a * x
        ) * np.sin(b * x)

    return ProblemSpec(
        name="diff1d",
        geometry=Interval(0.0, 1.0),
        operator=LinearOperator([(1.0, (2,))]),
        source=source,
        dirichlet=exact,
        exact=exact,
        description="u_xx = f on (0,1); exact u = sin(pi x / 2) cos(2 pi x) + 1",
        defaults={
            "ladders": ((0, 3),),
            "n_interior": 100,
            "n_boundary": 2,
            "strategy": "grid",
            "seed": 0,
        },
    )


def _make_advdiff1d(v: float = 0.2) -> ProblemSpec:
    if v <= 0:
        raise ParameterError("viscosity v must be positive")

    def exact(points):
        x = _col(points, 0)
        # (e^(x/v) - 1) / (e^(1/v) - 1), written to avoid overflow for small v
        return (np.exp((x - 1.0) / v) - math.exp(-1.0 / v)) / (1.0 - math.exp(-1.0 / v))

    return ProblemSpec(
        name="advdiff1d",
        geometry=Interval(0.0, 1.0),
        operator=LinearOperator([(1.0, (1,)), (-v, (2,))]),
        source=_zeros,
        dirichlet=exact,
        exact=exact,
        description=f"u_x - v u_xx = 0 on (0,1), v = {v}; exact u = (e^(x/v)-1)/(e^(1/v)-1)",
        defaults={
            "ladders": ((0, 5),),
            "n_interior": 100,
            "n_boundary": 2,
            "strategy": "grid",
            "seed": 0,
        },
    )


def _make_helmholtz1d(lam: float = 10.0) -> ProblemSpec:
    def parts(x):
        h = 40.0 * x**3 - 24.0
        e = np.exp(np.cos(h))
        p = 0.5 * (x**2 + 1.0)
        return h, e, p

    def exact(points):
        x = _col(points, 0)
        _, e, p = parts(x)
        return p * e

    def source(points):
        x = _col(points, 0)
        h, e, p = parts(x)
        hp = 120.0 * x**2
        hpp = 240.0 * x
        gp = -np.sin(h) * hp
        gpp = -np.cos(h) * hp**2 - np.sin(h) * hpp
        u = p * e
        upp = e * (1.0 + 2.0 * x * gp + p * (gp**2 + gpp))
        return -upp + lam * u

    return ProblemSpec(
        name="helmholtz1d",
        geometry=Interval(0.0, 1.0),
        operator=LinearOperator([(-1.0, (2,)), (lam, (0,))]),
        source=source,
        dirichlet=exact,
        exact=exact,
        description=(
            f"-u_xx + lambda u = f on (0,1), lambda = {lam}; "
            "exact u = (x^2+1)/2 exp(cos(40 x^3 - 24)) (high-frequency)"
        ),
        defaults={
            "ladders": ((0, 7),),
            "n_interior": 20000,
            "n_boundary": 2,
            "strategy": "grid",
            "seed": 0,
        },
    )


def _make_adv2d(a: float = 1.0, b: float = 1.0) -> ProblemSpec:
    def exact(points):
        x, y = _col(points, 0), _col(points, 1)
        return 0.5 * np.cos(np.pi * x) * np.sin(np.pi * y)

    def source(points):
        x, y = _col(points, 0), _col(points, 1)
        ux = -0.5 * np.pi * np.sin(np.pi * x) * np.sin(np.pi * y)
        uy = 0.5 * np.pi * np.cos(np.pi * x) * np.cos(np.pi * y)
        return a * ux + b * uy

    return ProblemSpec(
        name="adv2d",
        geometry=Box(((-1.0, 1.0), (-1.0, 1.0))),
        operator=LinearOperator([(a, (1, 0)), (b, (0, 1))]),
        source=source,
        dirichlet=exact,
        exact=exact,
        description=(
            f"a u_x + b u_y = f on [-1,1]^2, a = {a}, b = {b}; "
            "exact u = cos(pi x) sin(pi y) / 2"
        ),
        defaults={
            "ladders": ((0, 4), (0, 4)),
            "n_interior": 5000,
            "n_boundary": 400,
            "strategy": "random",
            "seed": 0,
        },
    )


def _make_diff2d() -> ProblemSpec:
    def exact(points):
        x, y = _col(points, 0), _col(points, 1)
        return 0.5 + np.exp(-(2.0 * x**2 + 4.0 * y**2))

    def source(points):
        x, y = _col(points, 0), _col(points, 1)
        e = np.exp(-(2.0 * x**2 + 4.0 * y**2))
        return (16.0 * x**2 + 64.0 * y**2 - 12.0) * e

    return ProblemSpec(
        name="diff2d",
        geometry=Box(((-1.0, 1.0), (-1.0, 1.0))),
        operator=LinearOperator([(1.0, (2, 0)), (1.0, (0, 2))]),
        source=source,
        dirichlet=exact,
        exact=exact,
        description="u_xx + u_yy = f on [-1,1]^2; exact u = 1/2 + exp(-(2x^2 + 4y^2))",
        defaults={
            "ladders": ((0, 3), (0, 3)),
            "n_interior": 1000,
            "n_boundary": 100,
            "strategy": "random",
            "seed": 0,
        },
    )


def _make_flower_diff(base: float = 0.2, amp: float = 0.15, lobes: int = 5) -> ProblemSpec:
    def pieces(x, y):
        ax = 16.0 * x * (1.0 - x)
        by = y * (1.0 - y)
        w = 20.0 * (0.0625 - (x - 0.5) ** 2 - (y - 0.5) ** 2)
        bump = 0.5 + np.arctan(w) / np.pi
        return ax, by, w, bump

    def exact(points):
        x, y = _col(points, 0), _col(points, 1)
        ax, by, _, bump = pieces(x, y)
        return ax * by * bump

    def source(points):
        x, y = _col(points, 0), _col(points, 1)
        ax, by, w, bump = pieces(x, y)
        axp, axpp = 16.0 - 32.0 * x, -32.0
        byp, bypp = 1.0 - 2.0 * y, -2.0
        wx, wy, wxx = -40.0 * (x - 0.5), -40.0 * (y - 0.5), -40.0
        den = 1.0 + w**2
        bx = wx / (np.pi * den)
        by_ = wy / (np.pi * den)
        bxx = (wxx * den - 2.0 * w * wx**2) / (np.pi * den**2)
        byy = (wxx * den - 2.0 * w * wy**2) / (np.pi * den**2)
        uxx = axpp * by * bump + 2.0 * axp * by * bx + ax * by * bxx
        uyy = ax * bypp * bump + 2.0 * ax * byp * by_ + ax * by * byy
        return uxx + uyy

    return ProblemSpec(
        name="flower_diff",
        geometry=StarDomain(center=(0.5, 0.5), base=base, amp=amp, lobes=lobes),
        operator=LinearOperator([(1.0, (2, 0)), (1.0, (0, 2))]),
        source=source,
        dirichlet=exact,
        exact=exact,
        description=(
            "u_xx + u_yy = f on a flower-shaped domain, boundary radius "
            f"r(theta) = {base} + {amp} sin({lobes} theta) around (0.5, 0.5); "
            "exact u = 16x(1-x)y(1-y)(1/2 + arctan(20(1/16 - (x-1/2)^2 - (y-1/2)^2))/pi)"
        ),
        defaults={
            "ladders": ((0, 4), (0, 4)),
            "n_interior": 2000,
            "n_boundary": 400,
            "strategy": "random",
            "seed": 0,
        },
    )


def _packet_exact(points):
    x, t = _col(points, 0), _col(points, 1)
    s = x - t
    return np.exp(-5.0 * s**2) * np.sin(10.0 * np.pi * s)


def _gauss_exact(points):
    x, t = _col(points, 0), _col(points, 1)
    return np.exp(-50.0 * (x - t) ** 2)


def _make_space_time_advection(
    name: str, exact: PointFn, description: str, defaults: dict, homogeneous_bc: bool = False
) -> ProblemSpec:
    return ProblemSpec(
        name=name,
        geometry=BoxTime(((-1.0, 1.0),), 0.5),
        operator=LinearOperator([(1.0, (1, 0)), (1.0, (0, 1))]),
        source=_zeros,
        dirichlet=_zeros if homogeneous_bc else exact,
        initial=exact,
        exact=exact,
        description=description,
        defaults=defaults,
        # u(+-1, t) = 0 is only approximately consistent with the exact
        # solution's boundary trace (~1e-5 tails), so skip the exactness check
        trace_check=not homogeneous_bc,
    )


def _make_packet(homogeneous_bc: bool = False) -> ProblemSpec:
    return _make_space_time_advection(
        "adv_space_time_packet",
        _packet_exact,
        "u_t + u_x = 0 on (-1,1)x(0,0.5]; exact u = exp(-5(x-t)^2) sin(10 pi (x-t))",
        {
            "ladders": ((0, 5), (0, 4)),
            "n_interior": 24000,
            "n_boundary": 200,
            "n_initial": 500,
            "strategy": "grid",
            "seed": 0,
        },
        homogeneous_bc,
    )


def _make_gauss(homogeneous_bc: bool = False) -> ProblemSpec:
    return _make_space_time_advection(
        "adv_space_time_gauss",
        _gauss_exact,
        "u_t + u_x = 0 on (-1,1)x(0,0.5]; exact u = exp(-50(x-t)^2)",
        {
            "ladders": ((0, 5), (0, 3)),
            "n_interior": 5000,
            "n_boundary": 100,
            "n_initial": 200,
            "strategy": "grid",
            "seed": 0,
        },
        homogeneous_bc,
    )


def _make_growing_diffusion(k1: float = 2.0 * np.pi, k2: float = 2.0 * np.pi) -> ProblemSpec:
    def shape(x):
        return np.sin(k1 * x) - np.cos(k2 * x)

    def exact(points):
        x, t = _col(points, 0), _col(points, 1)
        return np.exp(t) * shape(x)

    def source(points):
        # manufactured from the exact solution: u_t - u_xx
        x, t = _col(points, 0), _col(points, 1)
        return np.exp(t) * ((1.0 + k1**2) * np.sin(k1 * x) - (1.0 + k2**2) * np.cos(k2 * x))

    def initial(points):
        return shape(_col(points, 0))

    return ProblemSpec(
        name="growing_diffusion",
        geometry=BoxTime(((-1.0, 1.0),), 1.0),
        operator=LinearOperator([(1.0, (0, 1)), (-1.0, (2, 0))]),
        source=source,
        dirichlet=exact,
        initial=initial,
        exact=exact,
        description=(
            "u_t - u_xx = f on (-1,1)x(0,1], amplitude growing like e^t; "
            f"exact u = e^t (sin(k1 x) - cos(k2 x)), k1 = {k1:.6g}, k2 = {k2:.6g}"
        ),
        defaults={
            "ladders": ((0, 4), (0, 3)),
            "n_interior": 4000,
            "n_boundary": 200,
            "n_initial": 200,
            "strategy": "grid",
            "seed": 0,
        },
    )


def _make_burgers(epsilon: float = 0.01 / math.pi) -> ProblemSpec:
    if epsilon <= 0:
        raise ParameterError("viscosity epsilon must be positive")

    def initial(points):
        return -np.sin(np.pi * _col(points, 0))

    return ProblemSpec(
        name="burgers",
        geometry=BoxTime(((-1.0, 1.0),), 1.0),
        operator=None,
        source=_zeros,
        dirichlet=_zeros,
        initial=initial,
        exact=None,
        nonlinear=True,
        description=(
            f"u_t + u u_x = eps u_xx on (-1,1)x(0,1], eps = {epsilon:.8g}; "
            "u(x,0) = -sin(pi x), u(+-1,t) = 0; reference solution from golden file"
        ),
        defaults={
            "ladders": ((-1, 9),),
            "n_interior": 2000,
            "n_boundary": 2,
            "strategy": "grid",
            "seed": 0,
            "dt": 0.001,
            "t_end": 1.0,
            "picard_iters": 10,
            "epsilon": epsilon,
        },
    )


_REGISTRY: dict[str, Callable[..., ProblemSpec]] = {
    "repr_f1": _make_repr_f1,
    "repr_f2": _make_repr_f2,
    "adv1d": _make_adv1d,
    "diff1d": _make_diff1d,
    "advdiff1d": _make_advdiff1d,
    "helmholtz1d": _make_helmholtz1d,
    "adv2d": _make_adv2d,
    "diff2d": _make_diff2d,
    "flower_diff": _make_flower_diff,
    "adv_space_time_packet": _make_packet,
    "adv_space_time_gauss": _make_gauss,
    "growing_diffusion": _make_growing_diffusion,
    "burgers": _make_burgers,
}

_OVERRIDE_KEYS: dict[str, tuple[str, ...]] = {
    "repr_f1": (),
    "repr_f2": (),
    "adv1d": (),
    "diff1d": (),
    "advdiff1d": ("v",),
    "helmholtz1d": ("lam",),
    "adv2d": ("a", "b"),
    "diff2d": (),
    "flower_diff": ("base", "amp", "lobes"),
    "adv_space_time_packet": ("homogeneous_bc",),
    "adv_space_time_gauss": ("homogeneous_bc",),
    "growing_diffusion": ("k1", "k2"),
    "burgers": ("epsilon",),
}


def problem_names() -> tuple[str, ...]:
    return tuple(_REGISTRY)


def make_problem(name: str, overrides: Mapping[str, object] | None = None) -> ProblemSpec:
    """Build a registered problem, optionally overriding its parameters."""
    if name not in _REGISTRY:
        raise UnknownProblemError(
            f"unknown problem {name!r}; known problems: {', '.join(sorted(_REGISTRY))}"
        )
    overrides = dict(overrides or {})
    allowed = _OVERRIDE_KEYS[name]
    for key in overrides:
        if key not in allowed:
            raise ParameterError(
                f"problem {name!r} does not accept override {key!r}"
                + (f"; allowed: {', '.join(allowed)}" if allowed else "")
            )
    try:
        return _REGISTRY[name](**overrides)
    except TypeError as exc:
        raise ParameterError(str(exc)) from exc


def exact_eval(spec: ProblemSpec, point) -> float:
    """Closed-form solution at one point; errors when none exists."""
    if spec.exact is None:
        raise ExactUnavailableError(
            f"problem {spec.name!r} has no closed-form solution; compare against "
            "the golden reference file (see pimwnn/data) instead"
        )
    return float(spec.exact(np.asarray(point, dtype=float).reshape(1, -1))[0])


def build_collocation(
    spec: ProblemSpec,
    n_interior: int,
    n_boundary: int,
    n_initial: int = 0,
    strategy: str = "grid",
    seed: int = 0,
    axis_counts=None,
) -> CollocationSet:
    """Sample collocation points for a problem and attach target values."""
    interior = sample_interior(spec.geometry, n_interior, strategy, seed, axis_counts)
    boundary = sample_boundary(spec.geometry, n_boundary, strategy, seed + 1)
    initial = None
    initial_values = None
    if spec.initial is not None and n_initial > 0:
        if not isinstance(spec.geometry, BoxTime):
            raise ValueError(f"problem {spec.name!r} has no initial face")
        initial = sample_initial(spec.geometry, n_initial, strategy, seed + 2)
        initial_values = spec.initial(initial)
    return CollocationSet(
        interior=interior,
        interior_values=spec.source(interior),
        boundary=boundary,
        boundary_values=spec.dirichlet(boundary),
        initial=initial,
        initial_values=initial_values,
    )
