"""Problem registry: examples, overrides, and symbolic source-term validation."""

from __future__ import annotations

import math

import numpy as np
import pytest
import sympy as sp

from pimwnn.geometry import sample_boundary, sample_interior
from pimwnn.problems import (
    ExactUnavailableError,
    ParameterError,
    UnknownProblemError,
    exact_eval,
    make_problem,
    problem_names,
)

X, Y, T = sp.symbols("x y t")


def test_registry_has_thirteen_entries():
    names = problem_names()
    assert len(names) == 13
    assert "burgers" in names
    assert "helmholtz1d" in names


def test_unknown_problem():
    with pytest.raises(UnknownProblemError, match="no_such_problem"):
        make_problem("no_such_problem")


def test_invalid_override():
    with pytest.raises(ParameterError):
        make_problem("diff1d", {"v": 1.0})
    with pytest.raises(ParameterError):
        make_problem("advdiff1d", {"v": -1.0})


def test_adv1d_exact_value():
    spec = make_problem("adv1d")
    assert exact_eval(spec, [0.25]) == pytest.approx(0.0, abs=1e-15)


def test_gauss_peak_on_characteristic():
    spec = make_problem("adv_space_time_gauss")
    assert exact_eval(spec, [0.5, 0.5]) == pytest.approx(1.0)


def test_f1_at_origin():
    spec = make_problem("repr_f1")
    assert exact_eval(spec, [0.0]) == pytest.approx(1.0)


def test_f2_at_origin():
    spec = make_problem("repr_f2")
    assert exact_eval(spec, [0.0, 0.0]) == pytest.approx(1.0)


def test_growing_diffusion_initial_profile():
    spec = make_problem("growing_diffusion")
    k = 2 * np.pi
    for x in (-0.7, 0.1, 0.43):
        want = math.sin(k * x) - math.cos(k * x)
        assert exact_eval(spec, [x, 0.0]) == pytest.approx(want, rel=1e-12)


def test_flower_exact_at_center():
    spec = make_problem("flower_diff")
    want = 16 * 0.25 * 0.25 * (0.5 + math.atan(20 * 0.0625) / math.pi)
    assert exact_eval(spec, [0.5, 0.5]) == pytest.approx(want, rel=1e-12)


def test_helmholtz_default_lambda():
    spec = make_problem("helmholtz1d")
    assert "lambda = 10" in spec.description
    # operator has a +lambda u mass term
    assert any(orders == (0,) for _c, orders in spec.operator.terms)


def test_burgers_has_no_closed_form():
    spec = make_problem("burgers")
    with pytest.raises(ExactUnavailableError, match="reference"):
        exact_eval(spec, [0.0, 0.5])
    assert spec.nonlinear
    assert spec.defaults["epsilon"] == pytest.approx(0.01 / math.pi)


def test_burgers_epsilon_override():
    spec = make_problem("burgers", {"epsilon": 0.05})
    assert spec.defaults["epsilon"] == 0.05
    with pytest.raises(ParameterError):
        make_problem("burgers", {"epsilon": -1.0})


def test_homogeneous_bc_override():
    spec = make_problem("adv_space_time_gauss", {"homogeneous_bc": True})
    pts = sample_boundary(spec.geometry, 10, "grid")
    assert not spec.dirichlet(pts).any()


# --- symbolic manufactured-solution oracle -------------------------------------

_V = 0.2
_K = 2 * sp.pi
_SYMBOLIC = {
    "adv1d": (
        sp.sin(2 * sp.pi * X) * sp.cos(4 * sp.pi * X) + 1,
        lambda u: u.diff(X),
        (X,),
    ),
    "diff1d": (
        sp.sin(sp.pi * X / 2) * sp.cos(2 * sp.pi * X) + 1,
        lambda u: u.diff(X, 2),
        (X,),
    ),
    "advdiff1d": (
        (sp.exp(X / _V) - 1) / (sp.exp(sp.Integer(1) / _V) - 1),
        lambda u: u.diff(X) - _V * u.diff(X, 2),
        (X,),
    ),
    "helmholtz1d": (
        (X**2 + 1) / 2 * sp.exp(sp.cos(40 * X**3 - 24)),
        lambda u: -u.diff(X, 2) + 10 * u,
        (X,),
    ),
    "adv2d": (
        sp.cos(sp.pi * X) * sp.sin(sp.pi * Y) / 2,
        lambda u: u.diff(X) + u.diff(Y),
        (X, Y),
    ),
    "diff2d": (
        sp.Rational(1, 2) + sp.exp(-(2 * X**2 + 4 * Y**2)),
        lambda u: u.diff(X, 2) + u.diff(Y, 2),
        (X, Y),
    ),
    "flower_diff": (
        16 * X * (1 - X) * Y * (1 - Y)
        * (sp.Rational(1, 2) + sp.atan(20 * (sp.Rational(1, 16) - (X - sp.Rational(1, 2)) ** 2 - (Y - sp.Rational(1, 2)) ** 2)) / sp.pi),
        lambda u: u.diff(X, 2) + u.diff(Y, 2),
        (X, Y),
    ),
    "adv_space_time_packet": (
        sp.exp(-5 * (X - T) ** 2) * sp.sin(10 * sp.pi * (X - T)),
        lambda u: u.diff(X) + u.diff(T),
        (X, T),
    ),
    "adv_space_time_gauss": (
        sp.exp(-50 * (X - T) ** 2),
        lambda u: u.diff(X) + u.diff(T),
        (X, T),
    ),
    "growing_diffusion": (
        sp.exp(T) * (sp.sin(_K * X) - sp.cos(_K * X)),
        lambda u: u.diff(T) - u.diff(X, 2),
        (X, T),
    ),
}


def check_manufactured_sources() -> None:
    """The registered source of every linear problem with a closed-form
    solution must match the operator applied symbolically to that solution
    at 200 random interior points, to 1e-8 relative (with a unit floor for
    the homogeneous cases)."""
    for name, (u_expr, apply_op, symbols) in _SYMBOLIC.items():
        spec = make_problem(name)
        f_expr = sp.simplify(apply_op(u_expr))
        f_num = sp.lambdify(symbols, f_expr, "numpy")
        pts = sample_interior(spec.geometry, 200, "random", seed=17)
        cols = [pts[:, i] for i in range(pts.shape[1])]
        want = np.broadcast_to(np.asarray(f_num(*cols), dtype=float), (pts.shape[0],))
        got = spec.source(pts)
        gap = np.linalg.norm(got - want)
        assert gap <= 1e-8 * (1.0 + np.linalg.norm(want)), (name, gap)


def test_manufactured_sources():
    check_manufactured_sources()


def check_exact_against_symbolic() -> None:
    """The registered exact solutions agree with their symbolic definitions."""
    for name, (u_expr, _op, symbols) in _SYMBOLIC.items():
        spec = make_problem(name)
        u_num = sp.lambdify(symbols, u_expr, "numpy")
        pts = sample_interior(spec.geometry, 50, "random", seed=23)
        cols = [pts[:, i] for i in range(pts.shape[1])]
        want = np.asarray(u_num(*cols), dtype=float)
        assert np.allclose(spec.exact(pts), want, rtol=1e-12, atol=1e-12), name


def test_exact_against_symbolic():
    check_exact_against_symbolic()


def check_boundary_consistency() -> None:
    """Dirichlet data equals the exact trace on 50 boundary samples."""
    for name in problem_names():
        spec = make_problem(name)
        if spec.exact is None:
            continue
        pts = sample_boundary(spec.geometry, 50, "grid")
        assert np.allclose(spec.dirichlet(pts), spec.exact(pts), rtol=0, atol=1e-10), name


def test_boundary_consistency():
    check_boundary_consistency()


def test_initial_data_consistency():
    for name in ("adv_space_time_packet", "adv_space_time_gauss", "growing_diffusion"):
        spec = make_problem(name)
        from pimwnn.geometry import sample_initial

        pts = sample_initial(spec.geometry, 50, "grid")
        assert np.allclose(spec.initial(pts), spec.exact(pts), rtol=0, atol=1e-10), name


def test_f1_piecewise_branches():
    spec = make_problem("repr_f1")
    pts = np.array([[-0.9], [-0.6], [0.0], [0.55], [0.7], [0.9]])
    vals = spec.exact(pts)
    assert vals[0] == 0.0  # outside the pulse
    assert vals[1] == 1.0  # inside the pulse
    assert vals[2] == 1.0  # gaussian peak
    assert vals[3] == pytest.approx(20 / 3 * 0.55 - 10 / 3)
    assert vals[4] == pytest.approx(-20 / 3 * 0.7 + 16 / 3)
    assert vals[5] == 0.0


def test_registry_covers_bench_tables():
    from pimwnn.bench import SUITES

    names = set(problem_names())
    for row in SUITES["all"]:
        assert row.problem in names
