"""Shannon basis: values, derivatives, ladder bookkeeping, tensor products."""

from __future__ import annotations

import math

import numpy as np
import pytest

from pimwnn.basis import (
    Basis1D,
    BasisIndex,
    LadderError,
    TensorBasis,
    _SERIES_CUTOFF,
    _sinc_closed,
    _sinc_series,
    build_ladder,
    eval_row,
    node_count,
    scaling_eval,
    sinc_deriv,
    tensor_row,
    wavelet_eval,
)

PI = math.pi


# --- sinc_deriv --------------------------------------------------------------


def test_sinc_known_values():
    assert sinc_deriv(0.0, 0) == 1.0
    assert abs(sinc_deriv(1.0, 0)) < 1e-15
    assert sinc_deriv(0.0, 1) == 0.0
    assert sinc_deriv(0.0, 2) == pytest.approx(-PI**2 / 3.0, rel=1e-15)


def test_sinc_rejects_higher_orders():
    with pytest.raises(ValueError):
        sinc_deriv(0.3, 3)
    with pytest.raises(ValueError):
        sinc_deriv(0.3, -1)


def test_sinc_branch_agreement_at_cutoff():
    u = np.array([_SERIES_CUTOFF])
    for order in (0, 1, 2):
        a = float(_sinc_series(u, order)[0])
        b = float(_sinc_closed(u, order)[0])
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


def test_sinc_accepts_arrays():
    u = np.linspace(-2, 2, 101)
    out = sinc_deriv(u, 1)
    assert out.shape == u.shape
    assert np.isfinite(out).all()


# --- scaling / wavelet pointwise ---------------------------------------------


def test_scaling_at_own_node():
    # phi_{2,1} at x = lo + L/4 peaks at 2^{j/2}; zero at other nodes
    assert scaling_eval(2, 1, 0.25, 0.0, 1.0, 0) == pytest.approx(2.0, abs=1e-14)
    assert scaling_eval(2, 1, 0.75, 0.0, 1.0, 0) == pytest.approx(0.0, abs=1e-14)
    assert scaling_eval(2, 1, 0.25, 0.0, 1.0, 1) == pytest.approx(0.0, abs=1e-14)


def test_delta_property():
    for j in (0, 1, 3, 6):
        for k in range(2**j + 1):
            nodes = np.array([m / 2**j for m in range(2**j + 1)])
            vals = scaling_eval(j, k, nodes, 0.0, 1.0, 0)
            want = np.zeros(nodes.size)
            want[k] = 2.0 ** (j / 2.0)
            assert np.allclose(vals, want, rtol=0.0, atol=1e-12 * max(1.0, 2.0 ** (j / 2.0)))


def test_wavelet_at_origin():
    assert wavelet_eval(0, 0, 0.0, 0.0, 1.0, 0) == pytest.approx(1.0, abs=1e-14)
    assert wavelet_eval(1, 0, 0.0, 0.0, 1.0, 0) == pytest.approx(math.sqrt(2.0), rel=1e-14)


def test_wavelet_first_derivative_matches_finite_difference():
    h = 1e-6
    x = 0.3
    fd = (wavelet_eval(3, 2, x + h, 0.0, 1.0, 0) - wavelet_eval(3, 2, x - h, 0.0, 1.0, 0)) / (2 * h)
    an = wavelet_eval(3, 2, x, 0.0, 1.0, 1)
    assert an == pytest.approx(fd, rel=1e-5)


# --- derivative consistency across the ladder ---------------------------------


def _fd1(basis: Basis1D, x: float, h: float) -> np.ndarray:
    return (basis.eval_matrix(np.array([x + h]), 0) - basis.eval_matrix(np.array([x - h]), 0)) / (
        2 * h
    )


def _fd2(basis: Basis1D, x: float, h: float) -> np.ndarray:
    f = lambda xx: basis.eval_matrix(np.array([xx]), 0)
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (
        12 * h * h
    )


def check_derivative_bounds() -> None:
    """First derivative vs central difference (step 1e-6 L, bound 1e-5) and
    second derivative vs a 4th-order stencil (step 3e-5 L, bound 1e-4),
    normalized by 1 + |analytic|, for levels 0..6 at 100 random points."""
    rng = np.random.default_rng(7)
    for j in range(0, 7):
        basis = build_ladder(0, j, 0.0, 1.0)
        xs = rng.uniform(0.001, 0.999, 100)
        for x in xs:
            an1 = basis.eval_matrix(np.array([x]), 1)
            err1 = np.abs(an1 - _fd1(basis, x, 1e-6)) / (1.0 + np.abs(an1))
            assert err1.max() < 1e-5
            an2 = basis.eval_matrix(np.array([x]), 2)
            err2 = np.abs(an2 - _fd2(basis, x, 3e-5)) / (1.0 + np.abs(an2))
            assert err2.max() < 1e-4


def test_derivative_bounds():
    check_derivative_bounds()


# --- ladder construction -------------------------------------------------------


def check_count_formula() -> None:
    for j in range(0, 12):
        assert build_ladder(0, j, 0.0, 1.0).size == 2 ** (j + 1) + j + 2


def test_count_formula():
    check_count_formula()


@pytest.mark.parametrize(
    "j0,jmax,expect",
    [(0, 3, 21), (0, 11, 4109), (0, 0, 4)],
)
def test_ladder_sizes(j0, jmax, expect):
    assert build_ladder(j0, jmax, 0.0, 1.0).size == expect


def test_negative_levels_have_two_shifts():
    assert node_count(-1) == 2
    assert node_count(-5) == 2
    basis = build_ladder(-1, 9, -1.0, 1.0)
    assert basis.size == 1037
    assert [i for i in basis.indices if i.level < 0][0].kind == "scaling"


def test_ladder_ordering():
    basis = build_ladder(0, 2, 0.0, 1.0)
    kinds = [i.kind for i in basis.indices]
    assert kinds == ["scaling"] * 2 + ["wavelet"] * 10
    levels = [i.level for i in basis.indices if i.kind == "wavelet"]
    assert levels == sorted(levels)
    for level in (0, 1, 2):
        shifts = [i.shift for i in basis.indices if i.kind == "wavelet" and i.level == level]
        assert shifts == list(range(2**level + 1))


def test_invalid_ladder():
    with pytest.raises(LadderError):
        build_ladder(3, 2, 0.0, 1.0)
    with pytest.raises(ValueError):
        build_ladder(0, 2, 1.0, 1.0)


def test_bad_shift_rejected():
    with pytest.raises(ValueError):
        BasisIndex("scaling", 2, 5)


# --- row evaluation ------------------------------------------------------------


def test_eval_row_shape_and_node_value():
    basis = build_ladder(0, 0, 0.0, 1.0)
    row = eval_row(basis, 0.0, 0)
    assert row.shape == (4,)
    assert row[0] == pytest.approx(1.0, abs=1e-14)  # scaling k=0 at its node


def test_eval_row_second_derivative_fd():
    basis = build_ladder(0, 3, 0.0, 1.0)
    x, h = 0.37, 1e-4
    fd = (
        basis.eval_matrix(np.array([x + h]), 0)
        - 2 * basis.eval_matrix(np.array([x]), 0)
        + basis.eval_matrix(np.array([x - h]), 0)
    ) / h**2
    an = eval_row(basis, x, 2)
    assert np.allclose(an, fd[0], rtol=1e-4, atol=1e-4)


# --- tensor products -----------------------------------------------------------


def test_tensor_matches_outer_product():
    bx = build_ladder(0, 1, 0.0, 1.0)
    by = build_ladder(0, 2, -1.0, 1.0)
    tb = TensorBasis([bx, by])
    assert tb.size == bx.size * by.size
    row = tensor_row(tb, [0.3, 0.2], [0, 0])
    outer = np.outer(eval_row(bx, 0.3, 0), eval_row(by, 0.2, 0)).ravel()
    assert np.array_equal(row, outer)


def test_tensor_single_axis_equals_eval_row():
    bx = build_ladder(0, 3, 0.0, 1.0)
    tb = TensorBasis([bx])
    for order in (0, 1, 2):
        assert np.array_equal(tensor_row(tb, [0.41], [order]), eval_row(bx, 0.41, order))


def test_tensor_delta_at_grid_node():
    j = 2
    bx = build_ladder(j, j, 0.0, 1.0)
    tb = TensorBasis([bx, bx])
    # point at scaling node (1/4, 2/4): the (k=1, k=2) scaling pair peaks
    row = tensor_row(tb, [0.25, 0.5], [0, 0])
    n = bx.size
    scale_count = node_count(j)
    peak = row[1 * n + 2]
    assert peak == pytest.approx(2.0**j, rel=1e-13)
    for kx in range(scale_count):
        for ky in range(scale_count):
            if (kx, ky) != (1, 2):
                assert abs(row[kx * n + ky]) < 1e-12 * 2.0**j


def test_tensor_mixed_derivative_fd():
    bx = build_ladder(0, 2, 0.0, 1.0)
    by = build_ladder(0, 2, 0.0, 1.0)
    tb = TensorBasis([bx, by])
    h = 1e-6
    p = [0.31, 0.57]
    fd = (tensor_row(tb, [p[0] + h, p[1]], [0, 0]) - tensor_row(tb, [p[0] - h, p[1]], [0, 0])) / (
        2 * h
    )
    an = tensor_row(tb, p, [1, 0])
    assert np.allclose(an, fd, rtol=1e-5, atol=1e-5)


def test_tensor_dimension_mismatch():
    tb = TensorBasis([build_ladder(0, 1, 0.0, 1.0)])
    with pytest.raises(ValueError):
        tensor_row(tb, [0.1, 0.2], [0, 0])
    with pytest.raises(ValueError):
        tensor_row(tb, [0.1], [0, 0])
