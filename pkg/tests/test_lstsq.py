"""Least-squares solver: examples, diagnostics, orthogonality, minimum norm."""

from __future__ import annotations

import numpy as np
import pytest

from pimwnn.assembly import LinearSystem
from pimwnn.lstsq import NonFiniteInputError, residual, solve, solve_normal


def _system(matrix, rhs):
    matrix = np.asarray(matrix, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    return LinearSystem(matrix, rhs, (("pde", 0, matrix.shape[0]),))


def test_identity_system():
    weights, report = solve(_system(np.eye(3), [1.0, 2.0, 3.0]))
    assert np.allclose(weights, [1, 2, 3], rtol=0, atol=1e-14)
    assert report.residual_norm == pytest.approx(0.0, abs=1e-14)
    assert report.rank == 3
    assert report.condition_estimate == pytest.approx(1.0)


def test_consistent_overdetermined():
    weights, report = solve(_system([[1.0], [1.0]], [2.0, 2.0]))
    assert weights[0] == pytest.approx(2.0)
    assert report.residual_norm == pytest.approx(0.0, abs=1e-14)


def test_inconsistent_overdetermined():
    system = _system([[1.0], [1.0]], [0.0, 2.0])
    weights, report = solve(system)
    assert weights[0] == pytest.approx(1.0)
    assert report.residual_norm == pytest.approx(np.sqrt(2.0))
    assert np.allclose(residual(system, weights), [1.0, -1.0])


def test_residual_trivial_cases():
    system = _system(np.eye(2), [3.0, 4.0])
    assert np.allclose(residual(system, np.array([3.0, 4.0])), 0.0)
    assert np.allclose(residual(system, np.zeros(2)), [-3.0, -4.0])
    with pytest.raises(ValueError):
        residual(system, np.zeros(3))


def test_non_finite_matrix_rejected():
    m = np.eye(2)
    m[0, 0] = np.nan
    with pytest.raises(NonFiniteInputError):
        solve(_system(m, [1.0, 2.0]))
    with pytest.raises(ValueError):
        solve(_system(np.eye(2), [1.0, 2.0]), rcond=-1.0)


def test_rcond_truncates_small_singular_values():
    # second direction is 1e-6 weaker; rcond above that collapses the rank
    matrix = np.diag([1.0, 1e-6])
    _, report = solve(_system(matrix, [1.0, 1.0]), rcond=1e-3)
    assert report.rank == 1


def check_orthogonality() -> None:
    """Normal-equation residual orthogonality for well-conditioned systems."""
    rng = np.random.default_rng(5)
    for m, n in ((40, 7), (200, 31), (500, 120)):
        matrix = rng.standard_normal((m, n))
        rhs = rng.standard_normal(m)
        system = _system(matrix, rhs)
        weights, report = solve(system)
        assert report.condition_estimate < 1e8
        gap = np.linalg.norm(matrix.T @ residual(system, weights), ord=np.inf)
        assert gap <= 1e-8 * np.linalg.norm(matrix, "fro") * np.linalg.norm(rhs)


def test_orthogonality():
    check_orthogonality()


def check_minimum_norm() -> None:
    """On a rank-1 3x2 system, adding any null-space vector grows the norm."""
    matrix = np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]])  # rank 1
    rhs = np.array([2.0, 4.0, 6.0])
    weights, report = solve(_system(matrix, rhs))
    assert report.rank == 1
    null = np.array([1.0, -1.0]) / np.sqrt(2.0)
    assert np.linalg.norm(matrix @ null) < 1e-12
    base = np.linalg.norm(weights)
    for alpha in (-2.0, -0.5, 0.5, 2.0):
        assert np.linalg.norm(weights + alpha * null) > base


def test_minimum_norm():
    check_minimum_norm()


def test_solve_normal_matches_svd_path():
    rng = np.random.default_rng(9)
    matrix = rng.standard_normal((60, 12))
    rhs = rng.standard_normal(60)
    fast = solve_normal(matrix, rhs)
    svd, _ = solve(_system(matrix, rhs))
    assert np.allclose(fast, svd, rtol=1e-8, atol=1e-10)


def test_solve_normal_survives_rank_deficiency():
    # duplicated column: the Gram matrix is singular without the ridge
    col = np.linspace(0, 1, 30)
    matrix = np.column_stack([col, col, np.ones(30)])
    rhs = 2 * col + 1
    weights = solve_normal(matrix, rhs)
    assert np.allclose(matrix @ weights, rhs, atol=1e-6)


def test_report_timing_populated():
    _, report = solve(_system(np.eye(4), np.ones(4)))
    assert report.elapsed_seconds >= 0.0
