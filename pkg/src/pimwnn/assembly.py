"""Collocation of a linear differential operator into a dense block system.

The assembled least-squares system stacks one row per collocation point:
operator rows for interior points, plain evaluation rows for Dirichlet
boundary points, and (for space-time problems) evaluation rows at t = 0 for
initial points.  Row blocks are tagged so residuals can be split by role.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .basis import TensorBasis

__all__ = [
    "LinearOperator",
    "CollocationSet",
    "LinearSystem",
    "assemble_block",
    "assemble_system",
]

# point-chunk size for assembly; bounds the (chunk, basis) temporaries
_CHUNK = 2048

Coefficient = float | Callable[[np.ndarray], np.ndarray]


class LinearOperator:
    """Sum of coefficient * mixed-derivative terms.

    Each term is (coefficient, orders) where orders[a] <= 2 is the
    derivative order along axis a and the coefficient is a constant or a
    function of the point array (n, d) -> (n,).
    """

    def __init__(self, terms: Sequence[tuple[Coefficient, Sequence[int]]]) -> None:
        if not terms:
            raise ValueError("operator needs at least one term")
        ndim = len(terms[0][1])
        norm: list[tuple[Callable[[np.ndarray], np.ndarray], tuple[int, ...]]] = []
        for coeff, orders in terms:
            orders = tuple(int(o) for o in orders)
            if len(orders) != ndim:
                raise ValueError("all terms must share the operator dimension")
            if any(o < 0 or o > 2 for o in orders):
                raise ValueError(f"unsupported derivative order in {orders}; orders must be 0..2")
            if callable(coeff):
                norm.append((coeff, orders))
            else:
                c = float(coeff)
                norm.append((lambda pts, c=c: np.full(pts.shape[0], c), orders))
        self.terms = tuple(norm)
        self.ndim = ndim

    @classmethod
    def identity(cls, ndim: int) -> "LinearOperator":
        return cls([(1.0, (0,) * ndim)])


@dataclass(frozen=True)
class CollocationSet:
    """Sample points with target values, split by role.

    interior carries source values f(x); boundary carries Dirichlet values
    g(x); initial (possibly empty) carries h0(x) at t = 0.
    """

    interior: np.ndarray
    interior_values: np.ndarray
    boundary: np.ndarray
    boundary_values: np.ndarray
    initial: np.ndarray | None = None
    initial_values: np.ndarray | None = None

    @property
    def ndim(self) -> int:
        return self.interior.shape[1]


@dataclass(frozen=True)
class LinearSystem:
    """Dense stacked collocation matrix with right-hand side and row tags."""

    matrix: np.ndarray
    rhs: np.ndarray
    block_tags: tuple[tuple[str, int, int], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def rows_for(self, tag: str) -> slice:
        for name, start, stop in self.block_tags:
            if name == tag:
                return slice(start, stop)
        raise KeyError(f"no block tagged {tag!r}")


def assemble_block(basis: TensorBasis, op: LinearOperator, points: np.ndarray) -> np.ndarray:
    """Apply the operator to every basis function at every point.

    Row i, column c is sum over terms of coeff(point_i) * (mixed derivative
    of function c at point_i).
    """
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    if op.ndim != basis.ndim or points.shape[1] != basis.ndim:
        raise ValueError(
            f"dimension mismatch: basis {basis.ndim}, operator {op.ndim}, "
            f"points {points.shape[1]}"
        )
    n = points.shape[0]
    out = np.zeros((n, basis.size))
    for start in range(0, n, _CHUNK):
        chunk = points[start : start + _CHUNK]
        block = out[start : start + chunk.shape[0]]
        for coeff, orders in op.terms:
            c = np.asarray(coeff(chunk), dtype=float)
            block += c[:, None] * basis.eval_rows(chunk, orders)
    return out


def _value_rows(basis: TensorBasis, points: np.ndarray) -> np.ndarray:
    return assemble_block(basis, LinearOperator.identity(basis.ndim), points)


def assemble_system(basis: TensorBasis, op: LinearOperator, colloc: CollocationSet) -> LinearSystem:
    """Stack operator, boundary and initial rows into one least-squares system."""
    if colloc.interior.shape[0] == 0:
        raise ValueError("collocation set has no interior points")
    blocks = [assemble_block(basis, op, colloc.interior)]
    rhs = [np.asarray(colloc.interior_values, dtype=float)]
    tags = [("pde", 0, colloc.interior.shape[0])]
    row = tags[0][2]

    if colloc.boundary.shape[0]:
        blocks.append(_value_rows(basis, colloc.boundary))
        rhs.append(np.asarray(colloc.boundary_values, dtype=float))
        tags.append(("boundary", row, row + colloc.boundary.shape[0]))
        row = tags[-1][2]

    if colloc.initial is not None and colloc.initial.shape[0]:
        blocks.append(_value_rows(basis, colloc.initial))
        rhs.append(np.asarray(colloc.initial_values, dtype=float))
        tags.append(("initial", row, row + colloc.initial.shape[0]))

    return LinearSystem(np.vstack(blocks), np.concatenate(rhs), tuple(tags))
