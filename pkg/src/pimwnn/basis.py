"""Shannon multiresolution wavelet basis on an interval, plus tensor products.

The one-dimensional family on [lo, hi] (length L) consists of scaling
functions at a coarsest level j0 and wavelets at levels j0..jmax:

    phi_{j,k}(x) = 2^(j/2) sinc(2^j (x - lo)/L - k)
    psi_{j,k}(x) = 2^(j/2) sinc((2^j (x - lo)/L - k)/2) cos(3*pi/2 (2^j (x - lo)/L - k))

with sinc(u) = sin(pi u)/(pi u).  Shifts run over k = 0..ceil(2^j), so the
centers k*L/2^j cover both interval endpoints.  Values and first/second
derivatives are available; every object here is immutable after
construction and evaluation is pure, so concurrent use needs no locking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

__all__ = [
    "BasisIndex",
    "Basis1D",
    "TensorBasis",
    "LadderError",
    "sinc_deriv",
    "scaling_eval",
    "wavelet_eval",
    "build_ladder",
    "eval_row",
    "tensor_row",
    "node_count",
]

_PI = math.pi

# Switch point between the closed form and the Taylor series for sinc
# derivatives.  Below it the closed forms lose digits to cancellation; the
# 4-term series truncation error at |u| = 1e-2 is ~1e-13 relative, so both
# branches agree to ~1e-12 at the seam.
_SERIES_CUTOFF = 1e-2


class LadderError(ValueError):
    """Raised for an inconsistent resolution ladder (j0 > jmax)."""


def _sinc_series(u: np.ndarray, order: int) -> np.ndarray:
    """Taylor branch of the sinc derivatives, valid for small |u|."""
    z = (_PI * u) ** 2
    if order == 0:
        # 1 - z/6 + z^2/120 - z^3/5040
        return 1.0 - z / 6.0 * (1.0 - z / 20.0 * (1.0 - z / 42.0))
    if order == 1:
        # -pi^2 u/3 (1 - z/10 + z^2/280 - z^3/15120)
        return -(_PI**2) * u / 3.0 * (1.0 - z / 10.0 * (1.0 - z / 28.0 * (1.0 - z / 54.0)))
    # -pi^2/3 (1 - 3z/10 + z^2/56 - z^3/2160)
    return -(_PI**2) / 3.0 * (1.0 - 0.3 * z * (1.0 - z / 16.8 * (1.0 - 7.0 * z / 270.0)))


def _sinc_closed(u: np.ndarray, order: int) -> np.ndarray:
    """Closed-form branch of the sinc derivatives, accurate away from 0."""
    pu = _PI * u
    if order == 0:
        return np.sin(pu) / pu
    if order == 1:
        return (pu * np.cos(pu) - np.sin(pu)) / (_PI * u**2)
    return (-(pu**2) * np.sin(pu) - 2.0 * pu * np.cos(pu) + 2.0 * np.sin(pu)) / (_PI * u**3)


def sinc_deriv(u, order: int):
    """Derivative of order 0, 1 or 2 of sinc(u) = sin(pi u)/(pi u).

    Accepts scalars or arrays.  The removable singularity at u = 0 is
    handled by the series branch, so results are finite and smooth.
    """
    if order not in (0, 1, 2):
        raise ValueError(f"derivative order must be 0, 1 or 2, got {order}")
    u_arr = np.asarray(u, dtype=float)
    scalar = u_arr.ndim == 0
    u_arr = np.atleast_1d(u_arr)
    out = np.empty_like(u_arr)
    small = np.abs(u_arr) < _SERIES_CUTOFF
    if small.any():
        out[small] = _sinc_series(u_arr[small], order)
    big = ~small
    if big.any():
        out[big] = _sinc_closed(u_arr[big], order)
    return float(out[0]) if scalar else out


def node_count(level: int) -> int:
    """Number of shifts at a level: ceil(2^level) + 1 (2 for negative levels)."""
    return math.ceil(2.0**level) + 1


def _chain(level: int, length: float, order: int) -> float:
    return (2.0**level / length) ** order


def scaling_eval(j: int, k: int, x, lo: float, hi: float, order: int):
    """Order-th x derivative of the scaling function phi_{j,k} on [lo, hi]."""
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    length = hi - lo
    u = (np.asarray(x, dtype=float) - lo) * (2.0**j / length) - k
    return 2.0 ** (j / 2.0) * _chain(j, length, order) * sinc_deriv(u, order)


def _wavelet_shape(u: np.ndarray, order: int) -> np.ndarray:
    """Order-th u derivative of sinc(u/2) cos(3*pi*u/2) via the product rule."""
    beta = 1.5 * _PI
    g0 = np.cos(beta * u)
    s = sinc_deriv(u / 2.0, 0)
    if order == 0:
        return s * g0
    s1 = 0.5 * sinc_deriv(u / 2.0, 1)
    g1 = -beta * np.sin(beta * u)
    if order == 1:
        return s1 * g0 + s * g1
    s2 = 0.25 * sinc_deriv(u / 2.0, 2)
    g2 = -(beta**2) * g0
    return s2 * g0 + 2.0 * s1 * g1 + s * g2


def wavelet_eval(j: int, k: int, x, lo: float, hi: float, order: int):
    """Order-th x derivative of the wavelet psi_{j,k} on [lo, hi]."""
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if order not in (0, 1, 2):
        raise ValueError(f"derivative order must be 0, 1 or 2, got {order}")
    length = hi - lo
    u = (np.asarray(x, dtype=float) - lo) * (2.0**j / length) - k
    return 2.0 ** (j / 2.0) * _chain(j, length, order) * _wavelet_shape(u, order)


@dataclass(frozen=True)
class BasisIndex:
    """One basis function: its kind, resolution level and shift."""

    kind: Literal["scaling", "wavelet"]
    level: int
    shift: int

    def __post_init__(self) -> None:
        if not 0 <= self.shift <= node_count(self.level) - 1:
            raise ValueError(
                f"shift {self.shift} out of range for level {self.level} "
                f"(0..{node_count(self.level) - 1})"
            )


class Basis1D:
    """All scaling functions at level j0 and wavelets at levels j0..jmax.

    Ladder order: scaling functions first (by shift), then wavelets level by
    level (by shift).  For j0 = 0 the size is 2^(jmax+1) + jmax + 2.
    """

    def __init__(self, lo: float, hi: float, j0: int, jmax: int) -> None:
        if j0 > jmax:
            raise LadderError(f"coarsest level {j0} exceeds finest level {jmax}")
        if not lo < hi:
            raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
        self.lo = float(lo)
        self.hi = float(hi)
        self.j0 = int(j0)
        self.jmax = int(jmax)
        indices = [BasisIndex("scaling", j0, k) for k in range(node_count(j0))]
        for j in range(j0, jmax + 1):
            indices.extend(BasisIndex("wavelet", j, k) for k in range(node_count(j)))
        self.indices: tuple[BasisIndex, ...] = tuple(indices)
        # (kind, level, shifts) per contiguous ladder block, for vector evaluation
        self._blocks: list[tuple[str, int, np.ndarray]] = [
            ("scaling", j0, np.arange(node_count(j0), dtype=float))
        ]
        self._blocks.extend(
            ("wavelet", j, np.arange(node_count(j), dtype=float)) for j in range(j0, jmax + 1)
        )

    @property
    def size(self) -> int:
        return len(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __repr__(self) -> str:
        return f"Basis1D([{self.lo}, {self.hi}], j0={self.j0}, jmax={self.jmax}, size={self.size})"

    def eval_matrix(self, x: np.ndarray, order: int) -> np.ndarray:
        """Order-th derivative of every basis function at every point.

        Returns shape (len(x), size) with columns in ladder order.
        """
        if order not in (0, 1, 2):
            raise ValueError(f"derivative order must be 0, 1 or 2, got {order}")
        x = np.atleast_1d(np.asarray(x, dtype=float))
        length = self.hi - self.lo
        out = np.empty((x.size, self.size))
        col = 0
        for kind, j, shifts in self._blocks:
            u = (x[:, None] - self.lo) * (2.0**j / length) - shifts[None, :]
            factor = 2.0 ** (j / 2.0) * _chain(j, length, order)
            if kind == "scaling":
                vals = sinc_deriv(u, order)
            else:
                vals = _wavelet_shape(u, order)
            out[:, col : col + shifts.size] = factor * vals
            col += shifts.size
        return out


def build_ladder(j0: int, jmax: int, lo: float, hi: float) -> Basis1D:
    """Enumerate the multiresolution ladder from level j0 up to jmax."""
    return Basis1D(lo, hi, j0, jmax)


def eval_row(basis: Basis1D, x: float, order: int) -> np.ndarray:
    """Order-th derivative of every 1D basis function at a single point."""
    return basis.eval_matrix(np.asarray([x], dtype=float), order)[0]


class TensorBasis:
    """Tensor product of per-axis ladders; functions ordered row-major."""

    def __init__(self, axes: Sequence[Basis1D]) -> None:
        if not axes:
            raise ValueError("need at least one axis")
        self.axes: tuple[Basis1D, ...] = tuple(axes)

    @property
    def ndim(self) -> int:
        return len(self.axes)

    @property
    def size(self) -> int:
        return math.prod(axis.size for axis in self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(axis.size for axis in self.axes)

    def __repr__(self) -> str:
        return f"TensorBasis({' x '.join(str(a.size) for a in self.axes)})"

    def eval_rows(self, points: np.ndarray, orders: Sequence[int]) -> np.ndarray:
        """Rows of mixed-derivative products at many points, shape (n, size).

        orders[a] is the derivative order applied along axis a.  The entry
        for axis index tuple (i_0, ..., i_{d-1}) is the product of the
        per-axis values, laid out row-major.
        """
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if points.shape[1] != self.ndim or len(orders) != self.ndim:
            raise ValueError(
                f"point/order dimension mismatch: basis has {self.ndim} axes, "
                f"got points with {points.shape[1]} and {len(orders)} orders"
            )
        rows = self.axes[0].eval_matrix(points[:, 0], orders[0])
        for a in range(1, self.ndim):
            ea = self.axes[a].eval_matrix(points[:, a], orders[a])
            rows = (rows[:, :, None] * ea[:, None, :]).reshape(points.shape[0], -1)
        return rows


def tensor_row(basis: TensorBasis, point: Sequence[float], orders: Sequence[int]) -> np.ndarray:
    """Mixed-derivative product row at a single point, in row-major order."""
    pt = np.asarray(point, dtype=float).reshape(1, -1)
    return basis.eval_rows(pt, orders)[0]
