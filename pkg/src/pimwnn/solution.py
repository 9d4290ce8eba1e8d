"""A solved wavelet expansion: basis plus outer-layer weight vector."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .basis import TensorBasis

__all__ = ["Solution"]


@dataclass(frozen=True)
class Solution:
    """Weighted basis expansion, evaluable with derivatives anywhere."""

    basis: TensorBasis
    weights: np.ndarray

    def __post_init__(self) -> None:
        if self.weights.shape != (self.basis.size,):
            raise ValueError(
                f"weight vector length {self.weights.shape} does not match "
                f"basis size {self.basis.size}"
            )

    def eval(self, points: np.ndarray, orders: Sequence[int] | None = None) -> np.ndarray:
        """Values (or a mixed derivative) of the expansion at points (n, d)."""
        if orders is None:
            orders = (0,) * self.basis.ndim
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        out = np.empty(points.shape[0])
        # chunk to bound the (n, basis.size) row block
        step = max(1, 2**22 // max(1, self.basis.size))
        for start in range(0, points.shape[0], step):
            chunk = points[start : start + step]
            out[start : start + chunk.shape[0]] = (
                self.basis.eval_rows(chunk, orders) @ self.weights
            )
        return out

    def __call__(self, points: np.ndarray, orders: Sequence[int] | None = None) -> np.ndarray:
        return self.eval(points, orders)
