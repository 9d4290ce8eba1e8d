"""Problem geometries and collocation-point samplers.

Four geometry kinds cover every benchmark: an interval, an axis-aligned
box, a star-shaped domain with radius r(theta) = base + amp*sin(lobes*theta)
around a center, and a space-time box (spatial box crossed with (0, T],
time as the last axis).

Sampling is deterministic: grid strategies depend only on the geometry and
count, random strategies only on (geometry, count, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

__all__ = [
    "Interval",
    "Box",
    "StarDomain",
    "BoxTime",
    "Geometry",
    "GeometryDegenerateError",
    "sample_interior",
    "sample_boundary",
    "sample_initial",
]

Strategy = Literal["grid", "random"]

_MAX_REJECTS = 10**6


class GeometryDegenerateError(RuntimeError):
    """Rejection sampling failed to land a point inside the domain."""


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def ndim(self) -> int:
        return 1

    @property
    def bounds(self) -> tuple[tuple[float, float], ...]:
        return ((self.lo, self.hi),)

    def contains(self, points: np.ndarray) -> np.ndarray:
        x = np.asarray(points, dtype=float).reshape(-1, 1)[:, 0]
        return (x > self.lo) & (x < self.hi)


@dataclass(frozen=True)
class Box:
    bounds: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bounds", tuple((float(a), float(b)) for a, b in self.bounds))
        for lo, hi in self.bounds:
            if not lo < hi:
                raise ValueError(f"need lo < hi per axis, got [{lo}, {hi}]")

    @property
    def ndim(self) -> int:
        return len(self.bounds)

    def contains(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float).reshape(-1, self.ndim)
        ok = np.ones(pts.shape[0], dtype=bool)
        for a, (lo, hi) in enumerate(self.bounds):
            ok &= (pts[:, a] > lo) & (pts[:, a] < hi)
        return ok


@dataclass(frozen=True)
class StarDomain:
    """Star-shaped 2D domain: boundary at radius base + amp*sin(lobes*theta)."""

    center: tuple[float, float] = (0.5, 0.5)
    base: float = 0.2
    amp: float = 0.15
    lobes: int = 5

    def __post_init__(self) -> None:
        if self.base - abs(self.amp) <= 0.0:
            raise ValueError("radius must stay positive for all angles")

    @property
    def ndim(self) -> int:
        return 2

    @property
    def bounds(self) -> tuple[tuple[float, float], ...]:
        cx, cy = self.center
        r = self.base + abs(self.amp)
        return ((cx - r, cx + r), (cy - r, cy + r))

    def radius(self, theta: np.ndarray) -> np.ndarray:
        return self.base + self.amp * np.sin(self.lobes * np.asarray(theta, dtype=float))

    def contains(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        dx = pts[:, 0] - self.center[0]
        dy = pts[:, 1] - self.center[1]
        theta = np.arctan2(dy, dx)
        return dx**2 + dy**2 < self.radius(theta) ** 2


@dataclass(frozen=True)
class BoxTime:
    """Spatial box crossed with a time interval (0, t_end]; time is the last axis."""

    space: tuple[tuple[float, float], ...]
    t_end: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "space", tuple((float(a), float(b)) for a, b in self.space))
        for lo, hi in self.space:
            if not lo < hi:
                raise ValueError(f"need lo < hi per spatial axis, got [{lo}, {hi}]")
        if not self.t_end > 0.0:
            raise ValueError("t_end must be positive")

    @property
    def ndim(self) -> int:
        return len(self.space) + 1

    @property
    def bounds(self) -> tuple[tuple[float, float], ...]:
        return self.space + ((0.0, self.t_end),)

    def contains(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float).reshape(-1, self.ndim)
        ok = (pts[:, -1] > 0.0) & (pts[:, -1] <= self.t_end)
        for a, (lo, hi) in enumerate(self.space):
            ok &= (pts[:, a] > lo) & (pts[:, a] < hi)
        return ok


Geometry = Interval | Box | StarDomain | BoxTime


def _grid_1d(lo: float, hi: float, n: int) -> np.ndarray:
    """n equispaced points strictly inside (lo, hi)."""
    step = (hi - lo) / (n + 1)
    return lo + step * np.arange(1, n + 1)


def _subsample(points: np.ndarray, n: int) -> np.ndarray:
    """Deterministically thin a point set to exactly n rows, evenly strided."""
    total = points.shape[0]
    if total == n:
        return points
    keep = np.floor(np.linspace(0, total - 1, n) + 0.5).astype(int)
    return points[keep]


def _grid_box(bounds, n: int, axis_counts=None) -> np.ndarray:
    """Near-uniform tensor grid with exactly n interior points.

    Builds the smallest full tensor grid with at least n points and evenly
    subsamples it in row-major order.  Per-axis counts are equal unless
    axis_counts gives explicit proportions (needed when the basis
    resolution differs per axis); the last axis is bumped to reach n.
    """
    d = len(bounds)
    if axis_counts is None:
        m = math.ceil(n ** (1.0 / d))
        while m**d < n:  # guard against roundoff in the root
            m += 1
        counts = [m] * d
    else:
        if len(axis_counts) != d:
            raise ValueError("axis_counts must give one count per axis")
        counts = [max(2, int(c)) for c in axis_counts]
        while math.prod(counts) < n:
            counts[-1] += 1
    axes = [_grid_1d(lo, hi, m) for (lo, hi), m in zip(bounds, counts)]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.column_stack([g.ravel() for g in mesh])
    return _subsample(pts, n)


def sample_interior(
    geom: Geometry,
    n: int,
    strategy: Strategy = "grid",
    seed: int = 0,
    axis_counts=None,
) -> np.ndarray:
    """n points strictly inside the geometry, shape (n, ndim).

    axis_counts (grid strategy, box-like geometries only) sets the per-axis
    tensor-grid proportions; callers use it to keep every axis sampled above
    its basis Nyquist rate when resolutions differ per axis.
    """
    if n < 1:
        raise ValueError("need at least one interior point")
    if strategy not in ("grid", "random"):
        raise ValueError(f"unknown sampling strategy {strategy!r}")

    if isinstance(geom, Interval):
        if strategy == "grid":
            return _grid_1d(geom.lo, geom.hi, n).reshape(-1, 1)
        rng = np.random.default_rng(seed)
        return rng.uniform(geom.lo, geom.hi, size=(n, 1))

    if isinstance(geom, (Box, BoxTime)):
        bounds = geom.bounds
        if strategy == "grid":
            return _grid_box(bounds, n, axis_counts)
        rng = np.random.default_rng(seed)
        lows = np.array([b[0] for b in bounds])
        highs = np.array([b[1] for b in bounds])
        return rng.uniform(lows, highs, size=(n, len(bounds)))

    if isinstance(geom, StarDomain):
        if strategy == "grid":
            m = n
            while True:
                candidates = _grid_box(geom.bounds, m)
                inside = candidates[geom.contains(candidates)]
                if inside.shape[0] >= n:
                    return _subsample(inside, n)
                m *= 2
        rng = np.random.default_rng(seed)
        lows = np.array([b[0] for b in geom.bounds])
        highs = np.array([b[1] for b in geom.bounds])
        out = np.empty((n, 2))
        got = 0
        rejected = 0
        while got < n:
            draw = rng.uniform(lows, highs, size=(max(n - got, 64), 2))
            keep = draw[geom.contains(draw)]
            if keep.shape[0] == 0:
                rejected += draw.shape[0]
                if rejected >= _MAX_REJECTS:
                    raise GeometryDegenerateError(
                        f"rejection sampling failed {rejected} consecutive draws"
                    )
                continue
            rejected = 0
            take = min(n - got, keep.shape[0])
            out[got : got + take] = keep[:take]
            got += take
        return out

    raise TypeError(f"unsupported geometry {type(geom).__name__}")


def _box_faces(bounds) -> list[tuple[int, float]]:
    """(axis, value) per face, low faces first, in axis order."""
    faces = []
    for a, (lo, hi) in enumerate(bounds):
        faces.append((a, lo))
        faces.append((a, hi))
    return faces


def _split_counts(n: int, parts: int) -> list[int]:
    base, extra = divmod(n, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def _grid_face(bounds, axis: int, value: float, m: int) -> np.ndarray:
    """m cell-centered grid points on one box face (avoids corner duplicates)."""
    free = [i for i in range(len(bounds)) if i != axis]
    if not free:
        return np.full((m, 1), value)
    per = math.ceil(m ** (1.0 / len(free)))
    axes = []
    for i in free:
        lo, hi = bounds[i]
        step = (hi - lo) / per
        axes.append(lo + step * (np.arange(per) + 0.5))
    mesh = np.meshgrid(*axes, indexing="ij")
    flat = np.column_stack([g.ravel() for g in mesh])
    flat = _subsample(flat, m)
    pts = np.empty((m, len(bounds)))
    pts[:, axis] = value
    for col, i in enumerate(free):
        pts[:, i] = flat[:, col]
    return pts


def sample_boundary(geom: Geometry, n: int, strategy: Strategy = "grid", seed: int = 0) -> np.ndarray:
    """n points on the geometry boundary, shape (n, ndim).

    Interval boundaries are always the two endpoints.  Box points are split
    evenly across faces.  Star boundaries are parameterized by theta.  For a
    space-time box, points cover spatial boundary x time with t > 0 (the t=0
    face belongs to the initial set).
    """
    if n < 1:
        raise ValueError("need at least one boundary point")
    if strategy not in ("grid", "random"):
        raise ValueError(f"unknown sampling strategy {strategy!r}")

    if isinstance(geom, Interval):
        return np.array([[geom.lo], [geom.hi]])

    if isinstance(geom, Box):
        faces = _box_faces(geom.bounds)
        counts = _split_counts(n, len(faces))
        rng = np.random.default_rng(seed)
        chunks = []
        for (axis, value), m in zip(faces, counts):
            if m == 0:
                continue
            if strategy == "grid":
                chunks.append(_grid_face(geom.bounds, axis, value, m))
            else:
                pts = np.empty((m, geom.ndim))
                pts[:, axis] = value
                for i, (lo, hi) in enumerate(geom.bounds):
                    if i != axis:
                        pts[:, i] = rng.uniform(lo, hi, m)
                chunks.append(pts)
        return np.vstack(chunks)

    if isinstance(geom, StarDomain):
        if strategy == "grid":
            theta = 2.0 * math.pi * np.arange(n) / n
        else:
            rng = np.random.default_rng(seed)
            theta = rng.uniform(0.0, 2.0 * math.pi, n)
        r = geom.radius(theta)
        cx, cy = geom.center
        return np.column_stack([cx + r * np.cos(theta), cy + r * np.sin(theta)])

    if isinstance(geom, BoxTime):
        faces = _box_faces(geom.space)
        counts = _split_counts(n, len(faces))
        rng = np.random.default_rng(seed)
        d = geom.ndim
        chunks = []
        for (axis, value), m in zip(faces, counts):
            if m == 0:
                continue
            pts = np.empty((m, d))
            pts[:, axis] = value
            free = [i for i in range(len(geom.space)) if i != axis]
            if strategy == "grid":
                if free:
                    raise NotImplementedError(
                        "grid boundary sampling of a space-time box needs 1 spatial dim"
                    )
                # times equispaced in (0, t_end], excluding the initial face
                pts[:, -1] = geom.t_end * np.arange(1, m + 1) / m
            else:
                for i in free:
                    lo, hi = geom.space[i]
                    pts[:, i] = rng.uniform(lo, hi, m)
                pts[:, -1] = rng.uniform(0.0, geom.t_end, m)
            chunks.append(pts)
        return np.vstack(chunks)

    raise TypeError(f"unsupported geometry {type(geom).__name__}")


def sample_initial(geom: BoxTime, n: int, strategy: Strategy = "grid", seed: int = 0) -> np.ndarray:
    """n points (x, 0) over the spatial domain interior of a space-time box."""
    if not isinstance(geom, BoxTime):
        raise TypeError("initial samples only exist for space-time geometries")
    if n < 1:
        raise ValueError("need at least one initial point")
    spatial = Box(geom.space) if len(geom.space) > 1 else Interval(*geom.space[0])
    xs = sample_interior(spatial, n, strategy, seed)
    return np.column_stack([xs, np.zeros(n)])
