"""Error metrics and discrete spectra for solution diagnostics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Box, BoxTime, Geometry, Interval, StarDomain

__all__ = [
    "ErrorReport",
    "Spectrum",
    "DegenerateReferenceError",
    "relative_l2",
    "amplitude_spectrum",
    "spectrum_agreement_band",
    "evaluation_grid",
    "error_report",
]

# grid sizes used when a run does not override them
DEFAULT_GRID_1D = 1000
DEFAULT_GRID_2D = 100


class DegenerateReferenceError(ValueError):
    """The reference vector has zero norm, so no relative error exists."""


@dataclass(frozen=True)
class ErrorReport:
    relative_l2: float
    max_abs: float
    grid: np.ndarray
    pointwise: np.ndarray


@dataclass(frozen=True)
class Spectrum:
    """One-sided discrete amplitude spectrum (arbitrary units)."""

    wavenumbers: np.ndarray
    amplitudes: np.ndarray


def relative_l2(numeric, exact) -> float:
    """l2 norm of the error divided by the l2 norm of the reference."""
    numeric = np.asarray(numeric, dtype=float)
    exact = np.asarray(exact, dtype=float)
    if numeric.shape != exact.shape or numeric.size == 0:
        raise ValueError("numeric and exact samples must have equal nonzero length")
    ref = float(np.linalg.norm(exact))
    if ref == 0.0:
        raise DegenerateReferenceError("reference samples have zero norm")
    return float(np.linalg.norm(numeric - exact)) / ref


def amplitude_spectrum(samples) -> Spectrum:
    """Magnitude of the one-sided DFT of equispaced samples."""
    samples = np.asarray(samples, dtype=float)
    if samples.size < 2:
        raise ValueError("need at least two samples")
    amps = np.abs(np.fft.rfft(samples))
    return Spectrum(np.arange(amps.size), amps)


def spectrum_agreement_band(exact: Spectrum, numeric: Spectrum, rel_tol: float = 0.2) -> int:
    """Largest wavenumber up to which the spectra agree.

    A wavenumber counts against agreement only when the exact amplitude is
    above 1% of its peak; quieter bins are skipped.  Returns the largest k
    such that every non-quiet bin <= k satisfies
    |numeric - exact| <= rel_tol * exact.
    """
    if exact.amplitudes.shape != numeric.amplitudes.shape:
        raise ValueError("spectra must have equal length")
    floor = 0.01 * float(np.max(exact.amplitudes))
    loud = exact.amplitudes > floor
    bad = loud & (np.abs(numeric.amplitudes - exact.amplitudes) > rel_tol * exact.amplitudes)
    if not bad.any():
        return int(exact.wavenumbers[-1])
    first_bad = int(np.argmax(bad))
    return int(exact.wavenumbers[first_bad]) - 1


def evaluation_grid(geom: Geometry, n: int | None = None) -> np.ndarray:
    """Dense error-evaluation grid: per-axis equispaced, including endpoints.

    1D uses n points (default 1000); higher dimensions use an n x n tensor
    grid (default 100 per axis).  Star-domain grids keep interior points only.
    """
    if isinstance(geom, Interval):
        n = n or DEFAULT_GRID_1D
        return np.linspace(geom.lo, geom.hi, n).reshape(-1, 1)
    n = n or DEFAULT_GRID_2D
    axes = [np.linspace(lo, hi, n) for lo, hi in geom.bounds]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.column_stack([g.ravel() for g in mesh])
    if isinstance(geom, StarDomain):
        pts = pts[geom.contains(pts)]
    if isinstance(geom, BoxTime):
        # keep the closed time range; the t = 0 slice is a valid error probe
        pass
    return pts


def error_report(numeric_values, exact_values, grid) -> ErrorReport:
    """Pointwise and relative-l2 error of numeric values against a reference."""
    numeric_values = np.asarray(numeric_values, dtype=float)
    exact_values = np.asarray(exact_values, dtype=float)
    pointwise = numeric_values - exact_values
    return ErrorReport(
        relative_l2=relative_l2(numeric_values, exact_values),
        max_abs=float(np.max(np.abs(pointwise))),
        grid=np.asarray(grid, dtype=float),
        pointwise=pointwise,
    )
