"""Mesh-free PDE solving with multiresolution Shannon wavelet collocation.

A PDE (or plain fitting target) is collocated against a tensor-product
Shannon wavelet basis; the expansion weights come from one dense
least-squares solve, or a Picard sequence of them for the nonlinear
Burgers march.
"""

from .analysis import (
    ErrorReport,
    Spectrum,
    amplitude_spectrum,
    error_report,
    evaluation_grid,
    relative_l2,
    spectrum_agreement_band,
)
from .assembly import CollocationSet, LinearOperator, LinearSystem, assemble_block, assemble_system
from .basis import Basis1D, BasisIndex, TensorBasis, build_ladder, eval_row, sinc_deriv, tensor_row
from .geometry import Box, BoxTime, Interval, StarDomain, sample_boundary, sample_initial, sample_interior
from .lstsq import SolveReport, residual, solve
from .problems import ProblemSpec, build_collocation, exact_eval, make_problem, problem_names
from .solution import Solution
from .timestepper import MarchConfig, Trajectory, march, picard_step

__all__ = [
    "ErrorReport",
    "Spectrum",
    "amplitude_spectrum",
    "error_report",
    "evaluation_grid",
    "relative_l2",
    "spectrum_agreement_band",
    "CollocationSet",
    "LinearOperator",
    "LinearSystem",
    "assemble_block",
    "assemble_system",
    "Basis1D",
    "BasisIndex",
    "TensorBasis",
    "build_ladder",
    "eval_row",
    "sinc_deriv",
    "tensor_row",
    "Box",
    "BoxTime",
    "Interval",
    "StarDomain",
    "sample_boundary",
    "sample_initial",
    "sample_interior",
    "SolveReport",
    "residual",
    "solve",
    "ProblemSpec",
    "build_collocation",
    "exact_eval",
    "make_problem",
    "problem_names",
    "Solution",
    "MarchConfig",
    "Trajectory",
    "march",
    "picard_step",
]

__version__ = "0.1.0"
