"""Manufactured solution, discrete error norms and observed orders."""

from .exact import (
    ManufacturedSolution,
    exact_pressure,
    exact_solution,
    exact_velocity,
    exact_velocity_gradient,
    forcing,
)
from .norms import (
    NORM_LABELS,
    NORM_NAMES,
    ErrorSeries,
    StepErrors,
    error_norms,
    l2_norm,
    linf_norm,
    step_errors,
)
from .orders import ConvergenceReport, observed_order

__all__ = [
    "NORM_LABELS",
    "NORM_NAMES",
    "ConvergenceReport",
    "ErrorSeries",
    "ManufacturedSolution",
    "StepErrors",
    "error_norms",
    "exact_pressure",
    "exact_solution",
    "exact_velocity",
    "exact_velocity_gradient",
    "forcing",
    "l2_norm",
    "linf_norm",
    "observed_order",
    "step_errors",
]
