"""Weak-form operators, convection, loads and boundary conditions."""

from .convection import ConvectionOperator, convection_matrix
from .dirichlet import apply_dirichlet
from .forcing import VectorFunction, forcing_vector, zero_forcing
from .operators import OperatorSet, assemble_operator_set

__all__ = [
    "ConvectionOperator",
    "OperatorSet",
    "VectorFunction",
    "apply_dirichlet",
    "assemble_operator_set",
    "convection_matrix",
    "forcing_vector",
    "zero_forcing",
]
