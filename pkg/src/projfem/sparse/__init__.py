"""Sparse operators and Krylov solvers."""

from .csr import CsrMatrix, SparsityPattern, scatter_vector, spmv
from .krylov import (
    JacobiPreconditioner,
    MeanZero,
    SolveReport,
    bicgstab_solve,
    cg_solve,
)

__all__ = [
    "CsrMatrix",
    "JacobiPreconditioner",
    "MeanZero",
    "SolveReport",
    "SparsityPattern",
    "bicgstab_solve",
    "cg_solve",
    "scatter_vector",
    "spmv",
]
