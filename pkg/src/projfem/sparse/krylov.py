"""Conjugate gradient and BiCGStab on CSR matrices."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np

from projfem.errors import AssemblyError
from projfem.mesh.trimesh import FloatArray
from projfem.sparse.csr import CsrMatrix, spmv

logger = logging.getLogger(__name__)

PreconditionerName = Literal["none", "jacobi"]

# Restarts from the current iterate when the recursive residual drifts from
# the true one.
_MAX_RESTARTS = 2


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one Krylov solve."""

    method: str
    iterations: int
    residual: float
    tolerance: float
    converged: bool

    def __str__(self) -> str:
        status = "converged" if self.converged else "NOT converged"
        return (
            f"{self.method} {status} after {self.iterations} iterations, "
            f"relative residual {self.residual:.3e} (tol {self.tolerance:.1e})"
        )


@dataclass(frozen=True)
class MeanZero:
    """
    Null space handling for pure-Neumann operators whose kernel is the
    constants: solutions are kept mass-weighted mean-zero, m^T x = 0 with
    m = M_p 1.
    """

    mass_vector: FloatArray

    def project(self, x: FloatArray) -> FloatArray:
        """Remove the mass-weighted mean of x."""
        m = self.mass_vector
        result: FloatArray = x - (m @ x) / m.sum()
        return result

    @staticmethod
    def project_rhs(b: FloatArray) -> FloatArray:
        """Project b onto the range of a symmetric operator with constant kernel."""
        result: FloatArray = b - b.mean()
        return result


class JacobiPreconditioner:
    """Inverse of the matrix diagonal, built once and reused for many solves."""

    def __init__(self, matrix: CsrMatrix) -> None:
        diagonal = matrix.diagonal()
        if np.any(diagonal == 0.0):
            raise AssemblyError("Jacobi preconditioner needs a zero-free diagonal")
        self.inverse_diagonal: FloatArray = 1.0 / diagonal

    def apply(self, r: FloatArray) -> FloatArray:
        result: FloatArray = self.inverse_diagonal * r
        return result


class _Identity:
    def apply(self, r: FloatArray) -> FloatArray:
        return r


def _preconditioner(
    matrix: CsrMatrix, preconditioner: PreconditionerName | JacobiPreconditioner
) -> JacobiPreconditioner | _Identity:
    if isinstance(preconditioner, JacobiPreconditioner):
        return preconditioner
    if preconditioner == "jacobi":
        return JacobiPreconditioner(matrix)
    if preconditioner == "none":
        return _Identity()
    raise ValueError(f"Unknown preconditioner: {preconditioner}")


def _check_system(matrix: CsrMatrix, b: FloatArray) -> FloatArray:
    if matrix.shape[0] != matrix.shape[1]:
        raise AssemblyError(f"Krylov solvers need a square matrix, got {matrix.shape}")
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (matrix.shape[0],):
        raise AssemblyError(f"Right-hand side {b.shape} does not match matrix {matrix.shape}")
    return b


def cg_solve(
    matrix: CsrMatrix,
    b: FloatArray,
    tol: float = 1e-10,
    max_iter: int | None = None,
    nullspace: MeanZero | None = None,
    x0: FloatArray | None = None,
    preconditioner: PreconditionerName | JacobiPreconditioner = "none",
) -> tuple[FloatArray, SolveReport]:
    """
    Preconditioned conjugate gradient for symmetric positive (semi)definite A.

    With ``nullspace`` the right-hand side is projected onto the range of A
    and the iterate is re-projected to mass-weighted mean zero every
    iteration; the residual is unaffected since A annihilates constants.

    Args:
        matrix: Symmetric CSR matrix.
        b: Right-hand side.
        tol: Relative residual target ||Ax - b|| / ||b||.
        max_iter: Iteration cap, default 10 * n.
        nullspace: Optional mean-zero constraint.
        x0: Optional initial guess.
        preconditioner: "none", "jacobi" or a prebuilt JacobiPreconditioner.

    Returns:
        Solution and SolveReport; a non-converged solve is reported, not raised.
    """
    b = _check_system(matrix, b)
    n = b.shape[0]
    max_iter = 10 * n if max_iter is None else max_iter
    pc = _preconditioner(matrix, preconditioner)

    if nullspace is not None:
        b = nullspace.project_rhs(b)
    b_norm = float(np.linalg.norm(b))
    x = np.zeros(n) if x0 is None else np.array(x0, dtype=np.float64)
    if nullspace is not None:
        x = nullspace.project(x)
    if b_norm == 0.0:
        return np.zeros(n), SolveReport("cg", 0, 0.0, tol, True)

    iterations = 0
    for _ in range(_MAX_RESTARTS + 1):
        r = b - spmv(matrix, x)
        z = pc.apply(r)
        p = z.copy()
        rz = float(r @ z)
        residual = float(np.linalg.norm(r)) / b_norm
        breakdown = False

        while residual > tol and iterations < max_iter:
            ap = spmv(matrix, p)
            pap = float(p @ ap)
            if pap <= 0.0:
                logger.warning("CG breakdown: non-positive curvature %.3e", pap)
                breakdown = True
                break
            alpha = rz / pap
            x += alpha * p
            r -= alpha * ap
            if nullspace is not None:
                x = nullspace.project(x)
            iterations += 1
            residual = float(np.linalg.norm(r)) / b_norm
            z = pc.apply(r)
            rz_new = float(r @ z)
            p = z + (rz_new / rz) * p
            rz = rz_new

        true_residual = float(np.linalg.norm(b - spmv(matrix, x))) / b_norm
        if true_residual <= tol or breakdown or iterations >= max_iter:
            break

    report = SolveReport("cg", iterations, true_residual, tol, true_residual <= tol)
    logger.debug("%s", report)
    return x, report


def bicgstab_solve(
    matrix: CsrMatrix,
    b: FloatArray,
    tol: float = 1e-10,
    max_iter: int | None = None,
    preconditioner: PreconditionerName | JacobiPreconditioner = "jacobi",
    x0: FloatArray | None = None,
) -> tuple[FloatArray, SolveReport]:
    """
    Right-preconditioned BiCGStab for general square systems.

    Breakdown (vanishing rho or omega) and stagnation end the iteration and
    are reported through ``converged=False``.
    """
    b = _check_system(matrix, b)
    n = b.shape[0]
    max_iter = 10 * n if max_iter is None else max_iter
    pc = _preconditioner(matrix, preconditioner)

    b_norm = float(np.linalg.norm(b))
    if b_norm == 0.0:
        return np.zeros(n), SolveReport("bicgstab", 0, 0.0, tol, True)

    x = np.zeros(n) if x0 is None else np.array(x0, dtype=np.float64)
    iterations = 0
    for _ in range(_MAX_RESTARTS + 1):
        r = b - spmv(matrix, x)
        r_hat = r.copy()
        p = np.zeros(n)
        v = np.zeros(n)
        rho = alpha = omega = 1.0
        residual = float(np.linalg.norm(r)) / b_norm
        breakdown = False

        while residual > tol and iterations < max_iter:
            rho_new = float(r_hat @ r)
            if rho_new == 0.0:
                logger.warning("BiCGStab breakdown: rho = 0")
                breakdown = True
                break
            beta = (rho_new / rho) * (alpha / omega)
            p = r + beta * (p - omega * v)
            y = pc.apply(p)
            v = spmv(matrix, y)
            alpha = rho_new / float(r_hat @ v)
            s = r - alpha * v
            iterations += 1
            if float(np.linalg.norm(s)) / b_norm <= tol:
                x += alpha * y
                residual = float(np.linalg.norm(s)) / b_norm
                break
            z = pc.apply(s)
            t = spmv(matrix, z)
            tt = float(t @ t)
            if tt == 0.0:
                logger.warning("BiCGStab breakdown: A z = 0")
                breakdown = True
                break
            omega = float(t @ s) / tt
            x += alpha * y + omega * z
            r = s - omega * t
            rho = rho_new
            residual = float(np.linalg.norm(r)) / b_norm
            if omega == 0.0:
                logger.warning("BiCGStab breakdown: omega = 0")
                breakdown = True
                break

        true_residual = float(np.linalg.norm(b - spmv(matrix, x))) / b_norm
        if true_residual <= tol or breakdown or iterations >= max_iter:
            break

    report = SolveReport("bicgstab", iterations, true_residual, tol, true_residual <= tol)
    logger.debug("%s", report)
    return x, report
