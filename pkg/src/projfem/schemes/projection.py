"""L2 projection of the velocity divergence onto the pressure space."""

from __future__ import annotations

from projfem.assemble.operators import OperatorSet
from projfem.errors import SolverError
from projfem.fem.space import Field
from projfem.sparse.krylov import JacobiPreconditioner, SolveReport, cg_solve


def l2_project_div(
    u1: Field,
    u2: Field,
    ops: OperatorSet,
    tol: float = 1e-11,
    preconditioner: JacobiPreconditioner | None = None,
) -> tuple[Field, SolveReport]:
    """
    Pi_h(div u): solve M_p x = D_x u1 + D_y u2.

    Raises:
        SolverError: If CG does not converge.
    """
    rhs = ops.divergence_moments(u1.values, u2.values)
    x, report = cg_solve(
        ops.mass_p,
        rhs,
        tol=tol,
        preconditioner=preconditioner or "jacobi",
    )
    if not report.converged:
        raise SolverError("L2 projection of the divergence failed", report)
    return Field(ops.pressure_space, x), report
