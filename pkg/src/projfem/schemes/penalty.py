"""Penalty pressure-projection scheme (velocity components coupled)."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from projfem.assemble.dirichlet import apply_dirichlet
from projfem.fem.space import Field
from projfem.mesh.trimesh import FloatArray
from projfem.schemes.rotational import RotationalScheme
from projfem.schemes.state import SchemeName, SchemeState, StepResult
from projfem.sparse.csr import CsrMatrix
from projfem.sparse.krylov import bicgstab_solve


class PenaltyScheme(RotationalScheme):
    """
    Rotational scheme whose velocity step adds nu (div u^{m+1}, div v):

        [A + nu GD_xx,   nu GD_xy    ] [u1]   [rhs1]
        [nu GD_xy^T,     A + nu GD_yy] [u2] = [rhs2]

    solved as one block system; steps (b) and (c) are the rotational ones.
    """

    name = SchemeName.PENALTY

    def block_operator(self, state: SchemeState) -> CsrMatrix:
        ops = self.ops
        base = self.velocity_operator(state.u1, state.u2)
        with self._timed("assembly"):
            nu = self.nu
            block = sp.bmat(
                [
                    [base + nu * ops.graddiv_xx, nu * ops.graddiv_xy],
                    [nu * ops.graddiv_xy.T, base + nu * ops.graddiv_yy],
                ],
                format="csr",
            )
        return block

    def solve_coupled(
        self, matrix: CsrMatrix, rhs: tuple[FloatArray, FloatArray], state: SchemeState
    ) -> tuple[Field, Field, int]:
        space = self.ops.velocity_space
        nv = space.n_dofs
        boundary = np.concatenate([space.boundary_dofs, space.boundary_dofs + nv])
        with self._timed("assembly"):
            eliminated, b = apply_dirichlet(matrix, np.concatenate(rhs), boundary)
        with self._timed("solve"):
            x, report = bicgstab_solve(
                eliminated,
                b,
                tol=self.config.velocity_tol,
                max_iter=self.config.max_iter,
                preconditioner="jacobi",
                x0=np.concatenate([state.u1.values, state.u2.values]),
            )
        self._require(report, "coupled velocity")
        x[boundary] = 0.0
        self.timings.velocity_iterations += report.iterations
        return Field(space, x[:nv]), Field(space, x[nv:]), report.iterations

    def step(self, state: SchemeState) -> StepResult:
        loads = self.loads((state.m + 1) * self.k)
        source = self.pressure_source(state)
        matrix = self.block_operator(state)
        rhs = self.component_rhs(state, source, loads)
        u1, u2, v_iters = self.solve_coupled(matrix, rhs, state)
        p_next, p_iters = self.pressure_update(u1, u2, state)
        return self._result(state, u1, u2, p_next, v_iters, p_iters)
