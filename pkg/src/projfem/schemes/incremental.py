"""Segregated incremental pressure-projection scheme."""

from __future__ import annotations

import logging

import numpy as np

from projfem.assemble.forcing import VectorFunction
from projfem.assemble.operators import OperatorSet
from projfem.fem.space import Field
from projfem.mesh.trimesh import FloatArray
from projfem.schemes.base import ProjectionScheme
from projfem.schemes.state import (
    SchemeConfig,
    SchemeName,
    SchemeState,
    StepDiagnostics,
    StepResult,
)

logger = logging.getLogger(__name__)


class IncrementalScheme(ProjectionScheme):
    """
    Per step, with w = u~^m:

    (a) [(1/k) M_v + N(w) + nu K_v] u~_a^{m+1}
            = (1/k) M_v u~_a^m - G_a (2 p^m - p^{m-1}) + b_a^{m+1},  u~ = 0 on the boundary
    (b) k K_p dp = G_x^T u~1^{m+1} + G_y^T u~2^{m+1},  p^{m+1} = p^m + dp

    The end-of-step velocity u^{m+1} = u~^{m+1} - k grad dp is never formed;
    its norm enters the diagnostics through the expansion of |u~ - k grad dp|^2.
    """

    name = SchemeName.INCREMENTAL

    def __init__(self, ops: OperatorSet, config: SchemeConfig, forcing: VectorFunction) -> None:
        super().__init__(ops, config, forcing)
        # Constant across steps: only the rhs changes.
        self.pressure_matrix = config.k * ops.stiff_p

    def velocity_step(
        self, state: SchemeState, loads: tuple[FloatArray, FloatArray]
    ) -> tuple[Field, Field, int]:
        """Solve (a) for the intermediate velocity."""
        ops = self.ops
        matrix = self.velocity_operator(state.u1, state.u2)
        with self._timed("assembly"):
            source = state.pressure_extrapolation()
            rhs = (
                ops.mass_v @ state.u1.values / self.k - ops.grad_x @ source + loads[0],
                ops.mass_v @ state.u2.values / self.k - ops.grad_y @ source + loads[1],
            )
        return self.solve_components(matrix, rhs, (state.u1.values, state.u2.values))

    def pressure_step(
        self, u1: Field, u2: Field, state: SchemeState
    ) -> tuple[Field, FloatArray, FloatArray, int]:
        """
        Solve (b) for the increment.

        Returns:
            (p^{m+1}, dp, rhs, CG iterations) where rhs = (u~^{m+1}, grad q_h).
        """
        with self._timed("assembly"):
            rhs = self.ops.weak_gradient_pairing(u1.values, u2.values)
        increment, report = self.solve_neumann(self.pressure_matrix, rhs)
        p_next = self.mean_zero(state.p_curr.values + increment)
        return p_next, increment, rhs, report.iterations

    def step(self, state: SchemeState) -> StepResult:
        t_next = (state.m + 1) * self.k
        loads = self.loads(t_next)
        u1, u2, v_iters = self.velocity_step(state, loads)
        p_next, increment, rhs, p_iters = self.pressure_step(u1, u2, state)
        new_state = state.advanced(u1, u2, p_next, self.k)

        tilde_sq = self.kinetic_energy(u1, u2)
        gradient_sq = float(increment @ (self.ops.stiff_p @ increment))
        cross = float(increment @ rhs)
        end_of_step_sq = tilde_sq - 2.0 * self.k * cross + self.k**2 * gradient_sq
        identity = abs(tilde_sq - end_of_step_sq - self.k**2 * gradient_sq)
        orthogonality = rhs - self.pressure_matrix @ increment

        diagnostics = StepDiagnostics(
            m=new_state.m,
            t=new_state.t,
            kinetic_energy=end_of_step_sq,
            pressure_energy=self.pressure_energy(p_next),
            identity_residual=identity / tilde_sq if tilde_sq > 0.0 else identity,
            orthogonality_residual=float(np.max(np.abs(orthogonality))),
            orthogonality_scale=float(np.linalg.norm(rhs)),
            velocity_iterations=v_iters,
            pressure_iterations=p_iters,
        )
        logger.debug(
            "incremental m=%d t=%.4f energy=%.6e identity=%.2e",
            diagnostics.m,
            diagnostics.t,
            diagnostics.energy,
            diagnostics.identity_residual,
        )
        return StepResult(new_state, diagnostics)
