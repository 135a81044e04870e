"""Segregated rotational pressure-correction scheme."""

from __future__ import annotations

import logging

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


class RotationalScheme(ProjectionScheme):
    """
    Per step, with q^m = 2 p^m - p^{m-1} + nu Pi_h(div u^m):

    (a) [(1/k) M_v + N(u^m) + nu K_v] u_a^{m+1} = (1/k) M_v u_a^m + D_a^T q^m + b_a
    (b) Pi^{m+1} = Pi_h(div u^{m+1})
    (c) k K_p psi = -(D_x u1^{m+1} + D_y u2^{m+1}),  p^{m+1} = p^m + psi - nu Pi^{m+1}
    """

    name = SchemeName.ROTATIONAL

    def __init__(self, ops: OperatorSet, config: SchemeConfig, forcing: VectorFunction) -> None:
        super().__init__(ops, config, forcing)
        self.pressure_matrix = config.k * ops.stiff_p

    def pressure_source(self, state: SchemeState) -> FloatArray:
        """q^m of the velocity step."""
        divergence = self.project_divergence(state.u1, state.u2)
        result: FloatArray = state.pressure_extrapolation() + self.nu * divergence.values
        return result

    def component_rhs(
        self,
        state: SchemeState,
        source: FloatArray,
        loads: tuple[FloatArray, FloatArray],
    ) -> tuple[FloatArray, FloatArray]:
        """(1/k) M_v u_a^m + (q, d_a v) + b_a for both components."""
        ops = self.ops
        with self._timed("assembly"):
            return (
                ops.mass_v @ state.u1.values / self.k + ops.div_x.T @ source + loads[0],
                ops.mass_v @ state.u2.values / self.k + ops.div_y.T @ source + loads[1],
            )

    def pressure_update(self, u1: Field, u2: Field, state: SchemeState) -> tuple[Field, int]:
        """Steps (b) and (c)."""
        divergence = self.project_divergence(u1, u2)
        with self._timed("assembly"):
            rhs = -self.ops.divergence_moments(u1.values, u2.values)
        correction, report = self.solve_neumann(self.pressure_matrix, rhs)
        p_next = self.mean_zero(state.p_curr.values + correction - self.nu * divergence.values)
        return p_next, report.iterations

    def step(self, state: SchemeState) -> StepResult:
        loads = self.loads((state.m + 1) * self.k)
        source = self.pressure_source(state)
        matrix = self.velocity_operator(state.u1, state.u2)
        rhs = self.component_rhs(state, source, loads)
        u1, u2, v_iters = self.solve_components(matrix, rhs, (state.u1.values, state.u2.values))
        p_next, p_iters = self.pressure_update(u1, u2, state)
        return self._result(state, u1, u2, p_next, v_iters, p_iters)

    def _result(
        self,
        state: SchemeState,
        u1: Field,
        u2: Field,
        p_next: Field,
        v_iters: int,
        p_iters: int,
    ) -> StepResult:
        new_state = state.advanced(u1, u2, p_next, self.k)
        diagnostics = StepDiagnostics(
            m=new_state.m,
            t=new_state.t,
            kinetic_energy=self.kinetic_energy(u1, u2),
            pressure_energy=self.pressure_energy(p_next),
            velocity_iterations=v_iters,
            pressure_iterations=p_iters,
        )
        logger.debug(
            "%s m=%d t=%.4f energy=%.6e",
            self.name.value,
            diagnostics.m,
            diagnostics.t,
            diagnostics.energy,
        )
        return StepResult(new_state, diagnostics)
