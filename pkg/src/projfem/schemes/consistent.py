"""Segregated consistent-splitting scheme."""

from __future__ import annotations

from projfem.assemble.forcing import VectorFunction
from projfem.assemble.operators import OperatorSet
from projfem.fem.space import Field
from projfem.schemes.rotational import RotationalScheme
from projfem.schemes.state import SchemeConfig, SchemeName, SchemeState, StepResult


class ConsistentScheme(RotationalScheme):
    """
    Per step:

    (a) [(1/k) M_v + N(u^m) + nu K_v] u_a^{m+1} = (1/k) M_v u_a^m + D_a^T p^m + b_a
    (b) Pi^{m+1} = Pi_h(div u^{m+1})
    (c) K_p psi = G^T (u^{m+1} - u^m) / k,  p^{m+1} = p^m + psi - nu Pi^{m+1}

    The pressure equation carries no factor k on its left-hand side.
    """

    name = SchemeName.CONSISTENT

    def __init__(self, ops: OperatorSet, config: SchemeConfig, forcing: VectorFunction) -> None:
        super().__init__(ops, config, forcing)
        self.pressure_matrix = ops.stiff_p

    def pressure_update(self, u1: Field, u2: Field, state: SchemeState) -> tuple[Field, int]:
        divergence = self.project_divergence(u1, u2)
        with self._timed("assembly"):
            rhs = self.ops.weak_gradient_pairing(
                (u1.values - state.u1.values) / self.k,
                (u2.values - state.u2.values) / self.k,
            )
        correction, report = self.solve_neumann(self.pressure_matrix, rhs)
        p_next = self.mean_zero(state.p_curr.values + correction - self.nu * divergence.values)
        return p_next, report.iterations

    def step(self, state: SchemeState) -> StepResult:
        loads = self.loads((state.m + 1) * self.k)
        matrix = self.velocity_operator(state.u1, state.u2)
        rhs = self.component_rhs(state, state.p_curr.values, loads)
        u1, u2, v_iters = self.solve_components(matrix, rhs, (state.u1.values, state.u2.values))
        p_next, p_iters = self.pressure_update(u1, u2, state)
        return self._result(state, u1, u2, p_next, v_iters, p_iters)
