"""Initial states for the manufactured and the free-decay problems."""

from __future__ import annotations

import numpy as np

from projfem.assemble.operators import OperatorSet
from projfem.fem.space import Field, interpolate
from projfem.schemes.state import SchemeState
from projfem.sparse.krylov import MeanZero
from projfem.verify.exact import ManufacturedSolution


def manufactured_initial_state(
    ops: OperatorSet, solution: ManufacturedSolution | None = None
) -> SchemeState:
    """
    Nodal interpolants of u(0) and p(0), the pressure mean-zero projected.

    p^{-1} is set to p^0 so the first extrapolation reduces to p^0.
    """
    solution = solution or ManufacturedSolution()
    vspace, pspace = ops.velocity_space, ops.pressure_space
    u1 = interpolate(vspace, lambda x, y: solution.velocity(x, y, 0.0)[0])
    u2 = interpolate(vspace, lambda x, y: solution.velocity(x, y, 0.0)[1])
    u1.values[vspace.boundary_dofs] = 0.0
    u2.values[vspace.boundary_dofs] = 0.0
    raw = interpolate(pspace, lambda x, y: solution.pressure(x, y, 0.0))
    p0 = Field(pspace, MeanZero(ops.mass_p_vector).project(raw.values))
    return SchemeState(u1=u1, u2=u2, p_prev=p0, p_curr=p0.copy())


def random_initial_state(ops: OperatorSet, seed: int, amplitude: float = 1.0) -> SchemeState:
    """
    Random boundary-zero velocity and random mean-zero pressure.

    Values are uniform in [-amplitude, amplitude], which keeps k |grad p^0|
    bounded for any k the stability runs use.
    """
    rng = np.random.default_rng(seed)
    vspace, pspace = ops.velocity_space, ops.pressure_space
    components = []
    for _ in range(2):
        values = rng.uniform(-amplitude, amplitude, vspace.n_dofs)
        values[vspace.boundary_dofs] = 0.0
        components.append(Field(vspace, values))
    pressure = rng.uniform(-amplitude, amplitude, pspace.n_dofs)
    p0 = Field(pspace, MeanZero(ops.mass_p_vector).project(pressure))
    return SchemeState(u1=components[0], u2=components[1], p_prev=p0, p_curr=p0.copy())
