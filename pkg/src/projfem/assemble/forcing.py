"""Load vectors of body forces."""

from __future__ import annotations

from typing import Callable

import numpy as np

from projfem.assemble.operators import VELOCITY_DEGREE
from projfem.fem.space import FeSpace
from projfem.mesh.trimesh import FloatArray
from projfem.sparse.csr import scatter_vector

VectorFunction = Callable[[FloatArray, FloatArray, float], tuple[FloatArray, FloatArray]]


def forcing_vector(
    vspace: FeSpace,
    f: VectorFunction,
    t: float,
    degree: int = VELOCITY_DEGREE,
) -> tuple[FloatArray, FloatArray]:
    """
    Return b_a[i] = int f_a(., t) psi_i for both components.

    Args:
        vspace: Velocity component space.
        f: Vectorised f(x, y, t) -> (f1, f2).
        t: Evaluation time.
        degree: Quadrature degree.
    """
    data = vspace.quadrature(degree)
    x = data.points[..., 0]
    y = data.points[..., 1]
    f1, f2 = f(x, y, t)
    loads = []
    for component in (f1, f2):
        sampled = np.broadcast_to(component, x.shape)
        local = np.einsum("tq,qi,tq->ti", data.weights, data.values, sampled)
        loads.append(scatter_vector(vspace.cell_dofs, local, vspace.n_dofs))
    return loads[0], loads[1]


def zero_forcing(x: FloatArray, y: FloatArray, t: float) -> tuple[FloatArray, FloatArray]:
    zeros = np.zeros_like(x)
    return zeros, zeros
