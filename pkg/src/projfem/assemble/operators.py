"""Sparse operators appearing in the weak forms of the projection schemes."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from projfem.errors import AssemblyError
from projfem.fem.space import FeSpace
from projfem.mesh.trimesh import FloatArray
from projfem.sparse.csr import CsrMatrix, SparsityPattern

logger = logging.getLogger(__name__)

VELOCITY_DEGREE = 6
PRESSURE_DEGREE = 4


@dataclass(frozen=True)
class OperatorSet:
    """
    Time-independent operators of one (velocity space, pressure space) pair.

    Attributes:
        velocity_space: Scalar space of each velocity component.
        pressure_space: Pressure space.
        mass_v: M_v, velocity mass.
        stiff_v: K_v, velocity stiffness (grad phi . grad psi).
        mass_p: M_p, pressure mass.
        stiff_p: K_p, pressure Neumann Laplacian; constants in its kernel.
        grad_x, grad_y: G_a[i, j] = int (d_a phi_qj) psi_vi, shape (n_v, n_p).
        div_x, div_y: D_a[q, v] = int (d_a psi_v) phi_q, shape (n_p, n_v).
        graddiv_xx, graddiv_xy, graddiv_yy: int (d_a psi_i)(d_b psi_j).
        mass_p_vector: m = M_p 1, the mass-weighted mean functional.
        velocity_pattern: CSR pattern shared by all velocity-velocity operators.
    """

    velocity_space: FeSpace
    pressure_space: FeSpace
    mass_v: CsrMatrix
    stiff_v: CsrMatrix
    mass_p: CsrMatrix
    stiff_p: CsrMatrix
    grad_x: CsrMatrix
    grad_y: CsrMatrix
    div_x: CsrMatrix
    div_y: CsrMatrix
    graddiv_xx: CsrMatrix
    graddiv_xy: CsrMatrix
    graddiv_yy: CsrMatrix
    mass_p_vector: FloatArray
    velocity_pattern: SparsityPattern

    @property
    def grad(self) -> tuple[CsrMatrix, CsrMatrix]:
        return self.grad_x, self.grad_y

    @property
    def div(self) -> tuple[CsrMatrix, CsrMatrix]:
        return self.div_x, self.div_y

    def weak_gradient_pairing(self, u1: FloatArray, u2: FloatArray) -> FloatArray:
        """Vector (u, grad q_h) over the pressure basis: G_x^T u1 + G_y^T u2."""
        result: FloatArray = self.grad_x.T @ u1 + self.grad_y.T @ u2
        return result

    def divergence_moments(self, u1: FloatArray, u2: FloatArray) -> FloatArray:
        """Vector (div u, q_h) over the pressure basis: D_x u1 + D_y u2."""
        result: FloatArray = self.div_x @ u1 + self.div_y @ u2
        return result


def assemble_operator_set(
    vspace: FeSpace,
    pspace: FeSpace,
    velocity_degree: int = VELOCITY_DEGREE,
    pressure_degree: int = PRESSURE_DEGREE,
) -> OperatorSet:
    """
    Assemble every operator of the schemes' weak forms.

    Velocity and mixed integrals use the degree-6 rule, pressure-only
    integrals the degree-4 rule.

    Raises:
        AssemblyError: If the spaces live on different meshes.
    """
    if not vspace.same_mesh(pspace):
        raise AssemblyError("Velocity and pressure spaces must share one mesh")

    nv, npr = vspace.n_dofs, pspace.n_dofs
    vq = vspace.quadrature(velocity_degree)
    pq_mixed = pspace.quadrature(velocity_degree)
    pq = pspace.quadrature(pressure_degree)

    w = vq.weights
    phi, dphi = vq.values, vq.gradients
    chi_mixed, dchi_mixed = pq_mixed.values, pq_mixed.gradients

    vv = SparsityPattern(vspace.cell_dofs, vspace.cell_dofs, (nv, nv))
    pp = SparsityPattern(pspace.cell_dofs, pspace.cell_dofs, (npr, npr))
    vp = SparsityPattern(vspace.cell_dofs, pspace.cell_dofs, (nv, npr))
    pv = SparsityPattern(pspace.cell_dofs, vspace.cell_dofs, (npr, nv))

    mass_v = vv.assemble(np.einsum("tq,qi,qj->tij", w, phi, phi))
    stiff_v = vv.assemble(np.einsum("tq,tqia,tqja->tij", w, dphi, dphi))

    graddiv = {
        (a, b): vv.assemble(np.einsum("tq,tqi,tqj->tij", w, dphi[..., a], dphi[..., b]))
        for a, b in ((0, 0), (0, 1), (1, 1))
    }

    grad_x = vp.assemble(np.einsum("tq,qi,tqj->tij", w, phi, dchi_mixed[..., 0]))
    grad_y = vp.assemble(np.einsum("tq,qi,tqj->tij", w, phi, dchi_mixed[..., 1]))
    div_x = pv.assemble(np.einsum("tq,qi,tqj->tij", w, chi_mixed, dphi[..., 0]))
    div_y = pv.assemble(np.einsum("tq,qi,tqj->tij", w, chi_mixed, dphi[..., 1]))

    wp = pq.weights
    mass_p = pp.assemble(np.einsum("tq,qi,qj->tij", wp, pq.values, pq.values))
    stiff_p = pp.assemble(np.einsum("tq,tqia,tqja->tij", wp, pq.gradients, pq.gradients))

    logger.debug(
        "Assembled operators: %d velocity dofs (%d nnz), %d pressure dofs (%d nnz)",
        nv,
        vv.nnz,
        npr,
        pp.nnz,
    )
    return OperatorSet(
        velocity_space=vspace,
        pressure_space=pspace,
        mass_v=mass_v,
        stiff_v=stiff_v,
        mass_p=mass_p,
        stiff_p=stiff_p,
        grad_x=grad_x,
        grad_y=grad_y,
        div_x=div_x,
        div_y=div_y,
        graddiv_xx=graddiv[(0, 0)],
        graddiv_xy=graddiv[(0, 1)],
        graddiv_yy=graddiv[(1, 1)],
        mass_p_vector=np.asarray(mass_p @ np.ones(npr)),
        velocity_pattern=vv,
    )
