"""Skew-symmetric convection operator N(w)."""

from __future__ import annotations

import numpy as np

from projfem.assemble.operators import VELOCITY_DEGREE
from projfem.errors import AssemblyError
from projfem.fem.space import FeSpace, Field
from projfem.sparse.csr import CsrMatrix, SparsityPattern


class ConvectionOperator:
    """
    Assembles N(w)[i, j] = 1/2 int [(w . grad phi_j) phi_i - (w . grad phi_i) phi_j].

    The element matrices are antisymmetrised before scattering, so N(w) is
    exactly antisymmetric and v^T N(w) v vanishes up to round-off for every
    quadrature rule. The same scalar operator acts on each velocity
    component.
    """

    def __init__(
        self,
        vspace: FeSpace,
        pattern: SparsityPattern | None = None,
        degree: int = VELOCITY_DEGREE,
    ) -> None:
        self.space = vspace
        self.degree = degree
        self.pattern = pattern or SparsityPattern(
            vspace.cell_dofs, vspace.cell_dofs, (vspace.n_dofs, vspace.n_dofs)
        )

    def assemble(self, w1: Field, w2: Field) -> CsrMatrix:
        for component in (w1, w2):
            if component.space.n_dofs != self.space.n_dofs or not component.space.same_mesh(self.space):
                raise AssemblyError(
                    f"Advecting field lives in {component.space!r}, expected {self.space!r}"
                )
        data = self.space.quadrature(self.degree)
        cell_dofs = self.space.cell_dofs
        w1q = w1.values[cell_dofs] @ data.values.T
        w2q = w2.values[cell_dofs] @ data.values.T
        advective = w1q[..., None] * data.gradients[..., 0] + w2q[..., None] * data.gradients[..., 1]
        forward = np.einsum("tq,qi,tqj->tij", data.weights, data.values, advective)
        local = 0.5 * (forward - forward.transpose(0, 2, 1))
        return self.pattern.assemble(local)


def convection_matrix(vspace: FeSpace, w1: Field, w2: Field) -> CsrMatrix:
    """Assemble N(w) for w = (w1, w2) without a cached pattern."""
    return ConvectionOperator(vspace).assemble(w1, w2)
