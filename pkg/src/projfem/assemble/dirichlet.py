"""Homogeneous Dirichlet conditions by symmetric elimination."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from projfem.mesh.trimesh import FloatArray, IntArray
from projfem.sparse.csr import CsrMatrix


def apply_dirichlet(
    matrix: CsrMatrix, rhs: FloatArray, boundary_dofs: IntArray
) -> tuple[CsrMatrix, FloatArray]:
    """
    Impose u = 0 on ``boundary_dofs``.

    Boundary rows and columns are zeroed, their diagonal set to one and the
    matching rhs entries set to zero; the interior equations are unchanged
    because the eliminated values are zero. Symmetric inputs stay symmetric.

    Returns:
        New (matrix, rhs); the inputs are left untouched.
    """
    n = matrix.shape[0]
    boundary_dofs = np.asarray(boundary_dofs, dtype=np.int64)
    is_boundary = np.zeros(n, dtype=bool)
    is_boundary[boundary_dofs] = True

    result = sp.csr_matrix(matrix, copy=True)
    rows = np.repeat(np.arange(n), np.diff(result.indptr))
    result.data[is_boundary[rows] | is_boundary[result.indices]] = 0.0
    ones = np.ones(boundary_dofs.shape[0])
    result = (result + sp.csr_matrix((ones, (boundary_dofs, boundary_dofs)), shape=matrix.shape)).tocsr()
    result.sort_indices()

    b = np.array(rhs, dtype=np.float64)
    b[boundary_dofs] = 0.0
    return result, b
