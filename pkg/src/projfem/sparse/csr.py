"""CSR helpers: shape-checked products and in-pattern element scatter."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from projfem.errors import AssemblyError
from projfem.mesh.trimesh import FloatArray, IntArray

CsrMatrix = sp.csr_matrix


def spmv(matrix: CsrMatrix, x: FloatArray) -> FloatArray:
    """Return y = A x, rejecting mismatched dimensions."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != matrix.shape[1]:
        raise AssemblyError(
            f"Cannot multiply {matrix.shape[0]}x{matrix.shape[1]} matrix by vector of shape {x.shape}"
        )
    result: FloatArray = matrix @ x
    return result


class SparsityPattern:
    """
    CSR pattern of an element-by-element coupling between two dof maps.

    The pattern does not depend on the element values, so it is computed once
    per (mesh, space pair) and every assembly only scatters values into it.
    """

    def __init__(self, row_dofs: IntArray, col_dofs: IntArray, shape: tuple[int, int]) -> None:
        n_cells, n_rows_local = row_dofs.shape
        n_cols_local = col_dofs.shape[1]
        rows = np.broadcast_to(row_dofs[:, :, None], (n_cells, n_rows_local, n_cols_local))
        cols = np.broadcast_to(col_dofs[:, None, :], (n_cells, n_rows_local, n_cols_local))
        keys = rows.ravel().astype(np.int64) * shape[1] + cols.ravel()
        unique_keys, positions = np.unique(keys, return_inverse=True)

        self.shape = shape
        self.local_shape = (n_rows_local, n_cols_local)
        self.n_cells = n_cells
        self.positions: IntArray = np.asarray(positions, dtype=np.int64).ravel()
        self.indices: IntArray = (unique_keys % shape[1]).astype(np.int32)
        row_of_entry = unique_keys // shape[1]
        counts = np.bincount(row_of_entry, minlength=shape[0])
        self.indptr: IntArray = np.concatenate([[0], np.cumsum(counts)]).astype(np.int32)

    @property
    def nnz(self) -> int:
        return int(self.indices.shape[0])

    def assemble(self, local: FloatArray) -> CsrMatrix:
        """Sum (T, a, b) element matrices into a CSR matrix on this pattern."""
        expected = (self.n_cells, *self.local_shape)
        if local.shape != expected:
            raise AssemblyError(f"Element matrices {local.shape} do not fit pattern {expected}")
        data = np.bincount(self.positions, weights=local.ravel(), minlength=self.nnz)
        return sp.csr_matrix(
            (data, self.indices.copy(), self.indptr.copy()), shape=self.shape
        )


def scatter_vector(dofs: IntArray, local: FloatArray, size: int) -> FloatArray:
    """Sum (T, a) element vectors into a global vector."""
    result: FloatArray = np.bincount(dofs.ravel(), weights=local.ravel(), minlength=size)
    return result
