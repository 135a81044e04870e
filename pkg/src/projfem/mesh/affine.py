"""Reference-to-physical affine maps cached per triangle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from projfem.errors import MeshError
from projfem.mesh.trimesh import FloatArray, TriMesh


@dataclass(frozen=True)
class AffineMaps:
    """
    Affine maps F_T(x_hat) = B_T x_hat + b_T from the reference triangle
    (0,0), (1,0), (0,1) onto every mesh triangle.

    Attributes:
        jacobians: (T, 2, 2) matrices B_T whose columns are the edge vectors
            from the first vertex.
        offsets: (T, 2) translations b_T (the first vertex).
        dets: (T,) det(B_T) = 2 * area(T).
        inv_transposes: (T, 2, 2) matrices B_T^{-T} mapping reference
            gradients to physical gradients.
    """

    jacobians: FloatArray
    offsets: FloatArray
    dets: FloatArray
    inv_transposes: FloatArray

    @property
    def areas(self) -> FloatArray:
        result: FloatArray = 0.5 * self.dets
        return result

    def to_physical(self, reference_points: FloatArray) -> FloatArray:
        """Map (Q, 2) reference points to (T, Q, 2) physical points."""
        result: FloatArray = (
            np.einsum("tij,qj->tqi", self.jacobians, reference_points)
            + self.offsets[:, None, :]
        )
        return result


def locate_and_eval_setup(mesh: TriMesh, rtol: float = 1e-14) -> AffineMaps:
    """
    Compute and cache the affine map of every triangle.

    Raises:
        MeshError: If a triangle is degenerate or clockwise.
    """
    p = mesh.vertices[mesh.triangles]
    jacobians = np.stack([p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]], axis=2)
    dets = jacobians[:, 0, 0] * jacobians[:, 1, 1] - jacobians[:, 0, 1] * jacobians[:, 1, 0]

    scale = np.max(np.abs(jacobians), axis=(1, 2)) ** 2
    bad = dets <= rtol * np.maximum(scale, np.finfo(float).tiny)
    if np.any(bad):
        first = int(np.flatnonzero(bad)[0])
        raise MeshError(f"Degenerate or inverted triangle {first} (det={dets[first]:.3e})")

    inv_transposes = np.empty_like(jacobians)
    inv_transposes[:, 0, 0] = jacobians[:, 1, 1] / dets
    inv_transposes[:, 0, 1] = -jacobians[:, 1, 0] / dets
    inv_transposes[:, 1, 0] = -jacobians[:, 0, 1] / dets
    inv_transposes[:, 1, 1] = jacobians[:, 0, 0] / dets

    return AffineMaps(
        jacobians=jacobians,
        offsets=p[:, 0].copy(),
        dets=dets,
        inv_transposes=inv_transposes,
    )
