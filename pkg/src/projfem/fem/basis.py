"""Reference Lagrange and bubble bases in barycentric coordinates."""

from __future__ import annotations

from enum import Enum

import numpy as np

from projfem.mesh.trimesh import FloatArray

# d(lambda_i)/d(xi, eta) with lambda_0 = 1 - xi - eta, lambda_1 = xi, lambda_2 = eta.
_GRAD_LAMBDA = np.array([[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]])


class ElementKind(str, Enum):
    """Scalar finite element families."""

    P1 = "P1"
    P2 = "P2"
    P1_BUBBLE = "P1Bubble"

    @property
    def dofs_per_cell(self) -> int:
        return {ElementKind.P1: 3, ElementKind.P2: 6, ElementKind.P1_BUBBLE: 4}[self]


def _as_points(points: FloatArray) -> FloatArray:
    lam = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if lam.shape[1] != 3:
        raise ValueError(f"Barycentric points must have 3 coordinates, got {lam.shape}")
    return lam


def tabulate(kind: ElementKind, points: FloatArray) -> tuple[FloatArray, FloatArray]:
    """
    Evaluate every local basis function at barycentric points.

    Local numbering: vertices 0..2, then for P2 the midpoints of local
    edges (0,1), (1,2), (2,0), or for P1Bubble the bubble 27*l0*l1*l2.

    Args:
        kind: Element family.
        points: (Q, 3) barycentric coordinates.

    Returns:
        values (Q, D) and reference gradients (Q, D, 2).
    """
    lam = _as_points(points)
    g = _GRAD_LAMBDA
    n_q = lam.shape[0]
    l0, l1, l2 = lam[:, 0], lam[:, 1], lam[:, 2]

    if kind is ElementKind.P1:
        values = lam.copy()
        grads = np.broadcast_to(g, (n_q, 3, 2)).copy()
        return values, grads

    if kind is ElementKind.P2:
        values = np.empty((n_q, 6))
        grads = np.empty((n_q, 6, 2))
        for i in range(3):
            values[:, i] = lam[:, i] * (2.0 * lam[:, i] - 1.0)
            grads[:, i, :] = (4.0 * lam[:, i] - 1.0)[:, None] * g[i]
        for k, (a, b) in enumerate(((0, 1), (1, 2), (2, 0))):
            values[:, 3 + k] = 4.0 * lam[:, a] * lam[:, b]
            grads[:, 3 + k, :] = 4.0 * (lam[:, b][:, None] * g[a] + lam[:, a][:, None] * g[b])
        return values, grads

    if kind is ElementKind.P1_BUBBLE:
        values = np.empty((n_q, 4))
        grads = np.empty((n_q, 4, 2))
        values[:, :3] = lam
        grads[:, :3, :] = g
        values[:, 3] = 27.0 * l0 * l1 * l2
        grads[:, 3, :] = 27.0 * (
            (l1 * l2)[:, None] * g[0] + (l0 * l2)[:, None] * g[1] + (l0 * l1)[:, None] * g[2]
        )
        return values, grads

    raise ValueError(f"Unknown element kind: {kind}")  # pragma: no cover


def reference_basis(kind: ElementKind, point: FloatArray) -> tuple[FloatArray, FloatArray]:
    """Values (D,) and reference gradients (D, 2) at a single barycentric point."""
    values, grads = tabulate(kind, np.asarray(point, dtype=np.float64).reshape(1, 3))
    return values[0], grads[0]


def local_nodes(kind: ElementKind) -> FloatArray:
    """Barycentric coordinates of the local nodes (bubble node at the centroid)."""
    vertices = np.eye(3)
    if kind is ElementKind.P1:
        return vertices
    if kind is ElementKind.P2:
        mids = 0.5 * np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 1.0]])
        return np.vstack([vertices, mids])
    return np.vstack([vertices, np.full((1, 3), 1.0 / 3.0)])
