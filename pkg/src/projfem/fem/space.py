"""Scalar finite element spaces and coefficient fields over a TriMesh."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from projfem.errors import AssemblyError
from projfem.fem.basis import ElementKind, local_nodes, tabulate
from projfem.fem.quadrature import QuadratureRule, quadrature_rule
from projfem.mesh.affine import AffineMaps, locate_and_eval_setup
from projfem.mesh.trimesh import BoolArray, FloatArray, IntArray, TriMesh

ScalarFunction = Callable[[FloatArray, FloatArray], FloatArray | float]


@dataclass(frozen=True)
class QuadratureData:
    """
    Basis tabulation of a space at the points of one quadrature rule.

    Attributes:
        rule: The quadrature rule.
        values: (Q, D) basis values, identical on every triangle.
        gradients: (T, Q, D, 2) physical basis gradients.
        weights: (T, Q) physical weights, area(T) * w_q.
        points: (T, Q, 2) physical quadrature points.
    """

    rule: QuadratureRule
    values: FloatArray
    gradients: FloatArray
    weights: FloatArray
    points: FloatArray


class FeSpace:
    """
    A scalar P1, P2 or P1-bubble space with its global degree-of-freedom map.

    P1 dofs are the vertices; P2 adds one dof per edge (numbered after the
    vertices, in edge order); P1Bubble adds one interior dof per triangle.
    """

    def __init__(self, mesh: TriMesh, kind: ElementKind | str) -> None:
        self.mesh = mesh
        self.kind = ElementKind(kind)

        tris = mesh.triangles
        n_vertices = mesh.n_vertices
        if self.kind is ElementKind.P1:
            cell_dofs = tris.copy()
            n_dofs = n_vertices
            boundary = np.flatnonzero(mesh.boundary_vertex_flags)
        elif self.kind is ElementKind.P2:
            cell_dofs = np.hstack([tris, n_vertices + mesh.triangle_edges])
            n_dofs = n_vertices + mesh.n_edges
            boundary = np.concatenate(
                [
                    np.flatnonzero(mesh.boundary_vertex_flags),
                    n_vertices + np.flatnonzero(mesh.boundary_edge_flags),
                ]
            )
        else:
            bubbles = n_vertices + np.arange(mesh.n_triangles, dtype=np.int64)
            cell_dofs = np.hstack([tris, bubbles[:, None]])
            n_dofs = n_vertices + mesh.n_triangles
            boundary = np.flatnonzero(mesh.boundary_vertex_flags)

        self.cell_dofs: IntArray = cell_dofs.astype(np.int64)
        self.cell_dofs.setflags(write=False)
        self.n_dofs: int = int(n_dofs)
        self.boundary_dofs: IntArray = np.sort(boundary).astype(np.int64)
        self.boundary_dofs.setflags(write=False)
        self._quadrature: dict[int, QuadratureData] = {}

    def __repr__(self) -> str:
        return f"FeSpace({self.kind.value}, n={self.mesh.n}, n_dofs={self.n_dofs})"

    @property
    def dof_per_cell(self) -> int:
        return self.kind.dofs_per_cell

    @cached_property
    def maps(self) -> AffineMaps:
        return locate_and_eval_setup(self.mesh)

    @cached_property
    def boundary_mask(self) -> BoolArray:
        mask = np.zeros(self.n_dofs, dtype=bool)
        mask[self.boundary_dofs] = True
        return mask

    @cached_property
    def node_coordinates(self) -> FloatArray:
        """Interpolation node of every dof (bubble nodes sit at centroids)."""
        reference = local_nodes(self.kind)[:, 1:3]
        cell_nodes = self.maps.to_physical(reference)
        coordinates = np.empty((self.n_dofs, 2))
        coordinates[self.cell_dofs] = cell_nodes
        return coordinates

    @cached_property
    def interpolation_mask(self) -> BoolArray:
        """True for dofs whose value is a nodal value (False for bubbles)."""
        mask = np.ones(self.n_dofs, dtype=bool)
        if self.kind is ElementKind.P1_BUBBLE:
            mask[self.mesh.n_vertices :] = False
        return mask

    def quadrature(self, degree: int) -> QuadratureData:
        """Tabulate the basis at the rule of the given degree (cached)."""
        cached = self._quadrature.get(degree)
        if cached is not None:
            return cached
        rule = quadrature_rule(degree)
        values, ref_grads = tabulate(self.kind, rule.barycentric)
        maps = self.maps
        gradients = np.einsum("tij,qdj->tqdi", maps.inv_transposes, ref_grads)
        weights = maps.areas[:, None] * rule.weights[None, :]
        points = maps.to_physical(rule.reference_points)
        data = QuadratureData(rule, values, gradients, weights, points)
        self._quadrature[degree] = data
        return data

    def same_mesh(self, other: FeSpace) -> bool:
        return self.mesh is other.mesh


@dataclass
class Field:
    """Coefficient vector of a function in a FeSpace."""

    space: FeSpace
    values: FloatArray = field(repr=False)

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (self.space.n_dofs,):
            raise AssemblyError(
                f"Field length {self.values.shape} does not match "
                f"{self.space.n_dofs} dofs of {self.space!r}"
            )

    @classmethod
    def zeros(cls, space: FeSpace) -> Field:
        return cls(space, np.zeros(space.n_dofs))

    def copy(self) -> Field:
        return Field(self.space, self.values.copy())

    def at_quadrature(self, degree: int) -> tuple[FloatArray, FloatArray]:
        """Values (T, Q) and gradients (T, Q, 2) at the rule's points."""
        data = self.space.quadrature(degree)
        local = self.values[self.space.cell_dofs]
        values = local @ data.values.T
        gradients = np.einsum("td,tqdi->tqi", local, data.gradients)
        return values, gradients


def interpolate(space: FeSpace, f: ScalarFunction) -> Field:
    """
    Nodal interpolation: f at vertices and edge midpoints, zero on bubbles.

    Args:
        space: Target space.
        f: Vectorised scalar function of (x, y).
    """
    nodes = space.node_coordinates
    values = np.zeros(space.n_dofs)
    mask = space.interpolation_mask
    sampled = np.broadcast_to(f(nodes[mask, 0], nodes[mask, 1]), (int(mask.sum()),))
    values[mask] = sampled
    return Field(space, values)


def eval_field(
    field: Field, triangle: int, point: FloatArray
) -> tuple[float, FloatArray]:
    """
    Evaluate a field and its physical gradient inside one triangle.

    Args:
        field: Field to evaluate.
        triangle: Triangle index.
        point: Barycentric coordinates (3,).

    Returns:
        (value, gradient) with gradient mapped by B_T^{-T}.
    """
    space = field.space
    if not 0 <= triangle < space.mesh.n_triangles:
        raise AssemblyError(f"Triangle index {triangle} out of range")
    values, ref_grads = tabulate(space.kind, np.asarray(point, dtype=np.float64).reshape(1, 3))
    coeffs = field.values[space.cell_dofs[triangle]]
    value = float(coeffs @ values[0])
    ref_gradient = coeffs @ ref_grads[0]
    gradient: FloatArray = space.maps.inv_transposes[triangle] @ ref_gradient
    return value, gradient
