"""Structured conforming triangulations of the unit square."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt

from projfem.errors import MeshError

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]
BoolArray = npt.NDArray[np.bool_]

# Local edge k joins local vertices _LOCAL_EDGES[k].
_LOCAL_EDGES = np.array([[0, 1], [1, 2], [2, 0]], dtype=np.int64)


class Diagonal(str, Enum):
    """How each square cell of the structured grid is split in two."""

    RIGHT = "right"
    LEFT = "left"
    ALTERNATING = "alternating"


def _frozen(array: npt.NDArray[np.generic]) -> npt.NDArray[np.generic]:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class TriMesh:
    """
    Immutable triangulation with vertex, edge and boundary connectivity.

    Attributes:
        vertices: (V, 2) coordinates in [0, 1]^2.
        triangles: (T, 3) vertex indices, counter-clockwise.
        edges: (E, 2) vertex index pairs, lower index first.
        triangle_edges: (T, 3) edge indices; local edge k joins local
            vertices (k, k+1 mod 3).
        boundary_vertex_flags: (V,) True on the boundary of the square.
        boundary_edge_flags: (E,) True for edges owned by one triangle.
        n: subdivisions per side.
        diagonal: cell split used to build the mesh.
    """

    vertices: FloatArray
    triangles: IntArray
    edges: IntArray
    triangle_edges: IntArray
    boundary_vertex_flags: BoolArray
    boundary_edge_flags: BoolArray
    n: int
    diagonal: Diagonal

    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def n_triangles(self) -> int:
        return int(self.triangles.shape[0])

    @property
    def n_edges(self) -> int:
        return int(self.edges.shape[0])

    @property
    def h(self) -> float:
        """Mesh size up to the sqrt(2) diagonal factor."""
        return 1.0 / self.n

    def signed_areas(self) -> FloatArray:
        p = self.vertices[self.triangles]
        e1 = p[:, 1] - p[:, 0]
        e2 = p[:, 2] - p[:, 0]
        result: FloatArray = 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])
        return result

    def edge_triangle_counts(self) -> IntArray:
        """Number of triangles sharing each edge (1 on the boundary, 2 inside)."""
        counts: IntArray = np.bincount(
            self.triangle_edges.ravel(), minlength=self.n_edges
        ).astype(np.int64)
        return counts


def _split_cells(n: int, diagonal: Diagonal) -> IntArray:
    i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="xy")
    i = i.ravel()
    j = j.ravel()
    a = j * (n + 1) + i
    b = a + 1
    c = a + n + 2
    d = a + n + 1

    right = np.stack([np.stack([a, b, c], axis=1), np.stack([a, c, d], axis=1)], axis=1)
    left = np.stack([np.stack([a, b, d], axis=1), np.stack([b, c, d], axis=1)], axis=1)

    if diagonal is Diagonal.RIGHT:
        cells = right
    elif diagonal is Diagonal.LEFT:
        cells = left
    else:
        use_right = ((i + j) % 2 == 0)[:, None, None]
        cells = np.where(use_right, right, left)

    result: IntArray = cells.reshape(-1, 3).astype(np.int64)
    return result


def build_structured(n: int, diagonal: Diagonal | str = Diagonal.RIGHT) -> TriMesh:
    """
    Build the n x n structured triangulation of the unit square.

    Args:
        n: Number of subintervals per side (h = 1/n).
        diagonal: Cell split: ``right`` joins lower-left to upper-right,
            ``left`` joins lower-right to upper-left, ``alternating``
            flips between the two in a checkerboard.

    Returns:
        TriMesh with (n+1)^2 vertices, 2n^2 triangles and 3n^2 + 2n edges.

    Raises:
        MeshError: If n < 1 or the diagonal name is unknown.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise MeshError(f"Subdivision count must be a positive integer, got {n!r}")
    n = int(n)
    try:
        diagonal = Diagonal(diagonal)
    except ValueError as e:
        raise MeshError(f"Unknown diagonal: {diagonal}") from e

    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="xy")
    i = i.ravel()
    j = j.ravel()
    vertices = np.stack([i / n, j / n], axis=1).astype(np.float64)
    boundary_vertex_flags = (i == 0) | (i == n) | (j == 0) | (j == n)

    triangles = _split_cells(n, diagonal)

    local = np.sort(triangles[:, _LOCAL_EDGES], axis=2).reshape(-1, 2)
    edges, inverse = np.unique(local, axis=0, return_inverse=True)
    triangle_edges = np.asarray(inverse, dtype=np.int64).reshape(-1, 3)
    counts = np.bincount(triangle_edges.ravel(), minlength=edges.shape[0])
    boundary_edge_flags = counts == 1

    mesh = TriMesh(
        vertices=_frozen(vertices),
        triangles=_frozen(triangles),
        edges=_frozen(edges.astype(np.int64)),
        triangle_edges=_frozen(triangle_edges),
        boundary_vertex_flags=_frozen(boundary_vertex_flags),
        boundary_edge_flags=_frozen(boundary_edge_flags),
        n=n,
        diagonal=diagonal,
    )
    logger.debug(
        "Built %dx%d mesh (%s): %d vertices, %d triangles, %d edges",
        n,
        n,
        diagonal.value,
        mesh.n_vertices,
        mesh.n_triangles,
        mesh.n_edges,
    )
    return mesh
