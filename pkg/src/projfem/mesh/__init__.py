"""Structured triangulations of the unit square."""

from .affine import AffineMaps, locate_and_eval_setup
from .trimesh import Diagonal, TriMesh, build_structured

__all__ = ["AffineMaps", "Diagonal", "TriMesh", "build_structured", "locate_and_eval_setup"]
