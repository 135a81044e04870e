"""Custom exceptions for projfem."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from projfem.sparse.krylov import SolveReport


class ProjfemError(Exception):
    """Base class for every error raised by the library."""

    pass


class MeshError(ProjfemError):
    """Raised when a mesh cannot be built or is geometrically invalid."""

    pass


class QuadratureError(ProjfemError):
    """Raised when a quadrature rule of the requested degree is unavailable."""

    pass


class AssemblyError(ProjfemError):
    """Raised on inconsistent spaces, fields or operator dimensions."""

    pass


class SolverError(ProjfemError):
    """Raised when a linear solve fails to converge inside a time step."""

    def __init__(self, message: str, report: SolveReport) -> None:
        super().__init__(f"{message} ({report})")
        self.report = report


class ConfigError(ProjfemError):
    """Raised when a run configuration is invalid."""

    pass


class NormError(ProjfemError):
    """Raised on malformed error histories or order computations."""

    pass
