"""Services module for projfem."""

from .file_manager import FileManager
from .report_writer import ReportWriter
from .simulator import RunResult, Simulator, build_operators
from .vtk_writer import VtkWriter

__all__ = ["FileManager", "ReportWriter", "RunResult", "Simulator", "VtkWriter", "build_operators"]
