"""Protocol definitions for projfem services."""

from .report_protocol import ReportWriterProtocol
from .scheme_protocol import SchemeProtocol, SimulatorProtocol

__all__ = ["ReportWriterProtocol", "SchemeProtocol", "SimulatorProtocol"]
