"""Protocol definitions for report emission."""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Protocol, Sequence

from rich.table import Table

from projfem.verify.orders import ConvergenceReport

if TYPE_CHECKING:
    from projfem.services.simulator import RunResult


class ReportWriterProtocol(Protocol):
    """Writes run, sweep and comparison results as CSV and rich tables."""

    def write_run(self, result: RunResult, out_dir: Path) -> list[Path]:
        """
        Write the per-step invariant log and, if present, the error series.

        Returns:
            Paths of the written files.
        """
        ...

    def write_convergence(self, report: ConvergenceReport, path: Path) -> Path:
        ...

    def read_convergence(self, path: Path) -> ConvergenceReport:
        ...

    def write_comparison(self, results: Sequence[RunResult], out_dir: Path) -> list[Path]:
        ...

    def run_table(self, result: RunResult) -> Table:
        ...

    def convergence_table(self, report: ConvergenceReport) -> Table:
        ...

    def errors_table(self, report: ConvergenceReport) -> Table:
        ...

    def comparison_table(self, results: Sequence[RunResult]) -> Table:
        ...
