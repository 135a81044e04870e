"""CSV emission and rich tables for runs, sweeps and scheme comparisons."""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Iterable, Sequence

from rich.table import Table

from projfem.errors import ConfigError
from projfem.schemes.state import SchemeName
from projfem.services.simulator import RunResult
from projfem.verify.norms import NORM_LABELS, NORM_NAMES
from projfem.verify.orders import ConvergenceReport

logger = logging.getLogger(__name__)

REPORT_HEADER = ("scheme", "pair", "n", "k", "norm", "value", "order")
SERIES_HEADER = ("m", "t", "u1_l2", "u1_h1", "u2_l2", "u2_h1", "p_l2")
INVARIANT_HEADER = (
    "m",
    "t",
    "kinetic_energy",
    "pressure_energy",
    "energy",
    "identity_residual",
    "orthogonality_residual",
    "velocity_iterations",
    "pressure_iterations",
)
TIMING_HEADER = (
    "scheme",
    "assembly_seconds",
    "solve_seconds",
    "total_seconds",
    "relative_cost",
    "velocity_iterations",
    "pressure_iterations",
)


def format_float(value: float | None) -> str:
    """17 significant digits; empty for missing values."""
    return "" if value is None else format(float(value), ".17g")


def format_seconds(value: float) -> str:
    return f"{value:.3f}"


def pair_label(k_coarse: float, k_fine: float) -> str:
    return f"{k_coarse:g}-{k_fine:g}"


def _write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    logger.debug("wrote %s", path)
    return path


def convergence_rows(report: ConvergenceReport) -> list[list[str]]:
    """Tidy rows: one per (k, norm), then one per (k pair, norm)."""
    rows = []
    for k, norms in zip(report.ks, report.norms):
        for name in NORM_NAMES:
            if name in norms:
                rows.append(
                    [report.scheme, report.pair, str(report.n), format_float(k), name, format_float(norms[name]), ""]
                )
    for (k_coarse, k_fine), orders in zip(report.pairs, report.orders):
        for name in NORM_NAMES:
            if name in orders:
                rows.append(
                    [
                        report.scheme,
                        report.pair,
                        str(report.n),
                        pair_label(k_coarse, k_fine),
                        name,
                        "",
                        format_float(orders[name]),
                    ]
                )
    return rows


def relative_costs(results: Sequence[RunResult]) -> list[float | None]:
    """Total time of each run over that of the incremental run, if present."""
    reference = next(
        (r.timings.total for r in results if r.config.scheme is SchemeName.INCREMENTAL), None
    )
    if not reference:
        return [None for _ in results]
    return [r.timings.total / reference for r in results]


class ReportWriter:
    """Writes results as CSV and renders them as rich tables."""

    # -- CSV ----------------------------------------------------------------

    def write_run(self, result: RunResult, out_dir: Path) -> list[Path]:
        """
        Write the per-step invariant log and, for the manufactured problem,
        the error series.

        Returns:
            Paths of the written files.
        """
        stem = f"{result.config.scheme.value}_n{result.config.n}"
        written = [
            _write_rows(
                out_dir / f"{stem}_invariants.csv",
                INVARIANT_HEADER,
                (
                    [
                        d.m,
                        format_float(d.t),
                        format_float(d.kinetic_energy),
                        format_float(d.pressure_energy),
                        format_float(d.energy),
                        format_float(d.identity_residual),
                        format_float(d.orthogonality_residual),
                        d.velocity_iterations,
                        d.pressure_iterations,
                    ]
                    for d in result.diagnostics
                ),
            )
        ]
        if result.series is not None:
            written.append(
                _write_rows(
                    out_dir / f"{stem}_errors.csv",
                    SERIES_HEADER,
                    ([m, *(format_float(v) for v in row)] for m, *row in result.series.rows()),
                )
            )
            written.append(
                _write_rows(
                    out_dir / f"{stem}_norms.csv",
                    REPORT_HEADER,
                    self._norm_rows(result),
                )
            )
        return written

    def write_convergence(self, report: ConvergenceReport, path: Path) -> Path:
        return _write_rows(path, REPORT_HEADER, convergence_rows(report))

    def read_convergence(self, path: Path) -> ConvergenceReport:
        """
        Parse a CSV written by :meth:`write_convergence`.

        Order rows are recomputed from the values, not read back.

        Raises:
            ConfigError: If the header or the rows are malformed.
        """
        with path.open(newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or tuple(header) != REPORT_HEADER:
                raise ConfigError(f"Not a convergence report: {path}")
            report: ConvergenceReport | None = None
            current: dict[float, dict[str, float]] = {}
            for row in reader:
                scheme, pair, n, k, norm, value, _ = row
                if report is None:
                    report = ConvergenceReport(scheme=scheme, pair=pair, n=int(n))
                if value:
                    current.setdefault(float(k), {})[norm] = float(value)
        if report is None:
            raise ConfigError(f"Empty convergence report: {path}")
        for k, norms in current.items():
            report.add(k, norms)
        return report

    def write_comparison(self, results: Sequence[RunResult], out_dir: Path) -> list[Path]:
        """Error norms of every scheme, and the timing table."""
        norm_rows = [row for result in results for row in self._norm_rows(result)]
        timing_rows = [
            [
                result.config.scheme.value,
                format_seconds(result.timings.assembly),
                format_seconds(result.timings.solve),
                format_seconds(result.timings.total),
                format_float(cost),
                result.timings.velocity_iterations,
                result.timings.pressure_iterations,
            ]
            for result, cost in zip(results, relative_costs(results))
        ]
        return [
            _write_rows(out_dir / "comparison_norms.csv", REPORT_HEADER, norm_rows),
            _write_rows(out_dir / "comparison_timings.csv", TIMING_HEADER, timing_rows),
        ]

    def _norm_rows(self, result: RunResult) -> list[list[str]]:
        config = result.config
        return [
            [
                config.scheme.value,
                config.pair.label,
                str(config.n),
                format_float(config.k),
                name,
                format_float(value),
                "",
            ]
            for name, value in result.norms.items()
        ]

    # -- tables -------------------------------------------------------------

    def convergence_table(self, report: ConvergenceReport) -> Table:
        """Norms as rows, consecutive k pairs as order columns."""
        table = Table(
            title=f"Error orders in time: {report.scheme}, {report.pair}, n={report.n}"
        )
        table.add_column("norm")
        pairs = report.pairs
        for k_coarse, k_fine in pairs:
            table.add_column(pair_label(k_coarse, k_fine), justify="right")
        orders = report.orders
        for name in NORM_NAMES:
            if not all(name in o for o in orders):
                continue
            table.add_row(NORM_LABELS[name], *(f"{o[name]:.3f}" for o in orders))
        return table

    def errors_table(self, report: ConvergenceReport) -> Table:
        table = Table(title="Errors")
        table.add_column("norm")
        for k in report.ks:
            table.add_column(f"k={k:g}", justify="right")
        for name in NORM_NAMES:
            if all(name in norms for norms in report.norms):
                table.add_row(NORM_LABELS[name], *(f"{norms[name]:.4e}" for norms in report.norms))
        return table

    def comparison_table(self, results: Sequence[RunResult]) -> Table:
        """Schemes as columns: error norms, then timings and iterations."""
        table = Table(title="Computational cost")
        table.add_column("")
        for result in results:
            table.add_column(result.config.scheme.value, justify="right")
        for name in NORM_NAMES:
            if all(name in r.norms for r in results):
                table.add_row(NORM_LABELS[name], *(f"{r.norms[name]:.4e}" for r in results))
        table.add_row("assembly (s)", *(format_seconds(r.timings.assembly) for r in results))
        table.add_row("solve (s)", *(format_seconds(r.timings.solve) for r in results))
        table.add_row("total (s)", *(format_seconds(r.timings.total) for r in results))
        table.add_row(
            "relative cost",
            *("-" if c is None else f"{c:.2f}" for c in relative_costs(results)),
        )
        table.add_row("velocity its", *(str(r.timings.velocity_iterations) for r in results))
        table.add_row("pressure its", *(str(r.timings.pressure_iterations) for r in results))
        return table

    def run_table(self, result: RunResult) -> Table:
        config = result.config
        table = Table(title=f"{config.scheme.value}, {config.pair.label}, n={config.n}, k={config.k:g}")
        table.add_column("quantity")
        table.add_column("value", justify="right")
        for name, value in result.norms.items():
            table.add_row(NORM_LABELS[name], f"{value:.4e}")
        if result.diagnostics:
            first, last = result.diagnostics[0], result.diagnostics[-1]
            table.add_row("energy (initial)", f"{first.energy:.6e}")
            table.add_row("energy (final)", f"{last.energy:.6e}")
        table.add_row("assembly (s)", format_seconds(result.timings.assembly))
        table.add_row("solve (s)", format_seconds(result.timings.solve))
        return table
