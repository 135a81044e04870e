"""Dependency injection container for the projfem CLI application."""

from dataclasses import dataclass
from pathlib import Path

from projfem.config.settings import AppSettings
from projfem.protocols.report_protocol import ReportWriterProtocol
from projfem.protocols.scheme_protocol import SimulatorProtocol
from projfem.services import ReportWriter, Simulator, VtkWriter
from projfem.services.file_manager import FileManager


@dataclass
class AppContext:
    """Application context holding settings and service instances."""

    settings: AppSettings
    simulator: SimulatorProtocol
    report_writer: ReportWriterProtocol
    vtk_writer: VtkWriter
    file_manager: FileManager


def create_container(
    settings: AppSettings | None = None,
    simulator: SimulatorProtocol | None = None,
    report_writer: ReportWriterProtocol | None = None,
    vtk_writer: VtkWriter | None = None,
    file_manager: FileManager | None = None,
) -> AppContext:
    """
    Create and return the application context with all dependencies wired.

    Args:
        settings: Optional pre-configured settings. If None, loads from environment.
        simulator: Optional simulation runner override for testing.
        report_writer: Optional report writer override for testing.
        vtk_writer: Optional VTK writer override for testing.
        file_manager: Optional file manager override for testing.

    Returns:
        AppContext with settings and services initialized.
    """
    if settings is None:
        settings = AppSettings()

    if simulator is None:
        simulator = Simulator()

    if report_writer is None:
        report_writer = ReportWriter()

    if vtk_writer is None:
        vtk_writer = VtkWriter()

    if file_manager is None:
        file_manager = FileManager(output_dir=Path(settings.default_output_dir))

    return AppContext(
        settings=settings,
        simulator=simulator,
        report_writer=report_writer,
        vtk_writer=vtk_writer,
        file_manager=file_manager,
    )
