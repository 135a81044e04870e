"""File management service for output directories."""

from pathlib import Path

from projfem.errors import ConfigError


class FileManager:
    """Service for output directory resolution and validation."""

    def __init__(self, output_dir: Path | None = None) -> None:
        """
        Initialize the file manager.

        Args:
            output_dir: Default output directory for reports and VTK series.
        """
        self._output_dir = output_dir or Path("projfem_output")

    @property
    def output_dir(self) -> Path:
        """Get the output directory."""
        return self._output_dir

    @output_dir.setter
    def output_dir(self, value: Path) -> None:
        """Set the output directory."""
        self._output_dir = value

    def ensure_output_dir(self) -> Path:
        """
        Ensure the output directory exists and is writable.

        Returns:
            The output directory path.

        Raises:
            ConfigError: If the path exists but is not a directory.
        """
        if self._output_dir.exists() and not self._output_dir.is_dir():
            raise ConfigError(f"Output path is not a directory: {self._output_dir}")
        self._output_dir.mkdir(parents=True, exist_ok=True)
        return self._output_dir

    def setup_output_dir(self, explicit_output_dir: Path | None = None) -> Path:
        """
        Select the output directory and create it.

        Args:
            explicit_output_dir: Optional directory from ``--out`` or the config file.
        """
        if explicit_output_dir is not None:
            self._output_dir = explicit_output_dir
        return self.ensure_output_dir()

    def subdir(self, name: str) -> Path:
        """A directory below the output directory, e.g. for one VTK series."""
        path = self._output_dir / name
        path.mkdir(parents=True, exist_ok=True)
        return path
