"""Integration tests for basic CLI command interface."""

import csv
from pathlib import Path

from typer.testing import CliRunner

from projfem.main import app

SMALL = ["--n", "2", "--k", "0.2", "--T", "0.4"]


def _rows(path: Path) -> list[list[str]]:
    with path.open(newline="", encoding="utf-8") as handle:
        return list(csv.reader(handle))


class TestCLICommands:
    """Tests for basic CLI command functionality."""

    def test_version_flag_shows_version(self, cli_runner: CliRunner):
        """Test that --version flag shows version information."""
        result = cli_runner.invoke(app, ["--version"])

        assert result.exit_code == 0
        assert "projfem version:" in result.output

    def test_help_flag_shows_help(self, cli_runner: CliRunner):
        """Test that --help flag lists the commands."""
        result = cli_runner.invoke(app, ["--help"])

        assert result.exit_code == 0
        assert "run" in result.output
        assert "convergence" in result.output
        assert "compare" in result.output

    def test_no_args_shows_help(self, cli_runner: CliRunner):
        """Test that running without arguments shows help."""
        result = cli_runner.invoke(app, [])

        assert "Usage:" in result.output or "projfem" in result.output

    def test_run_help(self, cli_runner: CliRunner):
        """Test that run --help documents the options."""
        result = cli_runner.invoke(app, ["run", "--help"])

        assert result.exit_code == 0
        assert "--scheme" in result.output
        assert "--vtk-every" in result.output


class TestRunCommand:
    """Integration tests for the run command."""

    def test_minimal_run(self, cli_runner: CliRunner, tmp_path: Path):
        """A two-step run writes the per-step error series."""
        out = tmp_path / "out"
        result = cli_runner.invoke(app, ["run", "--n", "4", "--k", "0.2", "--T", "0.4", "--out", str(out)])

        assert result.exit_code == 0, result.output
        assert "Running:" in result.output
        errors = _rows(out / "incremental_n4_errors.csv")
        assert errors[0] == ["m", "t", "u1_l2", "u1_h1", "u2_l2", "u2_h1", "p_l2"]
        assert [row[0] for row in errors[1:]] == ["0", "1", "2"]
        assert (out / "incremental_n4_invariants.csv").exists()
        assert (out / "incremental_n4_norms.csv").exists()

    def test_default_output_dir_from_settings(self, cli_runner: CliRunner, tmp_path: Path):
        """Without --out the directory comes from PROJFEM_OUTPUT_DIR."""
        result = cli_runner.invoke(app, ["run", *SMALL, "--format", "csv"])

        assert result.exit_code == 0, result.output
        assert (tmp_path / "test_output" / "incremental_n2_errors.csv").exists()

    def test_unknown_scheme(self, cli_runner: CliRunner, tmp_path: Path):
        """An unknown scheme is a usage error."""
        result = cli_runner.invoke(app, ["run", "--scheme", "foo", "--out", str(tmp_path)])

        assert result.exit_code == 2
        assert "unknown scheme" in result.output

    def test_step_not_dividing_final_time(self, cli_runner: CliRunner, tmp_path: Path):
        """k must divide T."""
        result = cli_runner.invoke(app, ["run", "--k", "0.15", "--T", "2", "--out", str(tmp_path)])

        assert result.exit_code == 2
        assert "does not divide" in result.output

    def test_vtk_stride(self, cli_runner: CliRunner, tmp_path: Path):
        """With ten steps and stride two, six field files are written."""
        out = tmp_path / "out"
        result = cli_runner.invoke(
            app,
            ["run", "--n", "2", "--k", "0.1", "--T", "1.0", "--vtk", "--vtk-every", "2", "--out", str(out)],
        )

        assert result.exit_code == 0, result.output
        files = sorted(p.name for p in (out / "incremental_vtk").glob("*.vtk"))
        assert files == [f"fields_{m:05d}.vtk" for m in (0, 2, 4, 6, 8, 10)]
        assert "Wrote 6 VTK file(s)" in result.output

    def test_config_file(self, cli_runner: CliRunner, tmp_path: Path):
        """Settings from a config file select the scheme and mesh."""
        config = tmp_path / "run.conf"
        config.write_text("scheme = rotational\nn = 2\nk = 0.2\nT = 0.4\npair = mini\n", encoding="utf-8")
        out = tmp_path / "out"
        result = cli_runner.invoke(app, ["run", "--config", str(config), "--out", str(out)])

        assert result.exit_code == 0, result.output
        norms = _rows(out / "rotational_n2_norms.csv")
        assert {row[1] for row in norms[1:]} == {"P1bxP1"}

    def test_unknown_config_key(self, cli_runner: CliRunner, tmp_path: Path):
        """Unknown config keys are usage errors."""
        config = tmp_path / "run.conf"
        config.write_text("mesh = 4\n", encoding="utf-8")
        result = cli_runner.invoke(app, ["run", "--config", str(config)])

        assert result.exit_code == 2
        assert "Unknown config key" in result.output

    def test_decay_problem(self, cli_runner: CliRunner, tmp_path: Path):
        """The unforced problem logs invariants only."""
        out = tmp_path / "out"
        result = cli_runner.invoke(
            app, ["run", "--problem", "decay", "--n", "2", "--k", "0.5", "--T", "2", "--out", str(out)]
        )

        assert result.exit_code == 0, result.output
        invariants = _rows(out / "incremental_n2_invariants.csv")
        assert len(invariants) == 1 + 5
        energies = [float(row[4]) for row in invariants[1:]]
        assert all(b <= a * (1 + 1e-8) for a, b in zip(energies, energies[1:]))
        assert not (out / "incremental_n2_errors.csv").exists()

    def test_csv_format_echoes_norms(self, cli_runner: CliRunner, tmp_path: Path):
        """With --format csv the norms file is printed to stdout."""
        out = tmp_path / "out"
        result = cli_runner.invoke(app, ["run", *SMALL, "--format", "csv", "--out", str(out)])

        assert result.exit_code == 0, result.output
        assert "scheme,pair,n,k,norm,value,order" in result.output
        assert "u1_linf_l2" in result.output

    def test_csv_format_echoes_invariants_for_decay(self, cli_runner: CliRunner, tmp_path: Path):
        """Without an exact solution the invariant log is printed instead."""
        out = tmp_path / "out"
        result = cli_runner.invoke(
            app,
            ["run", "--problem", "decay", "--n", "2", "--k", "0.5", "--T", "1", "--format", "csv", "--out", str(out)],
        )

        assert result.exit_code == 0, result.output
        assert "kinetic_energy" in result.output
