"""Options shared by every command, and the error-to-exit-code translation."""

from __future__ import annotations

from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, Any, Iterator, Optional

import typer
from rich.console import Console

from projfem.config.run_config import RunConfig, resolve_run_config
from projfem.container import AppContext
from projfem.errors import ConfigError, ProjfemError

USAGE_EXIT_CODE = 2
FAILURE_EXIT_CODE = 1

ConfigOption = Annotated[
    Optional[Path],
    typer.Option("--config", "-c", help="Flat key = value config file.", resolve_path=True),
]
SchemeOption = Annotated[
    Optional[str],
    typer.Option("--scheme", "-s", help="incremental, rotational, consistent or penalty."),
]
NOption = Annotated[Optional[int], typer.Option("--n", help="Mesh subdivisions per side.")]
KOption = Annotated[Optional[float], typer.Option("--k", help="Time step.")]
TOption = Annotated[Optional[float], typer.Option("--T", help="Final time.")]
NuOption = Annotated[Optional[float], typer.Option("--nu", help="Viscosity.")]
PairOption = Annotated[
    Optional[str], typer.Option("--pair", help="th (P2xP1) or mini (P1bxP1).")
]
DiagonalOption = Annotated[
    Optional[str], typer.Option("--diagonal", help="right, left or alternating.")
]
OutOption = Annotated[
    Optional[Path],
    typer.Option("--out", "-o", help="Output directory.", resolve_path=True),
]
VtkOption = Annotated[
    Optional[bool], typer.Option("--vtk/--no-vtk", help="Export VTK fields.")
]
VtkEveryOption = Annotated[
    Optional[int], typer.Option("--vtk-every", help="VTK step stride.")
]
WorkersOption = Annotated[
    Optional[int], typer.Option("--workers", "-w", help="Concurrent runs.")
]
FormatOption = Annotated[
    Optional[str], typer.Option("--format", "-f", help="csv or pretty.")
]
ProblemOption = Annotated[
    Optional[str], typer.Option("--problem", help="manufactured or decay.")
]
SeedOption = Annotated[
    Optional[int], typer.Option("--seed", help="Seed of the decay problem's initial data.")
]


def load_run_config(
    app_ctx: AppContext, config_path: Path | None, overrides: dict[str, Any]
) -> RunConfig:
    """Defaults from settings < config file < command-line overrides."""
    defaults = {
        "out": Path(app_ctx.settings.default_output_dir),
        "workers": app_ctx.settings.default_workers,
    }
    return resolve_run_config(config_path, overrides, defaults)


@contextmanager
def exit_on_error(console: Console) -> Iterator[None]:
    """Translate library errors into exit codes: 2 for usage, 1 otherwise."""
    try:
        yield
    except ConfigError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(USAGE_EXIT_CODE)
    except (ProjfemError, OSError) as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(FAILURE_EXIT_CODE)
