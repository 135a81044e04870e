"""Typer CLI application entry point for projfem."""

from importlib import metadata
from typing import Optional

import typer
from rich.console import Console

from projfem import __version__
from projfem.commands import compare_app, convergence_app, run_app
from projfem.container import create_container
from projfem.logging_setup import configure_logging

console = Console()


def get_safe_version(package_name: str, fallback: str = __version__) -> str:
    """Installed distribution version, or the source tree's version when not installed."""
    try:
        return metadata.version(package_name)
    except metadata.PackageNotFoundError:
        return fallback


def version_callback(value: bool | None) -> None:
    """Print version and exit."""
    if value:
        version = get_safe_version("projfem")
        console.print(f"projfem version: {version}")
        raise typer.Exit()


app = typer.Typer(
    name="projfem",
    help="Pressure-projection FE solver for 2D incompressible Navier-Stokes.",
    no_args_is_help=True,
)

# Register commands at root level
app.add_typer(run_app, name="")
app.add_typer(convergence_app, name="")
app.add_typer(compare_app, name="")


@app.callback()
def main(
    ctx: typer.Context,
    version: Optional[bool] = typer.Option(
        None,
        "--version",
        "-v",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit.",
    ),
) -> None:
    """
    projfem - segregated pressure-projection schemes on the unit square.

    Run single simulations, time-convergence sweeps against the manufactured
    solution, and cost comparisons between schemes.
    """
    ctx.obj = create_container()
    configure_logging(ctx.obj.settings.log_level)


if __name__ == "__main__":
    app()
