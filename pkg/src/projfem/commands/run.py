"""Single simulation command."""

from pathlib import Path

import typer
from rich.console import Console

from projfem.commands.options import (
    ConfigOption,
    DiagonalOption,
    FormatOption,
    KOption,
    NOption,
    NuOption,
    OutOption,
    PairOption,
    ProblemOption,
    SchemeOption,
    SeedOption,
    TOption,
    VtkEveryOption,
    VtkOption,
    WorkersOption,
    exit_on_error,
    load_run_config,
)
from projfem.config.run_config import ReportFormat
from projfem.container import AppContext

app = typer.Typer()
console = Console()


@app.command("run")
def run(
    ctx: typer.Context,
    config: ConfigOption = None,
    scheme: SchemeOption = None,
    n: NOption = None,
    k: KOption = None,
    t_final: TOption = None,
    nu: NuOption = None,
    pair: PairOption = None,
    diagonal: DiagonalOption = None,
    out: OutOption = None,
    vtk: VtkOption = None,
    vtk_every: VtkEveryOption = None,
    workers: WorkersOption = None,
    format: FormatOption = None,
    problem: ProblemOption = None,
    seed: SeedOption = None,
) -> None:
    """
    Run one time integration and write its reports.

    Examples:
        projfem run --scheme incremental --n 16 --k 0.05 --T 1
        projfem run --config run.cfg --vtk --vtk-every 5
        projfem run --problem decay --k 0.5 --T 25 --seed 3
    """
    app_ctx: AppContext = ctx.obj
    with exit_on_error(console):
        cfg = load_run_config(
            app_ctx,
            config,
            {
                "scheme": scheme,
                "n": n,
                "k": k,
                "T": t_final,
                "nu": nu,
                "pair": pair,
                "diagonal": diagonal,
                "out": out,
                "vtk": vtk,
                "vtk_every": vtk_every,
                "workers": workers,
                "format": format,
                "problem": problem,
                "seed": seed,
            },
        )
        out_dir = app_ctx.file_manager.setup_output_dir(cfg.out)
        vtk_paths: list[Path] = []
        on_state = None
        if cfg.vtk:
            vtk_dir = app_ctx.file_manager.subdir(f"{cfg.scheme.value}_vtk")
            vtk_paths, on_state = app_ctx.vtk_writer.series_callback(
                vtk_dir, cfg.vtk_every, title=cfg.scheme.value
            )

        console.print(
            f"Running: [cyan]{cfg.scheme.value}[/cyan] n={cfg.n} k={cfg.k:g} T={cfg.T:g} "
            f"({cfg.n_steps} steps)..."
        )
        result = app_ctx.simulator.run(cfg, on_state)
        written = app_ctx.report_writer.write_run(result, out_dir)

    if cfg.format is ReportFormat.PRETTY:
        console.print(app_ctx.report_writer.run_table(result))
    else:
        # norms for the manufactured problem, the invariant log otherwise
        typer.echo(written[-1].read_text(encoding="utf-8"), nl=False)
    for path in written:
        console.print(f"  → [green]{path}[/green]")
    if vtk_paths:
        console.print(f"[green]✓ Wrote {len(vtk_paths)} VTK file(s)[/green]")
