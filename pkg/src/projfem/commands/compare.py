"""Scheme comparison command: errors and computational cost."""

from typing import Annotated, Optional

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
    SeedOption,
    TOption,
    WorkersOption,
    exit_on_error,
    load_run_config,
)
from projfem.config.run_config import ReportFormat
from projfem.container import AppContext

app = typer.Typer()
console = Console()


@app.command("compare")
def compare(
    ctx: typer.Context,
    config: ConfigOption = None,
    n: NOption = None,
    k: KOption = None,
    t_final: TOption = None,
    nu: NuOption = None,
    pair: PairOption = None,
    diagonal: DiagonalOption = None,
    out: OutOption = None,
    workers: WorkersOption = None,
    format: FormatOption = None,
    problem: ProblemOption = None,
    seed: SeedOption = None,
    schemes: Annotated[
        Optional[str],
        typer.Option("--schemes", help="Comma-separated schemes; all four by default."),
    ] = None,
) -> None:
    """
    Run the same problem with several schemes and compare cost.

    Assembly and solve times are reported separately; the relative cost
    is normalised to the incremental scheme when it is included.

    Examples:
        projfem compare --n 32 --k 0.025
        projfem compare --schemes incremental,penalty --workers 2
    """
    app_ctx: AppContext = ctx.obj
    with exit_on_error(console):
        cfg = load_run_config(
            app_ctx,
            config,
            {
                "n": n,
                "k": k,
                "T": t_final,
                "nu": nu,
                "pair": pair,
                "diagonal": diagonal,
                "out": out,
                "workers": workers,
                "format": format,
                "problem": problem,
                "seed": seed,
                "schemes": schemes,
            },
        )
        names = cfg.comparison_schemes()
        out_dir = app_ctx.file_manager.setup_output_dir(cfg.out)
        console.print(
            f"Comparing: [cyan]{', '.join(s.value for s in names)}[/cyan] n={cfg.n} k={cfg.k:g}..."
        )
        results = app_ctx.simulator.compare(cfg, workers=cfg.workers)
        written = app_ctx.report_writer.write_comparison(results, out_dir)

    if cfg.format is ReportFormat.PRETTY:
        console.print(app_ctx.report_writer.comparison_table(results))
    else:
        for path in written:
            typer.echo(path.read_text(encoding="utf-8"), nl=False)
    for path in written:
        console.print(f"  → [green]{path}[/green]")
