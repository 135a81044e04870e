"""Time-convergence sweep command."""

from typing import Annotated, Optional

import typer
from rich.console import Console

from projfem.commands.options import (
    ConfigOption,
    DiagonalOption,
    FormatOption,
    NOption,
    NuOption,
    OutOption,
    PairOption,
    SchemeOption,
    TOption,
    WorkersOption,
    exit_on_error,
    load_run_config,
)
from projfem.config.run_config import ReportFormat
from projfem.container import AppContext

app = typer.Typer()
console = Console()


@app.command("convergence")
def convergence(
    ctx: typer.Context,
    config: ConfigOption = None,
    scheme: SchemeOption = None,
    n: NOption = None,
    t_final: TOption = None,
    nu: NuOption = None,
    pair: PairOption = None,
    diagonal: DiagonalOption = None,
    out: OutOption = None,
    workers: WorkersOption = None,
    format: FormatOption = None,
    k_list: Annotated[
        Optional[str],
        typer.Option("--k-list", help="Decreasing time steps, e.g. 0.2,0.1,0.05,0.025."),
    ] = None,
) -> None:
    """
    Observed orders in time against the manufactured solution.

    Examples:
        projfem convergence --n 32
        projfem convergence --scheme rotational --k-list 0.2,0.1,0.05 --workers 3
    """
    app_ctx: AppContext = ctx.obj
    with exit_on_error(console):
        cfg = load_run_config(
            app_ctx,
            config,
            {
                "scheme": scheme,
                "n": n,
                "T": t_final,
                "nu": nu,
                "pair": pair,
                "diagonal": diagonal,
                "out": out,
                "workers": workers,
                "format": format,
                "k_list": k_list,
            },
        )
        ks = cfg.ladder()
        out_dir = app_ctx.file_manager.setup_output_dir(cfg.out)
        console.print(
            f"Sweeping: [cyan]{cfg.scheme.value}[/cyan] {cfg.pair.label} n={cfg.n} "
            f"k={', '.join(f'{k:g}' for k in ks)}..."
        )
        report, _ = app_ctx.simulator.convergence(cfg, ks, workers=cfg.workers)
        path = app_ctx.report_writer.write_convergence(
            report, out_dir / f"convergence_{cfg.scheme.value}_{cfg.pair.value}_n{cfg.n}.csv"
        )

    if cfg.format is ReportFormat.PRETTY:
        console.print(app_ctx.report_writer.errors_table(report))
        console.print(app_ctx.report_writer.convergence_table(report))
    else:
        typer.echo(path.read_text(encoding="utf-8"), nl=False)
    console.print(f"  → [green]{path}[/green]")
    console.print(f"[green]✓ {len(ks)} runs in {report.runtime_seconds:.3f}s[/green]")
