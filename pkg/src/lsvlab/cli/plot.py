"""lsvlab plot: SVG of a tail curve CSV."""
from pathlib import Path

import typer

from lsvlab.cli.common import console, exits_on_lab_error


@exits_on_lab_error
def plot(
    csv_path: Path = typer.Argument(..., help="Tail curve CSV written by 'lsvlab tails --out'"),
    svg_path: Path = typer.Argument(..., help="Output SVG"),
) -> None:
    """Plot P(s_n <= eta) against eta on log-log axes."""
    # matplotlib is imported only when a plot is requested
    from lsvlab.harness.plotting import emit_plot

    path = emit_plot(csv_path, svg_path)
    console.print(f"[green]Plot written to[/green] {path}")
