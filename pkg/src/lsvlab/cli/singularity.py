"""lsvlab singularity: exact singular fraction by exhaustive enumeration."""
from typing import Optional

import typer

from lsvlab.cli.common import console, exits_on_lab_error
from lsvlab.harness.experiments import Ensemble, exact_singularity_frequency


@exits_on_lab_error
def singularity(
    n: int = typer.Option(..., "--n", help="Matrix size (n <= 5 for signs, n <= 4 row-regular)"),
    model: Ensemble = typer.Option(Ensemble.IID_RADEMACHER, "--model", "-m", help="IidRademacher or RowRegular"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Enumeration budget (default LSVLAB_ENUM_BUDGET)"),
) -> None:
    """Compute P(det M_n = 0) exactly."""
    with console.status(f"[cyan]Enumerating {model.value} matrices of size {n}...[/cyan]"):
        freq = exact_singularity_frequency(n, model, budget)
    console.print(f"P(singular) for {model.value}, n={n}: [bold cyan]{freq}[/bold cyan] = {float(freq):.10g}")
