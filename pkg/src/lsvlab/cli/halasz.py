"""lsvlab halasz: calibrate the Halasz constant over F_p on a mixed corpus."""
from pathlib import Path
from typing import Optional

import typer
from rich.table import Table

from lsvlab.cli.common import console, exits_on_lab_error
from lsvlab.core.rng import child_seed
from lsvlab.core.storage import storage
from lsvlab.harness.experiments import halasz_corpus
from lsvlab.models import least_prime_at_least
from lsvlab.structure import HalaszParams, halasz_calibration


@exits_on_lab_error
def halasz(
    n: int = typer.Option(160, "--n", help="Vector length"),
    p_min: float = typer.Option(2500, "--p", help="Use the least prime >= this value"),
    size: int = typer.Option(12, "--size", help="Corpus size"),
    k: int = typer.Option(1, "--k", help="R_k^* order"),
    M: float = typer.Option(2.0, "--M", help="Halasz M"),
    support: int = typer.Option(60, "--support", help="Support of the sparse corpus vectors (also s1 = s2)"),
    seed: int = typer.Option(0, "--seed", help="Root seed"),
    top: int = typer.Option(5, "--top", help="Rows to show, worst first"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the calibration report as JSON"),
) -> None:
    """Smallest C with rho_Fp(a) <= 1/p + C (R_k^* + ...)/(4^k n^2k sqrt M) + e^-M on the corpus."""
    p = least_prime_at_least(p_min)
    params = HalaszParams(p=p, k=k, M=M, s1=support, s2=support)
    with console.status(f"[cyan]Computing R_{k}^* over F_{p} for {size} vectors...[/cyan]"):
        corpus = halasz_corpus(n, p, size, child_seed(seed, 70), sparse_support=support)
        result = halasz_calibration(corpus, params)

    table = Table(title=f"Halasz calibration (n={n}, p={p}, k={k}, M={M:g})", show_header=True)
    table.add_column("#", style="cyan")
    table.add_column("rho_Fp", style="white")
    table.add_column("R_k^*", style="white")
    table.add_column("required C", style="magenta")
    for row in sorted(result.rows, key=lambda r: (-r.required_C, r.index))[:top]:
        table.add_row(str(row.index), f"{row.rho:.6g}", str(row.r_star), f"{row.required_C:.6g}")
    console.print(table)
    console.print(f"\nC_min: [bold cyan]{result.C_min:.6g}[/bold cyan]")
    if out is not None:
        path = storage.save_report(out, result)
        console.print(f"[green]Report written to[/green] {path}")
