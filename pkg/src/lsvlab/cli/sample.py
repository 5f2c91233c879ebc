"""lsvlab sample: draw one matrix (and optionally its base) and summarize its spectrum."""
from pathlib import Path
from typing import Optional

import typer
from rich.table import Table

from lsvlab.cli.common import console, exits_on_lab_error
from lsvlab.config import config
from lsvlab.core.domain import ExponentProfile, ModelTag, ProfilePreset
from lsvlab.core.rng import split
from lsvlab.core.storage import storage
from lsvlab.models import assemble_from_base, audit_base, sample_base, sample_bits, sample_matrix
from lsvlab.spectral import spectral_summary


@exits_on_lab_error
def sample(
    model: ModelTag = typer.Option(ModelTag.IID_RADEMACHER, "--model", "-m", help="Ensemble to draw from"),
    n: int = typer.Option(8, "--n", help="Matrix size"),
    seed: int = typer.Option(0, "--seed", help="Root seed"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the matrix here (relative paths land in the output dir)"),
    base_out: Optional[Path] = typer.Option(None, "--base-out", help="BaseAssembled only: also write the base"),
    audit: bool = typer.Option(False, "--audit", help="BaseAssembled only: audit the base"),
    profile: ProfilePreset = typer.Option(ProfilePreset(config.profile), "--profile", help="Exponent preset for the audit"),
) -> None:
    """Sample a matrix and print its extreme singular values."""
    if model == ModelTag.BASE_ASSEMBLED:
        # same seeding as sample_q_via_base, so the matrix matches the one-shot sampler
        base_seed, bits_seed = split(seed, 2)
        base = sample_base(n, base_seed)
        matrix = assemble_from_base(base, sample_bits(n, bits_seed))
        if base_out is not None:
            path = storage.save_base(base, base_out)
            console.print(f"[green]Base written to[/green] {path}")
        if audit:
            report = audit_base(base, ExponentProfile.for_preset(profile), seed=seed)
            table = Table(title=f"Base audit (n={n}, {report.preset})", show_header=True)
            table.add_column("Property", style="cyan")
            table.add_column("Observed", style="white")
            table.add_column("Limit", style="white")
            table.add_column("Passed", style="magenta")
            table.add_row("Q1 components", str(report.q1_max_components), str(report.q1_threshold), str(report.q1_passed))
            table.add_row(f"Q2 bad rows ({report.q2_method})", str(report.q2_worst_bad_rows),
                          str(report.q2_bad_row_limit), str(report.q2_passed))
            console.print(table)
    else:
        matrix = sample_matrix(model, n, seed)

    if out is not None:
        path = storage.save_matrix(matrix, out)
        console.print(f"[green]Matrix written to[/green] {path}")
    elif n <= 16:
        console.print(matrix.to_text(), end="")

    summary = spectral_summary(matrix, exact=n <= 60)
    console.print(f"\n[bold]{model.value}[/bold] n={n} seed={seed}")
    console.print(f"  s_min: [cyan]{summary.s_min:.6g}[/cyan]")
    console.print(f"  s_max: [cyan]{summary.s_max:.6g}[/cyan]")
    if summary.restricted_norm_H is not None:
        console.print(f"  ||M|H||: [cyan]{summary.restricted_norm_H:.6g}[/cyan]")
    if summary.exact_singular is not None:
        console.print(f"  exactly singular: [cyan]{summary.exact_singular}[/cyan]")
