"""lsvlab tails: empirical least-singular-value tail curves."""
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
from rich.table import Table

from lsvlab.cli.common import console, exits_on_lab_error
from lsvlab.config import config
from lsvlab.core.domain import ProfilePreset
from lsvlab.harness.experiments import Ensemble, ExperimentConfig, calibrate_tail_constant, run_tail_experiment


def _experiment_config(config_file: Optional[Path], overrides: Dict[str, Any]) -> ExperimentConfig:
    base = ExperimentConfig.from_file(config_file) if config_file else ExperimentConfig(workers=config.workers)
    data = base.model_dump()
    data.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig.model_validate(data)


@exits_on_lab_error
def tails(
    config_file: Optional[Path] = typer.Option(None, "--config", "-c", help="ExperimentConfig JSON; flags override it"),
    model: Optional[Ensemble] = typer.Option(None, "--model", "-m", help="Ensemble"),
    n: Optional[List[int]] = typer.Option(None, "--n", help="Matrix size (repeatable)"),
    trials: Optional[int] = typer.Option(None, "--trials", "-t", help="Trials per n"),
    eta: Optional[List[float]] = typer.Option(None, "--eta", help="Grid value (repeatable, increasing)"),
    edelman: Optional[bool] = typer.Option(None, "--edelman/--absolute", help="Read the grid as epsilon = eta sqrt(n)"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Root seed"),
    profile: Optional[ProfilePreset] = typer.Option(None, "--profile", help="Exponent preset"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", help="Worker processes"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Tail CSV (relative paths land in the output dir)"),
) -> None:
    """Estimate P(s_n <= eta) over an eta grid and fit the tail constant C."""
    cfg = _experiment_config(config_file, {
        "model": model,
        "n_list": n or None,
        "trials": trials,
        "eta_grid": eta or None,
        "eta_scale": None if edelman is None else ("edelman" if edelman else "absolute"),
        "seed": seed,
        "profile": profile,
        "workers": workers,
        "out": out,
    })

    with console.status(f"[cyan]Sampling {cfg.trials} {cfg.model.value} matrices per n...[/cyan]"):
        curve = run_tail_experiment(cfg)

    table = Table(title=f"P(s_n <= eta), {cfg.model.value}", show_header=True)
    table.add_column("n", style="cyan")
    table.add_column("eta", style="white")
    table.add_column("hits", style="white")
    table.add_column("p_hat", style="magenta")
    table.add_column("se / CP95", style="white")
    table.add_column("reference", style="white")
    for cell in curve.cells:
        table.add_row(str(cell.n), f"{cell.eta:.4g}", f"{cell.hits}/{cell.trials}", f"{cell.p_hat:.4g}",
                      f"{cell.se:.3g}", f"{cell.reference:.4g}")
    console.print(table)

    failures = sum({c.n: c.failures for c in curve.cells}.values())
    if failures:
        console.print(f"[yellow]{failures} trials did not converge and were dropped[/yellow]")

    if cfg.model != Ensemble.GAUSSIAN:
        fit = calibrate_tail_constant(curve, eta_floor=cfg.eta_floor)
        worst = f" (worst cell n={fit.worst[0]}, eta={fit.worst[1]:.4g})" if fit.worst else ""
        console.print(f"\nTail constant C: [bold cyan]{fit.C:.6g}[/bold cyan]{worst}")
        if fit.skipped_below_floor:
            console.print(f"[yellow]{fit.skipped_below_floor} cell(s) below the {cfg.profile.value} "
                          f"eta floor left out of the fit[/yellow]")
    if cfg.out is not None:
        console.print(f"[green]Curve written to[/green] {cfg.out}")
