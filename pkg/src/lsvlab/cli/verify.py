"""lsvlab verify: run the invariant suites."""
from enum import Enum
from pathlib import Path
from typing import List, Optional

import typer
from rich.table import Table

from lsvlab.cli.common import console, exits_on_lab_error, verdict
from lsvlab.config import config
from lsvlab.core.domain import ExponentProfile, ProfilePreset
from lsvlab.core.storage import storage
from lsvlab.errors import InvariantFailure
from lsvlab.harness import CalibrationStore, registry, run_invariant_suites


class ScaleChoice(str, Enum):
    QUICK = "quick"
    FULL = "full"


def _list_suites() -> None:
    table = Table(title="Invariant suites", show_header=True)
    table.add_column("Name", style="cyan", no_wrap=True)
    table.add_column("Description", style="white")
    for suite in registry.list():
        table.add_row(suite.name, suite.description)
    console.print(table)


@exits_on_lab_error
def verify(
    suites: Optional[List[str]] = typer.Argument(None, help="Suite names (default: all)"),
    scale: ScaleChoice = typer.Option(ScaleChoice.QUICK, "--scale", help="Suite sizes"),
    seed: int = typer.Option(0, "--seed", help="Root seed"),
    profile: ProfilePreset = typer.Option(ProfilePreset(config.profile), "--profile", help="Exponent preset"),
    calibration: Optional[Path] = typer.Option(None, "--calibration", help="Calibration fixture (default LSVLAB_CALIBRATION_FILE)"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the run report as JSON"),
    list_only: bool = typer.Option(False, "--list", help="List the suites and exit"),
) -> None:
    """Run invariant suites; exits 2 when any check fails."""
    if list_only:
        _list_suites()
        return
    names = suites or [s.name for s in registry.list()]

    with console.status(f"[cyan]Running {len(names)} suite(s) at {scale.value} scale...[/cyan]"):
        run = run_invariant_suites(
            registry,
            names,
            seed=seed,
            scale="quick" if scale == ScaleChoice.QUICK else "full",
            store=CalibrationStore(calibration),
            profile=ExponentProfile.for_preset(profile),
        )

    for report in run.reports:
        table = Table(title=f"{report.suite} ({report.scale}, seed={report.seed})", show_header=True)
        table.add_column("Check", style="cyan")
        table.add_column("Result", no_wrap=True)
        table.add_column("Detail", style="dim")
        for check in report.checks:
            table.add_row(check.name, verdict(check.passed), check.detail)
        console.print(table)

    if out is not None:
        path = storage.save_report(out, run)
        console.print(f"[green]Report written to[/green] {path}")

    failures = run.failures()
    if failures:
        raise InvariantFailure(f"{len(failures)} check(s) failed: " + ", ".join(f"{s}/{c.name}" for s, c in failures))
    console.print(f"\n[bold green]✓ All {sum(len(r.checks) for r in run.reports)} checks passed[/bold green]")
