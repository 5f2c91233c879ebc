"""lsvlab lcd: least common denominator of a vector read from a file."""
from pathlib import Path
from typing import Optional

import numpy as np
import typer

from lsvlab.cli.common import console, exits_on_lab_error
from lsvlab.config import config
from lsvlab.core.domain import ExponentProfile, ProfilePreset
from lsvlab.errors import SchemaError
from lsvlab.structure import LcdParams, LcdStatus, classify_gamma, lcd_estimate


def read_vector(path: Path) -> np.ndarray:
    """One coordinate per line; blank lines and '#' comments are skipped."""
    try:
        arr = np.loadtxt(path, dtype=float, comments="#", ndmin=1)
    except (OSError, ValueError) as exc:
        raise SchemaError(f"{path}: expected one real number per line ({exc})") from exc
    if arr.ndim != 1 or arr.size == 0:
        raise SchemaError(f"{path}: expected one real number per line")
    return arr


@exits_on_lab_error
def lcd(
    vector_file: Path = typer.Argument(..., help="File with one coordinate per line"),
    gamma: float = typer.Option(0.1, "--gamma", help="Relative distance parameter, in (0, 1)"),
    alpha: Optional[float] = typer.Option(None, "--alpha", help="Absolute distance cap (default n^(1/4))"),
    theta_max: float = typer.Option(100.0, "--theta-max", help="Search horizon"),
    resolution: Optional[float] = typer.Option(None, "--resolution", help="Grid step (default 1e-3 / max|a_i|)"),
    normalize: bool = typer.Option(False, "--normalize", help="Scale the vector to unit norm first"),
    eta: Optional[float] = typer.Option(None, "--eta", help="Also classify against the threshold n^(3/4)/eta"),
    profile: ProfilePreset = typer.Option(ProfilePreset(config.profile), "--profile", help="Exponent preset"),
) -> None:
    """Find the least theta with dist(theta a, Z^n) < min(gamma ||theta a||, alpha)."""
    a = read_vector(vector_file)
    if normalize:
        norm = float(np.linalg.norm(a))
        if norm == 0:
            raise SchemaError(f"{vector_file}: the zero vector cannot be normalized")
        a = a / norm
    n = a.size
    preset = ExponentProfile.for_preset(profile)
    params = LcdParams(
        gamma=gamma,
        alpha=alpha if alpha is not None else preset.alpha(n),
        theta_max=theta_max,
        grid_resolution=resolution,
    )

    with console.status("[cyan]Scanning theta...[/cyan]"):
        result = lcd_estimate(a, params)

    console.print(f"Status: [bold]{result.status.value}[/bold]")
    if result.status == LcdStatus.FOUND:
        console.print(f"  theta*: [cyan]{result.theta_star:.12g}[/cyan]")
        console.print(f"  witness: [cyan]{result.witness}[/cyan]")
        console.print(f"  dist: [cyan]{result.dist:.6g}[/cyan]")
    else:
        console.print(f"  scanned to: [cyan]{result.scanned_to:.6g}[/cyan]")
    console.print(f"  certified: {result.certified}  resolution: {result.resolution:.3g}")

    if eta is not None:
        console.print(f"  class: [bold]{classify_gamma(a, eta, n, params, preset).value}[/bold]")
