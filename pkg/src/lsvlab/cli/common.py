"""Helpers shared by the command modules."""
import functools
from typing import Any, Callable, TypeVar

import typer
from pydantic import ValidationError
from rich.console import Console

from lsvlab.errors import LabError, PreconditionError

console = Console()

F = TypeVar("F", bound=Callable[..., Any])


def exits_on_lab_error(func: F) -> F:
    """Print lab errors in red and exit with their code instead of a traceback."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except ValidationError as exc:
            console.print(f"[red]Invalid configuration:[/red] {exc}")
            raise typer.Exit(PreconditionError.exit_code) from exc
        except LabError as exc:
            console.print(f"[red]Error: {exc}[/red]")
            raise typer.Exit(exc.exit_code) from exc

    return wrapper  # type: ignore[return-value]


def verdict(passed: bool) -> str:
    return "[green]✓ pass[/green]" if passed else "[red]✗ FAIL[/red]"
