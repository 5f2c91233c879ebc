import typer

from lsvlab import __version__
from lsvlab.cli import halasz, lcd, plot, sample, singularity, tails, verify
from lsvlab.config import config
from lsvlab.log import configure_logging

app = typer.Typer(
    name="lsvlab",
    help="Numerical lab for least singular values and anti-concentration of random sign and 0/1 matrices.",
    add_completion=False,
)

# Register commands directly
app.command(name="sample")(sample.sample)
app.command(name="tails")(tails.tails)
app.command(name="singularity")(singularity.singularity)
app.command(name="lcd")(lcd.lcd)
app.command(name="halasz")(halasz.halasz)
app.command(name="verify")(verify.verify)
app.command(name="plot")(plot.plot)


@app.callback()
def main_callback(
    log_level: str = typer.Option(config.log_level, "--log-level", help="DEBUG, INFO, WARNING or ERROR"),
) -> None:
    """Global options for lsvlab."""
    configure_logging(log_level)


@app.command()
def version() -> None:
    """Show version."""
    typer.echo(f"lsvlab v{__version__}")


if __name__ == "__main__":
    app()
