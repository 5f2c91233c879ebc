"""Log-log SVG plots of tail curves. The output is a pure function of the CSV."""
from itertools import groupby
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from lsvlab.errors import SchemaError  # noqa: E402
from lsvlab.harness.experiments import TailCurve  # noqa: E402
from lsvlab.log import get_logger  # noqa: E402

logger = get_logger(__name__)


def emit_plot(csv_path: Path, svg_path: Path) -> Path:
    """Empirical P(s_n <= eta) against eta per (model, n), with the reference as a dashed line."""
    curve = TailCurve.from_csv(Path(csv_path))
    cells = [c for c in curve.cells if c.eta > 0]
    if not cells:
        raise SchemaError(f"{csv_path}: no cells with eta > 0 to plot")

    # svg ids and metadata are otherwise random or dated
    plt.rcParams["svg.hashsalt"] = "lsvlab"
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for (model, n), group in groupby(cells, key=lambda c: (c.model.value, c.n)):
        rows = sorted(group, key=lambda c: c.eta)
        etas = [c.eta for c in rows]
        line = ax.plot(etas, [c.reference for c in rows], linestyle="--", linewidth=0.8)[0]
        hits = [c for c in rows if c.p_hat > 0]
        ax.errorbar(
            [c.eta for c in hits],
            [c.p_hat for c in hits],
            yerr=[c.se for c in hits],
            marker="o",
            markersize=3,
            linestyle="-",
            color=line.get_color(),
            label=f"{model} n={n}",
        )
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("eta")
    ax.set_ylabel("P(s_n <= eta)")
    ax.legend(fontsize="small")
    ax.grid(True, which="both", linewidth=0.3)

    out = Path(svg_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info("wrote %s", out)
    return out
