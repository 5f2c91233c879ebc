"""Levy concentration L(X, delta) = sup_r P(|X - r| <= delta).

Windows are closed, so mass sitting exactly on either boundary is counted.
"""
import math
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel

from lsvlab.anticonc.distributions import signed_sum_values, slice_values
from lsvlab.anticonc.tables import DistTable, LevyEstimate
from lsvlab.core.rng import SeedLike, generator
from lsvlab.errors import PreconditionError
from lsvlab.log import get_logger

logger = get_logger(__name__)

Sampler = Callable[[np.random.Generator, int], np.ndarray]


def _best_window(points: Sequence[float], weights: Sequence[object], width: float) -> tuple[int, object]:
    """Two-pointer scan over windows [points[i], points[i] + width].

    An optimal closed window can always be slid right until its left end
    hits a support point, so scanning those left ends is exhaustive.
    """
    best_start, best = 0, weights[0] * 0  # type: ignore[operator]
    total = best
    j = 0
    for i in range(len(points)):
        while j < len(points) and points[j] - points[i] <= width:
            total = total + weights[j]
            j += 1
        if total > best:
            best, best_start = total, i
        total = total - weights[i]
    return best_start, best


def levy_concentration(
    source: Union[DistTable, Sampler],
    delta: float,
    trials: Optional[int] = None,
    seed: SeedLike = 0,
) -> LevyEstimate:
    """Exact from a DistTable, otherwise Monte Carlo from `source(gen, trials)`.

    The Monte Carlo estimate only places windows at sampled values, so it is
    a lower-bound estimator of the sample's concentration.
    """
    if delta < 0:
        raise PreconditionError(f"delta must be nonnegative, got {delta}")
    width = 2 * delta
    if isinstance(source, DistTable):
        start, best = _best_window(source.support, source.probs, width)
        exact_value = Fraction(best) if source.exact else None
        return LevyEstimate(
            delta=delta,
            value=min(1.0, float(best)),
            method="ExactFromTable",
            exact_value=exact_value,
            window_start=float(source.support[start]),
        )

    if trials is None or trials < 1:
        raise PreconditionError("Monte Carlo Levy estimates need trials >= 1")
    samples = np.sort(np.asarray(source(generator(seed), trials), dtype=float))
    start, hits = _best_window(samples.tolist(), [1] * len(samples), width)
    p = hits / trials
    se = math.sqrt(p * (1 - p) / trials)
    logger.debug("MC Levy at delta=%g: %d/%d in best window", delta, hits, trials)
    return LevyEstimate(
        delta=delta,
        value=p,
        method="MonteCarlo",
        trials=trials,
        se=se,
        window_start=float(samples[start]),
    )


class SmallBallComparison(BaseModel):
    delta: float
    levy: float
    reference: float
    ratio: float
    on_slice: bool


def lcd_small_ball_ratio(
    a: Sequence[float] | np.ndarray,
    delta: float,
    lcd: float,
    gamma: float,
    alpha: float,
    on_slice: bool = False,
) -> SmallBallComparison:
    """L(S, delta) against the LCD small-ball shape, for S = sum a_i eps_i or its slice analogue.

    i.i.d. signs compare with delta/gamma + exp(-alpha^2/2). On the slice S is
    sum y_i a_i with y a uniform 0/1 vector of weight n/2. Then 2S is the slice
    sum X, so L(S, delta) = L(X, 2 delta), and the reference is
    delta sqrt(n)/gamma + sqrt(n) exp(-alpha^2/2).
    """
    arr = np.asarray(a, dtype=float)
    if abs(float(np.linalg.norm(arr)) - 1.0) > 1e-10:
        raise PreconditionError("the small-ball comparison needs a unit vector")
    if lcd <= 0 or delta < (4 / math.pi) / lcd:
        raise PreconditionError(f"need delta >= (4/pi)/LCD = {(4 / math.pi) / lcd:.6g}, got {delta}")
    n = arr.size
    tail = math.exp(-alpha ** 2 / 2)
    if on_slice:
        levy = levy_concentration(slice_values(arr), 2 * delta).value
        reference = delta * math.sqrt(n) / gamma + math.sqrt(n) * tail
    else:
        levy = levy_concentration(signed_sum_values(arr), delta).value
        reference = delta / gamma + tail
    return SmallBallComparison(delta=delta, levy=levy, reference=reference, ratio=levy / reference, on_slice=on_slice)
