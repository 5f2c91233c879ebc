"""Invertibility on a fixed vector: how often ||M v|| <= (sqrt(n)/2) ||v||."""
import math
from typing import Sequence

import numpy as np
from pydantic import BaseModel

from lsvlab.core.domain import ModelTag
from lsvlab.core.rng import child_seed
from lsvlab.errors import PreconditionError
from lsvlab.log import get_logger
from lsvlab.models.samplers import sample_matrix

logger = get_logger(__name__)


class InvertibilityCheck(BaseModel):
    model: ModelTag
    n: int
    trials: int
    hits: int
    probability: float
    se: float


def fixed_vector_invertibility_check(
    v: Sequence[float] | np.ndarray,
    n: int,
    trials: int,
    seed: int,
    model: ModelTag = ModelTag.ROW_REGULAR,
) -> InvertibilityCheck:
    """Fraction of sampled Q_n (or M_n) with ||M v||_2 <= (sqrt(n)/2) ||v||_2."""
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    arr = np.asarray(v, dtype=float)
    if arr.size != n:
        raise PreconditionError(f"vector of length {arr.size} for n={n}")
    cutoff = math.sqrt(n) / 2 * float(np.linalg.norm(arr))
    hits = 0
    for trial in range(trials):
        M = sample_matrix(model, n, child_seed(seed, n, trial))
        if float(np.linalg.norm(M.entries @ arr)) <= cutoff:
            hits += 1
    p = hits / trials
    if hits:
        logger.warning("%d of %d samples map v into the small ball", hits, trials)
    return InvertibilityCheck(model=model, n=n, trials=trials, hits=hits, probability=p,
                              se=math.sqrt(p * (1 - p) / trials))


class NormSquareEstimate(BaseModel):
    n: int
    trials: int
    mean: float
    se: float


def q_row_norm_monte_carlo(v: Sequence[float] | np.ndarray, trials: int, seed: int) -> NormSquareEstimate:
    """Sample mean of ||Q_n v||^2 with its standard error."""
    arr = np.asarray(v, dtype=float)
    n = arr.size
    values = np.empty(trials)
    for trial in range(trials):
        Q = sample_matrix(ModelTag.ROW_REGULAR, n, child_seed(seed, n, trial))
        values[trial] = float(np.sum((Q.entries @ arr) ** 2))
    se = float(values.std(ddof=1) / math.sqrt(trials)) if trials > 1 else float("inf")
    return NormSquareEstimate(n=n, trials=trials, mean=float(values.mean()), se=se)
