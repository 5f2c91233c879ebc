"""Moments of X = sum v_i (1 + x_i) with x uniform on the zero-sum slice.

Closed forms keep the caller's arithmetic: integer or Fraction input gives
exact rationals, float input gives floats.
"""
import math
from fractions import Fraction
from numbers import Real
from typing import List, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from lsvlab.anticonc.distributions import slice_sum_distribution
from lsvlab.anticonc.tables import DistTable
from lsvlab.core.rng import SeedLike, generator
from lsvlab.errors import PreconditionError
from lsvlab.log import get_logger

logger = get_logger(__name__)


class MomentParams(BaseModel):
    q: int = Field(default=2, ge=1)
    t: int = Field(default=3, ge=3)
    lam: float = Field(default=1e-3, gt=0)
    epsilon: float = Field(default=0.006, gt=0, lt=1)

    def check_lambda(self, EX2: float) -> None:
        check_lambda(self.lam, EX2)


def check_lambda(lam: float, EX2: float) -> None:
    if not lam > 0 or 40 * lam * EX2 >= 1:
        raise PreconditionError(f"need 0 < lambda < 1/(40 E[X^2]), got lambda={lam}, E[X^2]={EX2}")


def _values(v: Sequence[Real] | np.ndarray) -> List[Real]:
    return list(np.asarray(v).tolist()) if isinstance(v, np.ndarray) else list(v)


def _sums(v: Sequence[Real] | np.ndarray) -> tuple[int, Real, Real]:
    vals = _values(v)
    return len(vals), sum(vals, 0), sum((x * x for x in vals), 0)


def slice_second_moment(v: Sequence[Real] | np.ndarray) -> Real:
    """E[X^2] = (n-2)/(n-1) (sum v)^2 + n/(n-1) sum v^2."""
    n, S, Q = _sums(v)
    if n < 2:
        raise PreconditionError(f"the slice second moment needs n >= 2, got n={n}")
    return Fraction(n - 2, n - 1) * S * S + Fraction(n, n - 1) * Q


def iid_second_moment(v: Sequence[Real] | np.ndarray) -> Real:
    """E[Y^2] = (sum v)^2 + sum v^2 for Y = sum v_i (1 + eps_i)."""
    _, S, Q = _sums(v)
    return S * S + Q


def q_row_norm_expectation(v: Sequence[Real] | np.ndarray) -> Real:
    """E||Q_n v||^2 = (n^2 - 2n)/(4(n-1)) (sum v)^2 + n^2/(4(n-1)) sum v^2."""
    n, S, Q = _sums(v)
    if n < 2 or n % 2:
        raise PreconditionError(f"Q_n needs an even n >= 2, got n={n}")
    return Fraction(n * n - 2 * n, 4 * (n - 1)) * S * S + Fraction(n * n, 4 * (n - 1)) * Q


def _table(v: Sequence[Real] | np.ndarray) -> DistTable:
    vals = _values(v)
    exact = all(isinstance(x, (int, Fraction)) for x in vals)
    return slice_sum_distribution(vals, exact=exact)


def high_moment_reference(n: int, q: int, EX2: float) -> float:
    """100 sqrt(n) (4q)^q E[X^2]^q."""
    return 100 * math.sqrt(n) * (4 * q) ** q * float(EX2) ** q


class MomentCheck(BaseModel):
    n: int
    q: int
    mode: Literal["exact", "mc"]
    moment: float
    EX2: float
    reference: float
    ratio: float
    exact_moment: Optional[Fraction] = None
    trials: Optional[int] = None
    se: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.ratio <= 1.0


def sample_slice_sums(v: Sequence[Real] | np.ndarray, trials: int, seed: SeedLike) -> np.ndarray:
    """`trials` draws of X: twice the sum of v over a uniform n/2-subset."""
    arr = np.asarray(v, dtype=float)
    n = arr.size
    if n < 2 or n % 2:
        raise PreconditionError(f"the zero-sum slice needs an even n >= 2, got n={n}")
    gen = generator(seed)
    chosen = np.argsort(gen.random((trials, n)), axis=1)[:, : n // 2]
    return 2.0 * arr[chosen].sum(axis=1)


def slice_moment_empirical(
    v: Sequence[Real] | np.ndarray,
    q: int,
    mode: Literal["exact", "mc"] = "exact",
    trials: int = 10_000,
    seed: SeedLike = 0,
) -> MomentCheck:
    """E[X^(2q)] and its ratio to the high-moment bound 100 sqrt(n) (4q)^q E[X^2]^q."""
    if q < 1:
        raise PreconditionError("q must be positive")
    n = len(_values(v))
    EX2 = float(slice_second_moment(v))
    reference = high_moment_reference(n, q, EX2)
    if mode == "exact":
        table = _table(v)
        moment = table.moment(2 * q)
        ratio = float(moment) / reference if reference else 0.0
        return MomentCheck(
            n=n, q=q, mode=mode, moment=float(moment), EX2=EX2, reference=reference, ratio=ratio,
            exact_moment=moment if table.exact else None,
        )
    powers = sample_slice_sums(v, trials, seed) ** (2 * q)
    moment = float(powers.mean())
    se = float(powers.std(ddof=1) / math.sqrt(trials)) if trials > 1 else float("inf")
    ratio = moment / reference if reference else 0.0
    return MomentCheck(n=n, q=q, mode=mode, moment=moment, EX2=EX2, reference=reference, ratio=ratio,
                       trials=trials, se=se)


def low_moment_ratio(v: Sequence[Real] | np.ndarray, q: int) -> float:
    """E[X^(2q)] / E[X^2]^q on the exact table; its corpus maximum calibrates O_q(1)."""
    table = _table(v)
    EX2 = table.moment(2)
    if not EX2:
        raise PreconditionError("E[X^2] = 0, the ratio is undefined")
    return float(table.moment(2 * q)) / float(EX2) ** q


def centered_moment_norm(v: Sequence[Real] | np.ndarray, q: int) -> float:
    """|| X^2 - E[X^2] ||_q on the exact table."""
    table = _table(v)
    EX2 = float(table.moment(2))
    value = math.fsum(float(p) * abs(float(x) ** 2 - EX2) ** q for x, p in table)
    return value ** (1 / q)


def moment_norm_bound(q: int, n: int, EX2: float) -> float:
    """(100 sqrt(n))^(1/q) 5q E[X^2]."""
    return (100 * math.sqrt(n)) ** (1 / q) * 5 * q * float(EX2)


def mgf_bound(lam: float, EX2: float, t: int, n: int, O_t: float = 1.0) -> float:
    """1 + O_t lam^2 E[X^2]^2 + 200 sqrt(n) 20^t lam^t E[X^2]^t."""
    EX2 = float(EX2)
    check_lambda(lam, EX2)
    return 1 + O_t * lam ** 2 * EX2 ** 2 + 200 * math.sqrt(n) * 20 ** t * lam ** t * EX2 ** t


def empirical_mgf(v: Sequence[Real] | np.ndarray, lam: float, table: Optional[DistTable] = None) -> float:
    """E[exp(lam Z)] with Z = E[X^2] - X^2, on the exact slice table."""
    table = table or _table(v)
    EX2 = float(table.moment(2))
    return math.fsum(float(p) * math.exp(lam * (EX2 - float(x) ** 2)) for x, p in table)


class MgfCalibration(BaseModel):
    t: int
    O_t: float
    worst_index: Optional[int] = None
    worst_lam: Optional[float] = None
    evaluations: int


def calibrate_mgf_constant(
    corpus: Sequence[Sequence[Real]],
    t: int = 3,
    lam_fractions: Sequence[float] = (0.1, 0.25, 0.5, 0.9),
) -> MgfCalibration:
    """Smallest O_t >= 0 with mgf_bound >= empirical_mgf on every (vector, lambda).

    Each lambda is a fraction of 1/(40 E[X^2]) for its vector, so every
    evaluation satisfies the precondition.
    """
    O_t, worst_index, worst_lam, evaluations = 0.0, None, None, 0
    for idx, v in enumerate(corpus):
        table = _table(v)
        EX2 = float(table.moment(2))
        if EX2 == 0:
            continue
        n = len(_values(v))
        for frac in lam_fractions:
            lam = frac / (40 * EX2)
            emp = empirical_mgf(v, lam, table)
            rest = mgf_bound(lam, EX2, t, n, O_t=0.0)
            required = (emp - rest) / (lam ** 2 * EX2 ** 2)
            evaluations += 1
            if required > O_t:
                O_t, worst_index, worst_lam = required, idx, lam
    logger.info("MGF calibration: O_%d = %.6g over %d evaluations", t, O_t, evaluations)
    return MgfCalibration(t=t, O_t=O_t, worst_index=worst_index, worst_lam=worst_lam, evaluations=evaluations)


def bernstein_tail_bound(v: Sequence[Real] | np.ndarray, n: int, t: int, lam: float, O_t: float) -> float:
    """exp(-lam n E[X^2] / 2) mgf_bound^n, evaluated in log space."""
    EX2 = float(slice_second_moment(v))
    log_bound = -lam * n * EX2 / 2 + n * math.log(mgf_bound(lam, EX2, t, n, O_t))
    return math.exp(log_bound)
