"""T_v and witnessing pairs of rows for an integer vector against a base."""
import itertools
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from lsvlab.config import config
from lsvlab.core.domain import Base, ExponentProfile
from lsvlab.errors import BudgetExceededError, PreconditionError
from lsvlab.log import get_logger
from lsvlab.models.matchings import difference_vector
from lsvlab.models.samplers import least_prime_at_least
from lsvlab.structure.counting import r_k_star_inclusion_exclusion

logger = get_logger(__name__)

# None stands for +inf: no subvector clears the support floor
Score = Optional[Fraction]


class StructureReport(BaseModel):
    n: int
    k: int
    s2: int
    p: int
    support_threshold: int
    T_v: List[int]
    scores: Dict[int, Score]
    witnessing_pair: Optional[Tuple[int, int]] = None


def t_v_threshold(n: int, profile: ExponentProfile) -> int:
    return math.ceil(n ** profile.level_set / profile.t_v_divisor - 1e-12)


def compute_T_v(
    v: Sequence[int] | np.ndarray,
    base: Base,
    profile: Optional[ExponentProfile] = None,
    threshold: Optional[int] = None,
) -> List[int]:
    """Rows i with |supp(v_{sigma_i})| >= n^level_set / t_v_divisor (or an explicit threshold)."""
    if base.n % 2:
        raise PreconditionError("T_v needs even n")
    profile = profile or ExponentProfile.for_preset(config.profile)
    floor = t_v_threshold(base.n, profile) if threshold is None else threshold
    return [i for i in range(base.n) if sum(1 for d in difference_vector(v, base, i) if d) >= floor]


def _order_key(i: int, score: Score) -> Tuple[bool, Fraction, int]:
    # larger scores first, +inf before everything, then smaller row index
    return (score is not None, -(score or Fraction(0)), i)


def min_normalized_r_star(d: Sequence[int], k: int, s2: int, p: int, budget: Optional[int] = None) -> Score:
    """min over subvectors b of d with |supp(b)| >= s2 of R_k^*(b) / |b|^(2k)."""
    budget = config.enum_budget if budget is None else budget
    m = len(d)
    if 2 ** m > budget:
        raise BudgetExceededError("subvector enumeration", 2 ** m, budget)
    best: Score = None
    for size in range(max(s2, 1), m + 1):
        for idx in itertools.combinations(range(m), size):
            sub = [d[i] for i in idx]
            if sum(1 for x in sub if x) < s2:
                continue
            score = Fraction(r_k_star_inclusion_exclusion(sub, k, p), size ** (2 * k))
            if best is None or score < best:
                best = score
    return best


def witnessing_pair(
    v: Sequence[int] | np.ndarray,
    base: Base,
    k: int,
    s2: int,
    p: Optional[int] = None,
    budget: Optional[int] = None,
    profile: Optional[ExponentProfile] = None,
    threshold: Optional[int] = None,
) -> StructureReport:
    """The two rows of T_v with the largest min-over-subvectors R_k^* score.

    Without an explicit p, the least prime above 4k max|d| is used, so no
    signed sum of 2k differences wraps around and counts match those over Z.
    """
    profile = profile or ExponentProfile.for_preset(config.profile)
    floor = t_v_threshold(base.n, profile) if threshold is None else threshold
    T_v = compute_T_v(v, base, profile, floor)
    diffs = {i: difference_vector(v, base, i) for i in T_v}
    if p is None:
        top = max((abs(x) for d in diffs.values() for x in d), default=1)
        p = least_prime_at_least(4 * k * top + 1)
    scores = {i: min_normalized_r_star(diffs[i], k, s2, p, budget) for i in T_v}
    pair = None
    if len(T_v) >= 2:
        ranked = sorted(T_v, key=lambda i: _order_key(i, scores[i]))
        pair = (ranked[0], ranked[1])
    else:
        logger.debug("|T_v| = %d, no witnessing pair", len(T_v))
    return StructureReport(
        n=base.n,
        k=k,
        s2=s2,
        p=p,
        support_threshold=floor,
        T_v=T_v,
        scores=scores,
        witnessing_pair=pair,
    )


def check_witnessing_pair(report: StructureReport) -> bool:
    """Re-check the ordering: i1 then i2 precede every other row of T_v."""
    if report.witnessing_pair is None:
        return len(report.T_v) < 2
    i1, i2 = report.witnessing_pair
    if i1 == i2 or i1 not in report.T_v or i2 not in report.T_v:
        return False
    k1, k2 = _order_key(i1, report.scores[i1]), _order_key(i2, report.scores[i2])
    if not k1 < k2:
        return False
    return all(k2 < _order_key(j, report.scores[j]) for j in report.T_v if j not in (i1, i2))
