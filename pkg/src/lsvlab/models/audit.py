"""Expanding-base audit: properties (Q1) and (Q2) of a base.

(Q1) the union of the matchings of any two rows has at most n^c1 components.
(Q2) for all disjoint A, B with n^c2 <= |A|, |B| <= n/2, at most sqrt(n)/2 rows
     have a matching with fewer than |A||B|/(8n) edges between A and B.

(Q1) is always checked exactly. (Q2) is exact when the number of ordered
(A, B) pairs is at most `exact_cap`. Otherwise it is checked on seeded samples:
sizes uniform in the allowed range, then uniform disjoint subsets.
"""
import itertools
import math
from typing import Iterator, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from lsvlab.core.domain import Base, ExponentProfile
from lsvlab.core.rng import SeedLike, generator
from lsvlab.log import get_logger
from lsvlab.models.matchings import union_components

logger = get_logger(__name__)

SetPair = Tuple[Tuple[int, ...], Tuple[int, ...]]


class BaseAudit(BaseModel):
    n: int
    preset: str

    q1_threshold: int
    q1_max_components: int
    q1_worst_pair: Optional[Tuple[int, int]] = None
    q1_passed: bool

    q2_size_range: Tuple[int, int]
    q2_bad_row_limit: int
    q2_method: Literal["exact", "sampled", "vacuous"]
    q2_pairs_checked: int
    q2_worst_bad_rows: int = 0
    q2_worst_witness: Optional[Tuple[List[int], List[int]]] = None
    q2_passed: bool
    q2_sample_seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.q1_passed and self.q2_passed


def count_q2_pairs(n: int, lo: int, hi: int) -> int:
    """Number of ordered disjoint (A, B) with lo <= |A|, |B| <= hi."""
    if lo > hi:
        return 0
    return sum(
        math.comb(n, a) * math.comb(n - a, b)
        for a in range(lo, hi + 1)
        for b in range(lo, hi + 1)
        if a + b <= n
    )


def _bad_rows(base: Base, in_a: np.ndarray, in_b: np.ndarray, size_a: int, size_b: int) -> int:
    first, second = base.perms[:, 0::2], base.perms[:, 1::2]
    crossing = (in_a[first] & in_b[second]) | (in_b[first] & in_a[second])
    edges = crossing.sum(axis=1)
    # fewer than |A||B|/(8n) edges, compared in integers
    return int(np.count_nonzero(8 * base.n * edges < size_a * size_b))


def _exact_pairs(n: int, lo: int, hi: int) -> Iterator[SetPair]:
    universe = range(n)
    for a in range(lo, hi + 1):
        for A in itertools.combinations(universe, a):
            taken = set(A)
            rest = [x for x in universe if x not in taken]
            for b in range(lo, hi + 1):
                for B in itertools.combinations(rest, b):
                    yield A, B


def _sampled_pairs(n: int, lo: int, hi: int, samples: int, seed: SeedLike) -> Iterator[SetPair]:
    rng = generator(seed)
    for _ in range(samples):
        a = int(rng.integers(lo, hi + 1))
        b = int(rng.integers(lo, hi + 1))
        perm = rng.permutation(n)
        yield tuple(int(x) for x in perm[:a]), tuple(int(x) for x in perm[a:a + b])


def audit_base(
    base: Base,
    profile: ExponentProfile,
    sample_ab: int = 2000,
    seed: int = 0,
    exact_cap: int = 100_000,
) -> BaseAudit:
    n = base.n

    # (Q1): all pairs i < j
    q1_threshold = profile.threshold("component_bound", n)
    worst_pair: Optional[Tuple[int, int]] = None
    worst_components = 0
    for i, j in itertools.combinations(range(n), 2):
        c = union_components(base.matching(i), base.matching(j))
        if c > worst_components:
            worst_components, worst_pair = c, (i, j)

    # (Q2)
    lo = profile.threshold("q2_set_min", n)
    hi = n // 2
    limit = math.ceil(math.sqrt(n) / 2 - 1e-12)
    total = count_q2_pairs(n, lo, hi)
    if total == 0:
        method: Literal["exact", "sampled", "vacuous"] = "vacuous"
        pairs: Iterator[SetPair] = iter(())
        sample_seed = None
    elif total <= exact_cap:
        method = "exact"
        pairs = _exact_pairs(n, lo, hi)
        sample_seed = None
    else:
        method = "sampled"
        pairs = _sampled_pairs(n, lo, hi, sample_ab, seed)
        sample_seed = seed

    checked = 0
    worst_bad = 0
    worst_witness: Optional[Tuple[List[int], List[int]]] = None
    for A, B in pairs:
        in_a = np.zeros(n, dtype=bool)
        in_b = np.zeros(n, dtype=bool)
        in_a[list(A)] = True
        in_b[list(B)] = True
        bad = _bad_rows(base, in_a, in_b, len(A), len(B))
        checked += 1
        if worst_witness is None or bad > worst_bad:
            worst_bad, worst_witness = bad, (sorted(A), sorted(B))

    audit = BaseAudit(
        n=n,
        preset=profile.preset.value,
        q1_threshold=q1_threshold,
        q1_max_components=worst_components,
        q1_worst_pair=worst_pair,
        q1_passed=worst_components <= q1_threshold,
        q2_size_range=(lo, hi),
        q2_bad_row_limit=limit,
        q2_method=method,
        q2_pairs_checked=checked,
        q2_worst_bad_rows=worst_bad,
        q2_worst_witness=worst_witness,
        q2_passed=worst_bad <= limit,
        q2_sample_seed=sample_seed,
    )
    logger.debug("audit n=%d q1=%s q2=%s (%s, %d pairs)", n, audit.q1_passed, audit.q2_passed, method, checked)
    return audit
