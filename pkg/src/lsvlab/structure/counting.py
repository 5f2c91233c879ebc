"""Inverse Littlewood-Offord counting over F_p.

R_k^*(a) counts ordered index tuples (i_1, ..., i_2k) together with sign
patterns such that +-a_{i_1} +- ... +- a_{i_2k} = 0 mod p and more than
1.01 k of the indices are distinct. Everything here is exact integer
arithmetic except the final bound evaluations, which are floats.
"""
import itertools
import math
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Literal, Optional, Sequence, Tuple

import numpy as np
import sympy
from pydantic import BaseModel, Field, model_validator
from sympy.utilities.iterables import multiset_partitions

from lsvlab.anticonc.distributions import atom_probability_mod_p
from lsvlab.config import config
from lsvlab.core.rng import SeedLike, generator
from lsvlab.errors import BudgetExceededError, PreconditionError
from lsvlab.log import get_logger

logger = get_logger(__name__)

Residues = Tuple[int, ...]


def _residues(a: Sequence[int] | np.ndarray, p: int) -> Residues:
    if p < 3 or not sympy.isprime(p):
        raise PreconditionError(f"p={p} is not an odd prime")
    return tuple(int(x) % p for x in np.asarray(a).tolist())


def _enough_distinct(distinct: int, k: int) -> bool:
    # distinct > 1.01 k, compared exactly
    return 100 * distinct > 101 * k


def r_k_star_trivial_bound(a: Sequence[int] | np.ndarray, k: int) -> int:
    """2^(2k) |a|^(2k): every index tuple with every sign pattern."""
    return 4 ** k * len(np.asarray(a).tolist()) ** (2 * k)


# -- brute force -------------------------------------------------------------

def r_k_star_brute(a: Sequence[int] | np.ndarray, k: int, p: int, budget: Optional[int] = None) -> int:
    budget = config.enum_budget if budget is None else budget
    res = _residues(a, p)
    if k < 1:
        raise PreconditionError("k must be positive")
    work = r_k_star_trivial_bound(res, k)
    if work > budget:
        raise BudgetExceededError("R_k^* brute force", work, budget)
    signs = list(itertools.product((1, -1), repeat=2 * k))
    count = 0
    for idx in itertools.product(range(len(res)), repeat=2 * k):
        if not _enough_distinct(len(set(idx)), k):
            continue
        vals = [res[i] for i in idx]
        count += sum(1 for s in signs if sum(si * x for si, x in zip(s, vals)) % p == 0)
    return count


# -- inclusion-exclusion over the index-equality pattern ---------------------

def _block_array(res: Residues, size: int, p: int) -> List[int]:
    """g[r] = number of (index j, signs on a block of `size` positions) with c a_j = r mod p."""
    g = [0] * p
    for c in range(-size, size + 1, 2):
        mult = math.comb(size, (size + c) // 2)
        for x in res:
            g[(c * x) % p] += mult
    return g


def _cyclic_convolve(x: List[int], y: List[int], p: int) -> List[int]:
    if max(x) * max(y) * p < 2 ** 62:
        full = np.convolve(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))
        folded = full[:p].copy()
        folded[: len(full) - p] += full[p:]
        return [int(v) for v in folded]
    out = [0] * p
    for r1, c1 in enumerate(x):
        if c1:
            for r2, c2 in enumerate(y):
                if c2:
                    out[(r1 + r2) % p] += c1 * c2
    return out


def _zero_sum_count(res: Residues, sizes: Tuple[int, ...], p: int) -> int:
    """N(sigma): tuples constant on blocks of the given sizes (blocks may share indices), sum = 0."""
    acc = [1] + [0] * (p - 1)
    for size in sizes:
        acc = _cyclic_convolve(acc, _block_array(res, size, p), p)
    return acc[0]


def _set_partitions(items: Sequence[int]) -> Iterator[List[List[int]]]:
    yield from multiset_partitions(list(items))


@lru_cache(maxsize=None)
def _partitions_of_positions(m: int) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    return tuple(tuple(tuple(block) for block in part) for part in _set_partitions(range(m)))


def r_k_star_inclusion_exclusion(a: Sequence[int] | np.ndarray, k: int, p: int) -> int:
    """Sum over set partitions pi of the 2k positions with more than 1.01k blocks of E(pi).

    E(pi), the count whose index-equality pattern is exactly pi, comes from
    Moebius inversion on the partition lattice:
    E(pi) = sum over coarsenings sigma of prod_B (-1)^(m_B - 1) (m_B - 1)! N(sigma),
    where m_B is the number of blocks of pi merged into block B of sigma.
    N(sigma) is a cyclic convolution of per-block residue counts.
    """
    if k < 1:
        raise PreconditionError("k must be positive")
    res = _residues(a, p)
    if not res:
        return 0
    cache: Dict[Tuple[int, ...], int] = {}

    def N(sizes: Tuple[int, ...]) -> int:
        key = tuple(sorted(sizes))
        if key not in cache:
            cache[key] = _zero_sum_count(res, key, p)
        return cache[key]

    total = 0
    for pi in _partitions_of_positions(2 * k):
        if not _enough_distinct(len(pi), k):
            continue
        sizes = [len(block) for block in pi]
        exact = 0
        for grouping in _partitions_of_positions(len(pi)):
            mu = 1
            merged = []
            for group in grouping:
                mu *= (-1) ** (len(group) - 1) * math.factorial(len(group) - 1)
                merged.append(sum(sizes[b] for b in group))
            exact += mu * N(tuple(merged))
        total += exact
    return total


def r_k_star(
    a: Sequence[int] | np.ndarray,
    k: int,
    p: int,
    method: Literal["auto", "brute", "inclusion_exclusion"] = "auto",
    budget: Optional[int] = None,
) -> int:
    """R_k^*(a) over F_p. "auto" always runs inclusion-exclusion, whose cost does not
    grow with 4^k |a|^(2k); `budget` only bounds the brute-force enumeration.
    """
    if method == "brute":
        return r_k_star_brute(a, k, p, budget)
    return r_k_star_inclusion_exclusion(a, k, p)


def pigeonhole_floor(n: int, K: int) -> Fraction:
    """rho(w) >= 1/(2nK + 1) when all entries lie in [-K, K]: the sum takes at most 2nK + 1 values."""
    if n < 1 or K < 0:
        raise PreconditionError("need n >= 1 and K >= 0")
    return Fraction(1, 2 * n * K + 1)


# -- Halasz over F_p ---------------------------------------------------------

class HalaszParams(BaseModel):
    p: int
    k: int = Field(ge=1)
    M: float = Field(gt=0)
    s1: int = Field(ge=1)
    s2: int = Field(ge=1)
    t: float = Field(default=1, ge=0)
    C_halasz: float = Field(default=1.0, ge=0)

    @model_validator(mode="after")
    def check_params(self) -> "HalaszParams":
        if self.p < 3 or not sympy.isprime(self.p):
            raise ValueError(f"p={self.p} must be an odd prime")
        if self.s2 > self.s1:
            raise ValueError(f"need s2 <= s1, got s2={self.s2}, s1={self.s1}")
        if self.t > self.p:
            raise ValueError(f"need t <= p, got t={self.t}")
        return self


def halasz_rhs(p: int, n: int, k: int, M: float, r_star: int, C: float = 1.0) -> float:
    """1/p + C (R* + (40 k^0.99 n^1.01)^k) / (2^(2k) n^(2k) sqrt(M)) + e^(-M)."""
    correction = C * (r_star + (40 * k ** 0.99 * n ** 1.01) ** k) / (4 ** k * float(n) ** (2 * k) * math.sqrt(M))
    return 1 / p + correction + math.exp(-M)


def check_halasz_constraints(a: Sequence[int] | np.ndarray, params: HalaszParams) -> None:
    res = _residues(a, params.p)
    n = len(res)
    support = sum(1 for x in res if x)
    if 30 * params.M > support:
        raise PreconditionError(f"constraint 30M <= |supp(a)| violated: 30*{params.M} > {support}")
    if 80 * params.k * params.M > n:
        raise PreconditionError(f"constraint 80kM <= n violated: 80*{params.k}*{params.M} > {n}")


def halasz_bound(a: Sequence[int] | np.ndarray, params: HalaszParams, r_star: Optional[int] = None) -> float:
    """The Halasz right-hand side for `a` with the caller's constant C_halasz."""
    check_halasz_constraints(a, params)
    n = len(np.asarray(a).tolist())
    if r_star is None:
        r_star = r_k_star(a, params.k, params.p)
    return halasz_rhs(params.p, n, params.k, params.M, r_star, params.C_halasz)


class HalaszRow(BaseModel):
    index: int
    rho: float
    r_star: int
    required_C: float


class HalaszCalibration(BaseModel):
    p: int
    n: int
    k: int
    M: float
    C_min: float
    worst_index: Optional[int]
    rows: List[HalaszRow]


def halasz_calibration(corpus: Sequence[Sequence[int]], params: HalaszParams) -> HalaszCalibration:
    """Smallest C >= 0 making the Halasz inequality hold on every corpus vector."""
    if not corpus:
        raise PreconditionError("empty calibration corpus")
    rows = []
    n = len(corpus[0])
    for idx, a in enumerate(corpus):
        if len(a) != n:
            raise PreconditionError("corpus vectors differ in length")
        check_halasz_constraints(a, params)
        rho = float(atom_probability_mod_p(a, params.p))
        r_star = r_k_star(a, params.k, params.p)
        unit = halasz_rhs(params.p, n, params.k, params.M, r_star, 1.0) - 1 / params.p - math.exp(-params.M)
        required = max(0.0, (rho - 1 / params.p - math.exp(-params.M)) / unit)
        rows.append(HalaszRow(index=idx, rho=rho, r_star=r_star, required_C=required))
    worst = max(rows, key=lambda r: (r.required_C, -r.index))
    C_min = worst.required_C
    logger.info("Halasz calibration over %d vectors: C_min=%.6g", len(rows), C_min)
    return HalaszCalibration(
        p=params.p,
        n=n,
        k=params.k,
        M=params.M,
        C_min=C_min,
        worst_index=worst.index if C_min > 0 else None,
        rows=rows,
    )


# -- B-set membership and the counting bound -------------------------------

class Membership(str, Enum):
    MEMBER = "Member"
    NON_MEMBER = "NonMember"
    UNDETERMINED = "Undetermined"


class MembershipResult(BaseModel):
    status: Membership
    # indices of the violating subvector b, when NonMember
    witness: Optional[List[int]] = None
    witness_r_star: Optional[int] = None
    method: Literal["trivial", "exhaustive", "sampled"]
    checked: int = 0


def _violates(res: Residues, idx: Tuple[int, ...], k: int, t: float, p: int) -> Tuple[bool, int]:
    sub = [res[i] for i in idx]
    r = r_k_star_inclusion_exclusion(sub, k, p)
    # R*(b) >= t 4^k |b|^(2k) / p, compared without division
    t_frac = Fraction(t)
    return r * p < t_frac * 4 ** k * len(sub) ** (2 * k), r


def b_set_membership(
    a: Sequence[int] | np.ndarray,
    k: int,
    s1: int,
    s2: int,
    t: float,
    p: int,
    budget: Optional[int] = None,
    samples: int = 2000,
    seed: SeedLike = 0,
) -> MembershipResult:
    """Is every subvector b with |supp(b)| >= s2 above the R_k^* threshold t 4^k |b|^(2k) / p?

    Subvectors are index subsets, checked by increasing size then
    lexicographically; the first violation is returned as the witness.
    """
    budget = config.enum_budget if budget is None else budget
    res = _residues(a, p)
    m = len(res)
    support = sum(1 for x in res if x)
    if not s2 <= s1 <= m:
        raise PreconditionError(f"need s2 <= s1 <= n, got s2={s2}, s1={s1}, n={m}")
    if support < s1:
        raise PreconditionError(f"need |supp(a)| >= s1, got {support} < {s1}")
    if not 0 <= t <= p:
        raise PreconditionError(f"need 0 <= t <= p, got t={t}")
    if t == 0:
        return MembershipResult(status=Membership.MEMBER, method="trivial")

    def qualifies(idx: Tuple[int, ...]) -> bool:
        return sum(1 for i in idx if res[i]) >= s2

    checked = 0
    if 2 ** m <= budget:
        for size in range(s2, m + 1):
            for idx in itertools.combinations(range(m), size):
                if not qualifies(idx):
                    continue
                checked += 1
                bad, r = _violates(res, idx, k, t, p)
                if bad:
                    return MembershipResult(status=Membership.NON_MEMBER, witness=list(idx), witness_r_star=r,
                                            method="exhaustive", checked=checked)
        return MembershipResult(status=Membership.MEMBER, method="exhaustive", checked=checked)

    logger.warning("2^%d subvectors exceed the budget, searching %d random subvectors", m, samples)
    gen = generator(seed)
    for _ in range(samples):
        idx = tuple(int(i) for i in np.flatnonzero(gen.integers(0, 2, size=m)))
        if not qualifies(idx):
            continue
        checked += 1
        bad, r = _violates(res, idx, k, t, p)
        if bad:
            return MembershipResult(status=Membership.NON_MEMBER, witness=list(idx), witness_r_star=r,
                                    method="sampled", checked=checked)
    return MembershipResult(status=Membership.UNDETERMINED, method="sampled", checked=checked)


def counting_bound(n: int, k: int, s1: int, s2: int, t: float, p: int) -> float:
    """log of 200^n (s2/s1)^(2k-1) p^n t^(s2-n)."""
    if not 1 <= s2 <= s1 <= n:
        raise PreconditionError(f"need 1 <= s2 <= s1 <= n, got s2={s2}, s1={s1}, n={n}")
    if not 1 <= t <= p:
        raise PreconditionError(f"need 1 <= t <= p, got t={t}, p={p}")
    if k < 1:
        raise PreconditionError("k must be positive")
    return n * math.log(200) + (2 * k - 1) * math.log(s2 / s1) + n * math.log(p) + (s2 - n) * math.log(t)
