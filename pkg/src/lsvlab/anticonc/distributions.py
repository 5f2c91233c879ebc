"""Exact laws of random signed sums, over Z, over F_p and on the zero-sum slice.

Every engine counts outcomes with integers and divides by the number of
outcomes once at the end. Exact mode therefore yields Fractions with no
intermediate rounding. Double mode uses the same recurrences in floating point.
"""
import itertools
import math
from collections import defaultdict
from fractions import Fraction
from numbers import Real
from typing import Dict, List, Optional, Sequence

import numpy as np
import sympy

from lsvlab.anticonc.tables import DistTable, Prob
from lsvlab.config import config
from lsvlab.errors import BudgetExceededError, PreconditionError
from lsvlab.log import get_logger

logger = get_logger(__name__)

# Sums of reals are keyed after rounding, so equal atoms reached through
# different orders of addition merge.
REAL_KEY_DIGITS = 12


def _scalars(v: Sequence[Real] | np.ndarray) -> List[Real]:
    return list(np.asarray(v).tolist()) if isinstance(v, np.ndarray) else list(v)


def _all_integral(values: Sequence[Real]) -> bool:
    return all(isinstance(x, (int, np.integer)) for x in values)


def _key(x: Real, exact: bool) -> Real:
    return x if exact else round(float(x), REAL_KEY_DIGITS)


def _require_rational(values: Sequence[Real]) -> None:
    if not all(isinstance(x, (int, Fraction, np.integer)) for x in values):
        raise PreconditionError("exact mode needs integer or Fraction entries")


# -- signed sums over Z ------------------------------------------------------

def signed_sum_distribution(w: Sequence[Real] | np.ndarray, exact: bool = True, budget: Optional[int] = None) -> DistTable:
    """Law of eps_1 w_1 + ... + eps_n w_n with i.i.d. Rademacher signs.

    Integer vectors use a value-indexed convolution over [-S, S], S = sum |w_i|.
    Other vectors use a dictionary recurrence over reachable sums.
    """
    budget = config.range_budget if budget is None else budget
    values = _scalars(w)
    n = len(values)
    if _all_integral(values):
        return _signed_sum_integer([int(x) for x in values], exact, budget)
    if exact:
        _require_rational(values)
    counts: Dict[Real, int] = {0: 1}
    for x in values:
        nxt: Dict[Real, int] = defaultdict(int)
        for s, c in counts.items():
            nxt[_key(s + x, exact)] += c
            nxt[_key(s - x, exact)] += c
        counts = nxt
        if len(counts) > budget:
            raise BudgetExceededError("signed-sum support", len(counts), budget)
    return DistTable.from_counts(counts, 2 ** n, exact)


def _signed_sum_integer(ws: List[int], exact: bool, budget: int) -> DistTable:
    n = len(ws)
    S = sum(abs(x) for x in ws)
    width = 2 * S + 1
    if width > budget:
        raise BudgetExceededError("signed-sum value range", width, budget)
    dtype = object if n > 62 else np.int64
    counts = np.zeros(width, dtype=dtype)
    counts[S] = 1
    for x in ws:
        a = abs(x)
        if a == 0:
            counts = counts * 2
            continue
        nxt = np.zeros(width, dtype=dtype)
        nxt[a:] += counts[:width - a]
        nxt[:width - a] += counts[a:]
        counts = nxt
    nz = np.nonzero(counts)[0]
    return DistTable.from_counts({int(i) - S: int(counts[i]) for i in nz}, 2 ** n, exact)


def atom_probability(w: Sequence[Real] | np.ndarray, exact: bool = True) -> Prob:
    """rho(w): the largest atom of the signed sum."""
    return signed_sum_distribution(w, exact=exact).atom()


def brute_force_distribution(w: Sequence[Real] | np.ndarray, budget: Optional[int] = None) -> DistTable:
    budget = config.enum_budget if budget is None else budget
    values = _scalars(w)
    n = len(values)
    if 2 ** n > budget:
        raise BudgetExceededError("sign enumeration", 2 ** n, budget)
    counts: Dict[Real, int] = defaultdict(int)
    for signs in itertools.product((1, -1), repeat=n):
        counts[sum((s * x for s, x in zip(signs, values)), 0)] += 1
    return DistTable.from_counts(counts, 2 ** n, exact=True)


# -- signed sums over F_p ----------------------------------------------------

def _require_odd_prime(p: int) -> None:
    if p < 3 or not sympy.isprime(p):
        raise PreconditionError(f"p={p} is not an odd prime")


def mod_p_distribution(a: Sequence[int] | np.ndarray, p: int) -> DistTable:
    """Law of eps_1 a_1 + ... + eps_n a_n in F_p, by a DP over residues (O(n p))."""
    _require_odd_prime(p)
    residues = [int(x) % p for x in _scalars(a)]
    n = len(residues)
    counts = np.zeros(p, dtype=object if n > 62 else np.int64)
    counts[0] = 1
    for r in residues:
        counts = np.roll(counts, r) + np.roll(counts, -r)
    nz = np.nonzero(counts)[0]
    return DistTable.from_counts({int(i): int(counts[i]) for i in nz}, 2 ** n, exact=True)


def atom_probability_mod_p(a: Sequence[int] | np.ndarray, p: int) -> Fraction:
    """rho over F_p: max over x of P(sum eps_i a_i = x mod p)."""
    return Fraction(mod_p_distribution(a, p).atom())


def brute_force_mod_p(a: Sequence[int] | np.ndarray, p: int, budget: Optional[int] = None) -> DistTable:
    _require_odd_prime(p)
    values = [int(x) for x in _scalars(a)]
    table = brute_force_distribution(values, budget)
    counts: Dict[Real, int] = defaultdict(int)
    total = 2 ** len(values)
    for v, prob in table:
        counts[int(v) % p] += int(prob * total)
    return DistTable.from_counts(counts, total, exact=True)


# -- the zero-sum slice ------------------------------------------------------

def slice_sum_distribution(v: Sequence[Real] | np.ndarray, exact: bool = True, budget: Optional[int] = None) -> DistTable:
    """Law of X = v_1(1+x_1) + ... + v_n(1+x_n), x uniform on the zero-sum slice.

    X = 2 * (sum of v over a uniform n/2-subset). The DP runs over (number
    of coordinates chosen, partial sum) and normalises by C(n, n/2).
    """
    budget = config.enum_budget if budget is None else budget
    values = _scalars(v)
    n = len(values)
    if n < 2 or n % 2:
        raise PreconditionError(f"the zero-sum slice needs an even n >= 2, got n={n}")
    if exact:
        _require_rational(values)
    half = n // 2
    layers: List[Dict[Real, int]] = [defaultdict(int) for _ in range(half + 1)]
    layers[0][0] = 1
    for i, x in enumerate(values):
        for j in range(min(i + 1, half), 0, -1):
            src = layers[j - 1]
            dst = layers[j]
            for s, c in list(src.items()):
                dst[_key(s + x, exact)] += c
        states = sum(len(layer) for layer in layers)
        if states > budget:
            raise BudgetExceededError("slice DP states", states, budget)
    counts = {_key(2 * s, exact): c for s, c in layers[half].items()}
    return DistTable.from_counts(counts, math.comb(n, half), exact)


def brute_force_slice_distribution(v: Sequence[Real] | np.ndarray, budget: Optional[int] = None) -> DistTable:
    budget = config.enum_budget if budget is None else budget
    values = _scalars(v)
    n = len(values)
    if n < 2 or n % 2:
        raise PreconditionError(f"the zero-sum slice needs an even n >= 2, got n={n}")
    total = math.comb(n, n // 2)
    if total > budget:
        raise BudgetExceededError("slice enumeration", total, budget)
    counts: Dict[Real, int] = defaultdict(int)
    for ones in itertools.combinations(range(n), n // 2):
        # x_i = +1 on `ones`, -1 elsewhere
        x = [-1] * n
        for i in ones:
            x[i] = 1
        counts[sum((vi * (1 + xi) for vi, xi in zip(values, x)), 0)] += 1
    return DistTable.from_counts(counts, total, exact=True)


# -- real-valued enumerators -------------------------------------------------

REAL_ENUM_MAX_N = 20


def signed_sum_values(a: Sequence[float] | np.ndarray) -> DistTable:
    """Double-mode law of sum eps_i a_i for a real vector, by full enumeration."""
    arr = np.asarray(a, dtype=float)
    n = arr.size
    if n > REAL_ENUM_MAX_N:
        raise BudgetExceededError("real sign enumeration (n)", n, REAL_ENUM_MAX_N)
    codes = np.arange(2 ** n, dtype=np.int64)[:, None]
    signs = 2 * ((codes >> np.arange(n)) & 1) - 1
    sums = np.round(signs @ arr, REAL_KEY_DIGITS)
    values, counts = np.unique(sums, return_counts=True)
    return DistTable.from_counts(dict(zip(values.tolist(), counts.tolist())), 2 ** n, exact=False)


def slice_values(a: Sequence[float] | np.ndarray) -> DistTable:
    """Double-mode law of X = sum a_i (1 + x_i) over the zero-sum slice."""
    n = np.asarray(a).size
    if n > REAL_ENUM_MAX_N:
        raise BudgetExceededError("real slice enumeration (n)", n, REAL_ENUM_MAX_N)
    return slice_sum_distribution(np.asarray(a, dtype=float), exact=False)
