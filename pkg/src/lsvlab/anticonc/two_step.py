"""Atom of one row of Q_sigma v against the atom of its difference vector."""
import itertools
from collections import defaultdict
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from lsvlab.anticonc.distributions import atom_probability
from lsvlab.config import config
from lsvlab.core.domain import Base
from lsvlab.errors import PreconditionError
from lsvlab.log import get_logger
from lsvlab.models.matchings import difference_vector

logger = get_logger(__name__)


def row_value_counts(v: Sequence[int] | np.ndarray, base: Base, i: int, budget: Optional[int] = None) -> Dict[int, int]:
    """value -> number of bit rows xi_i giving (Q_sigma v)_i = value.

    (Q_sigma v)_i = sum_k xi(k) v[a_k] + (1 - xi(k)) v[b_k] over the pairs
    (a_k, b_k) of row i. Enumerates all 2^(n/2) bit rows while that fits the
    enumeration budget, else runs a subset-sum recurrence over the same terms.
    """
    budget = config.enum_budget if budget is None else budget
    values = [int(x) for x in np.asarray(v).tolist()]
    if len(values) != base.n:
        raise PreconditionError(f"vector of length {len(values)} against a base on n={base.n}")
    pairs = base.pairs(i)
    counts: Dict[int, int] = defaultdict(int)
    if 2 ** len(pairs) <= budget:
        for xi in itertools.product((0, 1), repeat=len(pairs)):
            counts[sum(values[a] if bit else values[b] for bit, (a, b) in zip(xi, pairs))] += 1
        return dict(counts)
    logger.debug("row %d: %d pairs exceed the enumeration budget, using the recurrence", i, len(pairs))
    counts[0] = 1
    for a, b in pairs:
        nxt: Dict[int, int] = defaultdict(int)
        for s, c in counts.items():
            nxt[s + values[a]] += c
            nxt[s + values[b]] += c
        counts = nxt
    return dict(counts)


def two_step_row_atom(v: Sequence[int] | np.ndarray, base: Base, i: int, budget: Optional[int] = None) -> Tuple[Fraction, Fraction]:
    """(lhs, rhs): the largest atom of (Q_sigma v)_i over xi_i, and rho(v_{sigma_i}).

    lhs <= rhs always holds. In fact the two are equal, since
    (Q_sigma v)_i = sum v[b_k] + sum xi(k) d_k and sum xi(k) d_k is an affine
    image of the signed sum of d / 2.
    """
    counts = row_value_counts(v, base, i, budget)
    lhs = Fraction(max(counts.values()), sum(counts.values()))
    rhs = Fraction(atom_probability(difference_vector(v, base, i)))
    return lhs, rhs
