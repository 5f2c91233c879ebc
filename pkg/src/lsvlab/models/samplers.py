"""Samplers for the i.i.d. sign ensemble, the row-regular 0/1 ensemble and its two-step model."""
import math

import numpy as np
import sympy

from lsvlab.core.domain import Base, BitChoices, IntMatrix, ModelTag
from lsvlab.core.rng import SeedLike, row_generators, split
from lsvlab.errors import DimensionMismatchError, PreconditionError
from lsvlab.log import get_logger

logger = get_logger(__name__)


def _require_even(n: int, what: str) -> None:
    if n < 2 or n % 2:
        raise PreconditionError(f"{what} needs an even n >= 2, got n={n}")


def row_weight(n: int) -> int:
    """Number of ones per row of a row-regular matrix."""
    return n // 2


def sample_rademacher(n: int, seed: SeedLike) -> IntMatrix:
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    rows = [2 * g.integers(0, 2, size=n) - 1 for g in row_generators(seed, n)]
    return IntMatrix(entries=np.vstack(rows), model_tag=ModelTag.IID_RADEMACHER)


def sample_row_regular(n: int, seed: SeedLike) -> IntMatrix:
    _require_even(n, "row-regular sampling")
    w = row_weight(n)
    entries = np.zeros((n, n), dtype=np.int64)
    for i, g in enumerate(row_generators(seed, n)):
        entries[i, g.permutation(n)[:w]] = 1
    return IntMatrix(entries=entries, model_tag=ModelTag.ROW_REGULAR)


def sample_gaussian(n: int, seed: SeedLike) -> np.ndarray:
    """Standard normal matrix with the same per-row seeding as the discrete ensembles."""
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    return np.vstack([g.standard_normal(n) for g in row_generators(seed, n)])


def sample_base(n: int, seed: SeedLike) -> Base:
    _require_even(n, "a base")
    perms = np.vstack([g.permutation(n) for g in row_generators(seed, n)])
    return Base(perms=perms)


def sample_bits(n: int, seed: SeedLike) -> BitChoices:
    _require_even(n, "bit choices")
    rows = [g.integers(0, 2, size=n // 2) for g in row_generators(seed, n)]
    return BitChoices(bits=np.vstack(rows))


def assemble_from_base(base: Base, xi: BitChoices) -> IntMatrix:
    """q_ij = xi_i(k) if sigma_i(2k-1) = j, and 1 - xi_i(k) if sigma_i(2k) = j."""
    if xi.n != base.n:
        raise DimensionMismatchError(f"base has n={base.n} but bit choices have n={xi.n}")
    n = base.n
    rows = np.arange(n)[:, None]
    entries = np.zeros((n, n), dtype=np.int64)
    entries[rows, base.perms[:, 0::2]] = xi.bits
    entries[rows, base.perms[:, 1::2]] = 1 - xi.bits
    return IntMatrix(entries=entries, model_tag=ModelTag.BASE_ASSEMBLED)


def sample_q_via_base(n: int, seed: SeedLike) -> IntMatrix:
    _require_even(n, "the two-step model")
    base_seed, bits_seed = split(seed, 2)
    return assemble_from_base(sample_base(n, base_seed), sample_bits(n, bits_seed))


def sample_matrix(tag: ModelTag, n: int, seed: SeedLike) -> IntMatrix:
    if tag == ModelTag.IID_RADEMACHER:
        return sample_rademacher(n, seed)
    if tag == ModelTag.ROW_REGULAR:
        return sample_row_regular(n, seed)
    if tag == ModelTag.BASE_ASSEMBLED:
        return sample_q_via_base(n, seed)
    raise PreconditionError(f"no sampler for model {tag.value}")


def least_prime_at_least(x: float) -> int:
    """Resolve 'let p = x be a prime' as the least prime >= x (and >= 3)."""
    p = int(sympy.nextprime(max(2, math.ceil(x)) - 1))
    if p == 2:
        p = 3
    logger.info("picked prime p=%d for x=%s", p, x)
    return p
