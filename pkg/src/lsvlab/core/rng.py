"""Seeding discipline.

Every sampler takes a seed and derives one Philox stream per matrix row:
row i of a draw seeded with `s` uses `SeedSequence(s).spawn(n)[i]`. Row
independence is therefore structural. A row's stream does not depend on n
beyond its index, and never depends on the worker that draws it.
"""
from typing import List, Sequence, Union

import numpy as np

SeedLike = Union[int, np.random.SeedSequence]


def seed_sequence(seed: SeedLike) -> np.random.SeedSequence:
    """A fresh SeedSequence, so spawning never mutates the caller's object."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.SeedSequence(seed.entropy, spawn_key=seed.spawn_key, pool_size=seed.pool_size)
    return np.random.SeedSequence(int(seed) % 2**64)


def generator(seed: SeedLike) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed_sequence(seed)))


def row_generators(seed: SeedLike, n: int) -> List[np.random.Generator]:
    """One independent counter-based stream per row."""
    children = seed_sequence(seed).spawn(n)
    return [np.random.Generator(np.random.Philox(child)) for child in children]


def child_seed(seed: SeedLike, *key: int) -> np.random.SeedSequence:
    """A reproducible sub-seed addressed by an integer key, e.g. (n, trial).

    Children of the same parent with distinct keys are independent, and the
    mapping does not depend on how trials are sharded across workers.
    """
    parent = seed_sequence(seed)
    return np.random.SeedSequence(parent.entropy, spawn_key=tuple(parent.spawn_key) + tuple(key))


def split(seed: SeedLike, parts: int) -> Sequence[np.random.SeedSequence]:
    return seed_sequence(seed).spawn(parts)
