import math
from enum import Enum
from typing import Any, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ModelTag(str, Enum):
    IID_RADEMACHER = "IidRademacher"
    ROW_REGULAR = "RowRegular"
    BASE_ASSEMBLED = "BaseAssembled"
    EXTERNAL = "External"


class ProfilePreset(str, Enum):
    PAPER = "paper"
    DESK = "desk"


class IntMatrix(BaseModel):
    """Dense square integer matrix tagged with the ensemble it came from."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    entries: np.ndarray
    model_tag: ModelTag = ModelTag.EXTERNAL

    @field_validator("entries", mode="before")
    def validate_entries(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"expected a non-empty square matrix, got shape {arr.shape}")
        if arr.dtype.kind not in "iub":
            if not np.all(np.equal(np.mod(arr, 1), 0)):
                raise ValueError("entries must be integers")
        return arr.astype(np.int64)

    @model_validator(mode="after")
    def check_model_invariants(self) -> "IntMatrix":
        e = self.entries
        if self.model_tag == ModelTag.IID_RADEMACHER:
            if not np.all(np.abs(e) == 1):
                raise ValueError("IidRademacher entries must be +1/-1")
        elif self.model_tag in (ModelTag.ROW_REGULAR, ModelTag.BASE_ASSEMBLED):
            n = self.n
            if n % 2:
                raise ValueError("row-regular matrices need even n")
            if not np.all((e == 0) | (e == 1)):
                raise ValueError("row-regular entries must be 0/1")
            if not np.all(e.sum(axis=1) == n // 2):
                raise ValueError(f"every row must sum to {n // 2}")
        return self

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    def rows(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def to_text(self) -> str:
        lines = [f"{self.n} {self.model_tag.value}"]
        lines.extend(" ".join(str(x) for x in row) for row in self.rows())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IntMatrix":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix file")
        header = lines[0].split()
        if len(header) != 2:
            raise ValueError("header must be 'n model_tag'")
        n = int(header[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected {n} rows of {n} integers")
        return cls(entries=rows, model_tag=ModelTag(header[1]))


class Base(BaseModel):
    """An n-tuple of permutations of range(n) and the perfect matchings they induce.

    Indices are 0-based in memory. The text format uses 1-based one-line notation.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    perms: np.ndarray
    matchings: List[List[Tuple[int, int]]] = Field(default_factory=list)

    @field_validator("perms", mode="before")
    def validate_perms(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected n permutations of length n, got shape {arr.shape}")
        n = arr.shape[1]
        if n % 2:
            raise ValueError("a base needs even n")
        target = np.arange(n)
        for i, row in enumerate(arr):
            if not np.array_equal(np.sort(row), target):
                raise ValueError(f"row {i} is not a permutation of range({n})")
        return arr

    @model_validator(mode="after")
    def materialize_matchings(self) -> "Base":
        if not self.matchings:
            self.matchings = [self._pairs_of(row) for row in self.perms]
        return self

    @staticmethod
    def _pairs_of(perm: np.ndarray) -> List[Tuple[int, int]]:
        return [(int(perm[2 * k]), int(perm[2 * k + 1])) for k in range(len(perm) // 2)]

    @property
    def n(self) -> int:
        return int(self.perms.shape[1])

    def pairs(self, i: int) -> List[Tuple[int, int]]:
        """Ordered pairs (sigma_i(2k-1), sigma_i(2k)) for k = 1..n/2."""
        if not 0 <= i < self.n:
            raise IndexError(f"row {i} out of range for n={self.n}")
        return self.matchings[i]

    def matching(self, i: int) -> List[Tuple[int, int]]:
        """The unordered matching induced by sigma_i, each edge as (min, max)."""
        return [(min(a, b), max(a, b)) for a, b in self.pairs(i)]

    def to_text(self) -> str:
        return "\n".join(" ".join(str(int(x) + 1) for x in row) for row in self.perms) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Base":
        rows = [[int(tok) - 1 for tok in ln.split()] for ln in text.strip().splitlines() if ln.strip()]
        return cls(perms=rows)


class BitChoices(BaseModel):
    """One bit per matched pair per row: xi_i(k) picks which endpoint gets the 1."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    bits: np.ndarray

    @field_validator("bits", mode="before")
    def validate_bits(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != 2 * arr.shape[1]:
            raise ValueError(f"expected n x n/2 bits, got shape {arr.shape}")
        if not np.all((arr == 0) | (arr == 1)):
            raise ValueError("bits must be 0/1")
        return arr

    @property
    def n(self) -> int:
        return int(self.bits.shape[0])


class ExponentProfile(BaseModel):
    """Named exponents of the asymptotic predicates, with paper and desk presets.

    The `paper` preset holds the exponents as stated. Desk values shrink the gaps so the
    same predicates are non-trivial at n in the tens to low hundreds:

        name               paper   desk
        sparse_support     0.99    0.9
        component_bound    0.6     0.75
        q2_set_min         0.8     0.8
        level_set          0.991   0.9
        k_exp              0.01    0.25
        halasz_gain        0.48    0.48
        restricted_norm    0.51    0.75
        lcd_threshold_exp  3/4     3/4
        alpha_exp          1/4     1/4
        t_v_divisor        16      4
        eta_floor_exp      1e-4    1/2

    Tail bounds hold for eta >= 2^(-n^eta_floor_exp). Under the paper preset
    that floor sits just below 1/2 at every n a laptop reaches.
    """
    preset: ProfilePreset = ProfilePreset.PAPER
    sparse_support: float = 0.99
    component_bound: float = 0.6
    q2_set_min: float = 0.8
    level_set: float = 0.991
    k_exp: float = 0.01
    halasz_gain: float = 0.48
    restricted_norm: float = 0.51
    lcd_threshold_exp: float = 0.75
    alpha_exp: float = 0.25
    t_v_divisor: float = 16.0
    eta_floor_exp: float = 1e-4
    epsilon: float = 0.006

    @model_validator(mode="after")
    def check_ranges(self) -> "ExponentProfile":
        for name in ("sparse_support", "component_bound", "q2_set_min", "level_set",
                     "k_exp", "halasz_gain", "restricted_norm"):
            value = getattr(self, name)
            if not 0 < value <= 1:
                raise ValueError(f"{name}={value} must lie in (0, 1]")
        for name in ("lcd_threshold_exp", "alpha_exp", "eta_floor_exp"):
            value = getattr(self, name)
            if not 0 < value < 1:
                raise ValueError(f"{name}={value} must lie in (0, 1)")
        if self.t_v_divisor <= 0:
            raise ValueError("t_v_divisor must be positive")
        return self

    @classmethod
    def paper(cls) -> "ExponentProfile":
        return cls(preset=ProfilePreset.PAPER)

    @classmethod
    def desk(cls) -> "ExponentProfile":
        return cls(
            preset=ProfilePreset.DESK,
            sparse_support=0.9,
            component_bound=0.75,
            level_set=0.9,
            k_exp=0.25,
            restricted_norm=0.75,
            t_v_divisor=4.0,
            eta_floor_exp=0.5,
        )

    @classmethod
    def for_preset(cls, name: str | ProfilePreset) -> "ExponentProfile":
        preset = ProfilePreset(name)
        return cls.paper() if preset == ProfilePreset.PAPER else cls.desk()

    def threshold(self, name: str, n: int) -> int:
        """ceil(n ** exponent): the lenient integer reading of 'at most n^c'."""
        return math.ceil(n ** getattr(self, name) - 1e-12)

    def alpha(self, n: int) -> float:
        return float(n ** self.alpha_exp)

    def k(self, n: int) -> int:
        return max(1, math.ceil(n ** self.k_exp - 1e-12))

    def eta_floor(self, n: int) -> float:
        return float(2.0 ** -(n ** self.eta_floor_exp))
