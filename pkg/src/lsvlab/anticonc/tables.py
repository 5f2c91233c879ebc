"""DistTable: exact finite law of a lattice-valued sum. LevyEstimate: a concentration value."""
import math
from fractions import Fraction
from numbers import Real
from typing import Any, Callable, Dict, Iterator, Literal, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

Prob = Union[Fraction, float]


class DistTable(BaseModel):
    """value -> probability over a sorted, duplicate-free support.

    In exact mode the probabilities are Fractions summing to exactly 1. In
    double mode they are floats summing to 1 within 1e-12.
    """
    model_config = ConfigDict(frozen=True)

    # values and probabilities are kept as given: ints, Fractions or floats
    support: Tuple[Any, ...]
    probs: Tuple[Any, ...]
    exact: bool = True

    @model_validator(mode="after")
    def check_law(self) -> "DistTable":
        if len(self.support) != len(self.probs):
            raise ValueError("support and probs differ in length")
        if any(b <= a for a, b in zip(self.support, self.support[1:])):
            raise ValueError("support must be strictly increasing")
        if self.exact:
            if not all(isinstance(p, (Fraction, int)) for p in self.probs):
                raise ValueError("exact tables need rational probabilities")
            if sum(self.probs, Fraction(0)) != 1:
                raise ValueError("probabilities do not sum to 1")
        elif abs(math.fsum(float(p) for p in self.probs) - 1.0) > 1e-12:
            raise ValueError("probabilities do not sum to 1 within 1e-12")
        return self

    @classmethod
    def from_counts(cls, counts: Mapping[Real, int], total: int, exact: bool = True) -> "DistTable":
        items = sorted((v, c) for v, c in counts.items() if c)
        if exact:
            probs: Tuple[Prob, ...] = tuple(Fraction(c, total) for _, c in items)
        else:
            probs = tuple(c / total for _, c in items)
        return cls(support=tuple(v for v, _ in items), probs=probs, exact=exact)

    @classmethod
    def from_weights(cls, weights: Mapping[Real, float]) -> "DistTable":
        items = sorted((v, w) for v, w in weights.items() if w)
        total = math.fsum(w for _, w in items)
        return cls(support=tuple(v for v, _ in items), probs=tuple(w / total for _, w in items), exact=False)

    def __iter__(self) -> Iterator[Tuple[Real, Prob]]:  # type: ignore[override]
        return iter(zip(self.support, self.probs))

    def __len__(self) -> int:
        return len(self.support)

    def as_dict(self) -> Dict[Real, Prob]:
        return dict(zip(self.support, self.probs))

    def prob(self, value: Real) -> Prob:
        return self.as_dict().get(value, Fraction(0) if self.exact else 0.0)

    def atom(self) -> Prob:
        """Largest point mass."""
        return max(self.probs)

    def expect(self, f: Callable[[Real], object]) -> object:
        if self.exact:
            return sum((p * f(v) for v, p in self), Fraction(0))  # type: ignore[operator]
        return math.fsum(float(p) * float(f(v)) for v, p in self)  # type: ignore[arg-type]

    def mean(self) -> object:
        return self.expect(lambda v: v)

    def moment(self, q: int) -> object:
        return self.expect(lambda v: v ** q)

    def to_csv(self) -> str:
        lines = ["value,probability"]
        for v, p in self:
            lines.append(f"{v},{p}" if self.exact else f"{v},{format(float(p), '.17g')}")
        return "\n".join(lines) + "\n"


class LevyEstimate(BaseModel):
    delta: float = Field(ge=0)
    value: float = Field(ge=0, le=1)
    method: Literal["ExactFromTable", "MonteCarlo"]
    exact_value: Optional[Fraction] = None
    trials: Optional[int] = None
    se: Optional[float] = None
    window_start: Optional[float] = None

    @model_validator(mode="after")
    def check_method_fields(self) -> "LevyEstimate":
        if self.method == "MonteCarlo" and (self.trials is None or self.se is None):
            raise ValueError("Monte Carlo estimates carry trials and a standard error")
        return self
