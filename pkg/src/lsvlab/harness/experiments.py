"""Least-singular-value tail experiments and the exact small-n singularity oracle.

Trials are addressed by (n, trial) through `child_seed`, so a run gives the
same hit counts whether it executes on one worker or many. Each trial costs
one SVD; its s_min is compared against the whole eta grid at once.
"""
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Callable, List, Literal, Optional, Sequence, Tuple

import numpy as np
import scipy.stats
from pydantic import BaseModel, Field, field_validator, model_validator

from lsvlab.config import config
from lsvlab.core.domain import ExponentProfile, IntMatrix, ModelTag, ProfilePreset
from lsvlab.core.rng import SeedLike, child_seed, generator
from lsvlab.core.storage import csv_text, read_csv, storage
from lsvlab.errors import BudgetExceededError, ConvergenceError, PreconditionError
from lsvlab.log import get_logger
from lsvlab.models.samplers import sample_gaussian, sample_matrix
from lsvlab.spectral.exact import exact_singularity
from lsvlab.spectral.svd import smallest_singular_value

logger = get_logger(__name__)

TAIL_HEADER = ["model", "n", "eta", "trials", "hits", "p_hat", "se", "reference"]


class Ensemble(str, Enum):
    IID_RADEMACHER = "IidRademacher"
    ROW_REGULAR = "RowRegular"
    GAUSSIAN = "GaussianBaseline"


class ExperimentConfig(BaseModel):
    model: Ensemble = Ensemble.IID_RADEMACHER
    n_list: List[int] = Field(default_factory=lambda: [20, 40])
    trials: int = Field(default=10_000, ge=1)
    # "edelman" reads the grid as epsilon and uses eta = epsilon / sqrt(n) per n
    eta_grid: List[float] = Field(default_factory=lambda: [0.001, 0.003, 0.01, 0.03, 0.1])
    eta_scale: Literal["absolute", "edelman"] = "absolute"
    seed: int = 0
    tol: float = Field(default_factory=lambda: config.tol)
    profile: ProfilePreset = Field(default_factory=lambda: ProfilePreset(config.profile))
    out: Optional[Path] = None
    workers: int = Field(default=1, ge=1)

    @field_validator("eta_grid")
    def check_grid(cls, v: List[float]) -> List[float]:
        if not v:
            raise ValueError("the eta grid is empty")
        if any(x < 0 for x in v):
            raise ValueError("eta values must be nonnegative")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("the eta grid must be strictly increasing")
        return v

    @model_validator(mode="after")
    def check_model(self) -> "ExperimentConfig":
        if not self.n_list or any(n < 1 for n in self.n_list):
            raise ValueError("n_list needs positive sizes")
        if self.model == Ensemble.ROW_REGULAR and any(n % 2 for n in self.n_list):
            raise ValueError("row-regular experiments need even n")
        return self

    @classmethod
    def from_file(cls, path: Path) -> "ExperimentConfig":
        with open(path, "r", encoding="utf-8") as f:
            return cls.model_validate_json(f.read())

    def etas_for(self, n: int) -> List[float]:
        if self.eta_scale == "edelman":
            return [eps / math.sqrt(n) for eps in self.eta_grid]
        return list(self.eta_grid)

    def eta_floor(self, n: int) -> float:
        """Smallest eta the discrete tail bounds speak about under this profile. 0 for the Gaussian baseline."""
        if self.model == Ensemble.GAUSSIAN:
            return 0.0
        return ExponentProfile.for_preset(self.profile).eta_floor(n)


def reference_value(model: Ensemble, n: int, eta: float) -> float:
    """eta n^(3/2), eta n^2, or epsilon = eta sqrt(n) for the Gaussian baseline."""
    if model == Ensemble.IID_RADEMACHER:
        return eta * n ** 1.5
    if model == Ensemble.ROW_REGULAR:
        return eta * n ** 2
    return eta * math.sqrt(n)


def clopper_pearson_upper(hits: int, trials: int, level: float = 0.95) -> float:
    """One-sided Clopper-Pearson upper confidence bound for a binomial proportion."""
    if trials < 1 or not 0 <= hits <= trials:
        raise PreconditionError(f"need 0 <= hits <= trials and trials >= 1, got {hits}/{trials}")
    if hits == trials:
        return 1.0
    return float(scipy.stats.beta.ppf(level, hits + 1, trials - hits))


class TailCell(BaseModel):
    model: Ensemble
    n: int
    eta: float
    trials: int
    hits: int
    p_hat: float = Field(ge=0, le=1)
    # standard error, or the one-sided 95% Clopper-Pearson bound when hits == 0
    se: float
    reference: float
    failures: int = 0

    def row(self) -> List[object]:
        return [self.model.value, self.n, self.eta, self.trials, self.hits, self.p_hat, self.se, self.reference]


class TailCurve(BaseModel):
    cells: List[TailCell]

    def to_csv(self) -> str:
        return csv_text(TAIL_HEADER, (c.row() for c in self.cells))

    @classmethod
    def from_csv(cls, path: Path) -> "TailCurve":
        rows = read_csv(path, TAIL_HEADER)
        return cls(cells=[
            TailCell(
                model=Ensemble(r["model"]),
                n=int(r["n"]),
                eta=float(r["eta"]),
                trials=int(r["trials"]),
                hits=int(r["hits"]),
                p_hat=float(r["p_hat"]),
                se=float(r["se"]),
                reference=float(r["reference"]),
            )
            for r in rows
        ])


def _sample(model: Ensemble, n: int, seed: SeedLike) -> IntMatrix | np.ndarray:
    if model == Ensemble.GAUSSIAN:
        return sample_gaussian(n, seed)
    tag = ModelTag.IID_RADEMACHER if model == Ensemble.IID_RADEMACHER else ModelTag.ROW_REGULAR
    return sample_matrix(tag, n, seed)


def run_shard(
    model: Ensemble,
    n: int,
    trials: Tuple[int, int],
    seed: int,
    etas: Sequence[float],
    tol: float,
) -> Tuple[List[int], int]:
    """Hit counts per eta over trials [start, stop), plus the non-converged count.

    An eta of 0 is decided exactly for the integer ensembles.
    """
    hits = [0] * len(etas)
    failures = 0
    exact_zero = model != Ensemble.GAUSSIAN and any(eta == 0 for eta in etas)
    for trial in range(*trials):
        M = _sample(model, n, child_seed(seed, n, trial))
        try:
            s_min = smallest_singular_value(M, tol)
        except ConvergenceError as exc:
            logger.warning("n=%d trial %d: %s", n, trial, exc)
            failures += 1
            continue
        singular = exact_singularity(M) if exact_zero else s_min == 0.0
        for idx, eta in enumerate(etas):
            if singular or (eta > 0 and s_min <= eta):
                hits[idx] += 1
        logger.debug("n=%d trial %d: s_min=%.6g", n, trial, s_min)
    return hits, failures


def _shards(trials: int, workers: int) -> List[Tuple[int, int]]:
    bounds = np.linspace(0, trials, workers + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds, bounds[1:]) if b > a]


def _cell(model: Ensemble, n: int, eta: float, trials: int, hits: int, failures: int) -> TailCell:
    p_hat = hits / trials if trials else 0.0
    if hits == 0:
        se = clopper_pearson_upper(0, trials) if trials else 1.0
    else:
        se = math.sqrt(p_hat * (1 - p_hat) / trials)
    return TailCell(
        model=model,
        n=n,
        eta=eta,
        trials=trials,
        hits=hits,
        p_hat=p_hat,
        se=se,
        reference=reference_value(model, n, eta),
        failures=failures,
    )


def run_tail_experiment(cfg: ExperimentConfig) -> TailCurve:
    """Empirical P(s_n <= eta) over the grid for every n; writes the CSV when cfg.out is set."""
    cells: List[TailCell] = []
    for n in cfg.n_list:
        etas = cfg.etas_for(n)
        shards = _shards(cfg.trials, cfg.workers)
        if cfg.workers > 1:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                results = list(pool.map(
                    run_shard,
                    *zip(*[(cfg.model, n, shard, cfg.seed, etas, cfg.tol) for shard in shards]),
                ))
        else:
            results = [run_shard(cfg.model, n, shard, cfg.seed, etas, cfg.tol) for shard in shards]
        hits = [sum(r[0][i] for r in results) for i in range(len(etas))]
        failures = sum(r[1] for r in results)
        effective = cfg.trials - failures
        logger.info("%s n=%d: %d trials, %d failed to converge", cfg.model.value, n, cfg.trials, failures)
        cells.extend(_cell(cfg.model, n, eta, effective, h, failures) for eta, h in zip(etas, hits))
    curve = TailCurve(cells=cells)
    if cfg.out is not None:
        storage.write_text(cfg.out, curve.to_csv())
    return curve


class TailCalibration(BaseModel):
    C: float
    worst: Optional[Tuple[int, float]] = None
    skipped_zero_reference: int = 0
    skipped_below_floor: int = 0


def calibrate_tail_constant(curve: TailCurve, eta_floor: Optional[Callable[[int], float]] = None) -> TailCalibration:
    """Smallest C >= 0 with p_hat <= C reference + 3 se on every cell with a positive reference.

    With `eta_floor`, cells whose eta lies below eta_floor(n) are left out of the fit.
    """
    C, worst, skipped, below = 0.0, None, 0, 0
    for cell in curve.cells:
        if eta_floor is not None and cell.eta < eta_floor(cell.n):
            below += 1
            continue
        if cell.reference <= 0:
            skipped += 1
            continue
        # the se column of zero-hit cells holds an upper bound; p_hat = 0 needs nothing
        slack = 3 * cell.se if cell.hits else 0.0
        required = (cell.p_hat - slack) / cell.reference
        if required > C:
            C, worst = required, (cell.n, cell.eta)
    return TailCalibration(C=C, worst=worst, skipped_zero_reference=skipped, skipped_below_floor=below)


# -- exact singularity at tiny n ---------------------------------------------

def exact_singularity_frequency(n: int, model: Ensemble, budget: Optional[int] = None) -> Fraction:
    """Exact P(det M = 0) by exhaustive enumeration.

    For signs, flipping a row or a column preserves singularity, so the
    first row and column are normalised to +1 and 2^((n-1)^2) matrices are
    enumerated. Row-regular matrices are enumerated row by row.
    """
    budget = config.enum_budget if budget is None else budget
    if n < 1:
        raise PreconditionError("n must be positive")
    if model == Ensemble.IID_RADEMACHER:
        free = (n - 1) ** 2
        if 2 ** free > budget:
            raise BudgetExceededError("sign-matrix enumeration", 2 ** free, budget)
        singular = 0
        for signs in itertools.product((1, -1), repeat=free):
            rows = [[1] * n]
            for i in range(n - 1):
                rows.append([1] + list(signs[i * (n - 1):(i + 1) * (n - 1)]))
            singular += exact_singularity(np.array(rows, dtype=np.int64))
        return Fraction(singular, 2 ** free)
    if model == Ensemble.ROW_REGULAR:
        if n % 2:
            raise PreconditionError("row-regular matrices need even n")
        rows_pool = []
        for ones in itertools.combinations(range(n), n // 2):
            row = [0] * n
            for j in ones:
                row[j] = 1
            rows_pool.append(row)
        total = len(rows_pool) ** n
        if total > budget:
            raise BudgetExceededError("row-regular enumeration", total, budget)
        singular = sum(
            exact_singularity(np.array(rows, dtype=np.int64))
            for rows in itertools.product(rows_pool, repeat=n)
        )
        return Fraction(singular, total)
    raise PreconditionError("the Gaussian ensemble is almost surely nonsingular")


def union_bound_report(C_of_n: float, n: int, rho_cap: float) -> float:
    """log of (100 C(n))^n rho_cap^n; -inf when C(n) = 0."""
    if C_of_n < 0 or rho_cap <= 0 or n < 1:
        raise PreconditionError("need C(n) >= 0, rho_cap > 0 and n >= 1")
    if C_of_n == 0:
        return float("-inf")
    return n * (math.log(100 * C_of_n) + math.log(rho_cap))


# -- corpora -----------------------------------------------------------------

def halasz_corpus(n: int, p: int, size: int, seed: SeedLike = 0, sparse_support: int = 60) -> List[List[int]]:
    """Uniform residues, small entries in {-2, -1, 1, 2}, and sparse vectors, in rotation."""
    gen = generator(seed)
    corpus = []
    for idx in range(size):
        kind = idx % 3
        if kind == 0:
            vec = gen.integers(1, p, size=n)
        elif kind == 1:
            vec = gen.choice(np.array([-2, -1, 1, 2]), size=n) % p
        else:
            vec = np.zeros(n, dtype=np.int64)
            support = gen.choice(n, size=min(sparse_support, n), replace=False)
            vec[support] = gen.integers(1, p, size=support.size)
        corpus.append([int(x) for x in vec])
    return corpus
