"""Least common denominator search and the Gamma^1/Gamma^2 split of unit vectors.

LCD_{gamma,alpha}(a) = inf { theta > 0 : dist(theta a, Z^n) < min(gamma ||theta a||, alpha) }.

With f(theta) = dist(theta a, Z^n) - min(gamma theta, alpha), admissible
theta are exactly those with f(theta) < 0. For a unit vector f is
(1 + gamma)-Lipschitz, so a grid cell of width h whose endpoint values
satisfy f_l + f_r >= (1 + gamma) h holds no admissible theta. On
(0, 1/(2 max|a_i|)] every coordinate of theta a rounds to 0, hence
f = (1 - gamma) theta > 0 and the scan starts there.

The defining set is open, so the infimum itself is never admissible. The
search returns the smallest admissible theta it can verify, which lies
within the bisection tolerance above the infimum.
"""
import math
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field, model_validator

from lsvlab.config import config
from lsvlab.core.domain import ExponentProfile
from lsvlab.errors import PreconditionError
from lsvlab.log import get_logger

logger = get_logger(__name__)

GOLDEN = (math.sqrt(5) - 1) / 2
CHUNK = 4096


class LcdParams(BaseModel):
    gamma: float = Field(gt=0, lt=1)
    alpha: float = Field(gt=0)
    theta_max: float = Field(gt=0)
    # None means 1e-3 / max|a_i|; keep it well below 1 / (2 max|a_i|)
    grid_resolution: Optional[float] = Field(default=None, gt=0)
    refine_iters: int = Field(default=60, gt=0)
    max_grid_points: int = Field(default=20_000_000, gt=0)

    @model_validator(mode="after")
    def check_finite(self) -> "LcdParams":
        if not math.isfinite(self.theta_max):
            raise ValueError("theta_max must be finite")
        return self


class LcdStatus(str, Enum):
    FOUND = "Found"
    EXCEEDS_THETA_MAX = "ExceedsThetaMax"


class LcdResult(BaseModel):
    status: LcdStatus
    theta_star: Optional[float] = None
    witness: Optional[List[int]] = None
    dist: Optional[float] = None
    # every scanned cell below theta_star (or up to theta_max) was proven free of admissible theta
    certified: bool = False
    scanned_to: float
    resolution: float
    params: LcdParams


class GammaClass(str, Enum):
    GAMMA1 = "Gamma1"
    GAMMA2 = "Gamma2"
    UNDETERMINED = "Undetermined"


def _unit(a: Sequence[float] | np.ndarray) -> np.ndarray:
    arr = np.asarray(a, dtype=float).ravel()
    if arr.size == 0 or abs(float(np.linalg.norm(arr)) - 1.0) > 1e-10:
        raise PreconditionError("lcd_estimate needs a unit vector (||a|| = 1 within 1e-10)")
    return arr


def lattice_distance(theta: np.ndarray | float, a: np.ndarray) -> np.ndarray:
    """dist(theta a, Z^n) for a scalar or a 1-d array of theta."""
    scaled = np.multiply.outer(np.atleast_1d(theta), a)
    return np.linalg.norm(scaled - np.rint(scaled), axis=-1)


def _objective(theta: np.ndarray | float, a: np.ndarray, gamma: float, alpha: float) -> np.ndarray:
    t = np.atleast_1d(np.asarray(theta, dtype=float))
    return lattice_distance(t, a) - np.minimum(gamma * t, alpha)


def _f(theta: float, a: np.ndarray, gamma: float, alpha: float) -> float:
    return float(_objective(theta, a, gamma, alpha)[0])


def _golden_min(lo: float, hi: float, a: np.ndarray, gamma: float, alpha: float, iters: int) -> tuple[float, float]:
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = _f(x1, a, gamma, alpha), _f(x2, a, gamma, alpha)
    for _ in range(iters):
        if f1 < 0:
            return x1, f1
        if f2 < 0:
            return x2, f2
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = _f(x1, a, gamma, alpha)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = _f(x2, a, gamma, alpha)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _bisect_entry(good: float, bad: float, a: np.ndarray, gamma: float, alpha: float, iters: int) -> float:
    """Shrink [good, bad] with f(good) >= 0 > f(bad); return the admissible end."""
    for _ in range(iters):
        mid = 0.5 * (good + bad)
        if mid in (good, bad):
            break
        if _f(mid, a, gamma, alpha) < 0:
            bad = mid
        else:
            good = mid
    return bad


def _refine_cell(lo: float, hi: float, f_lo: float, f_hi: float, a: np.ndarray, params: LcdParams) -> Optional[float]:
    gamma, alpha, iters = params.gamma, params.alpha, params.refine_iters
    if f_hi < 0:
        return _bisect_entry(lo, hi, a, gamma, alpha, iters)
    theta, value = _golden_min(lo, hi, a, gamma, alpha, iters)
    if value < 0:
        return _bisect_entry(lo, theta, a, gamma, alpha, iters)
    return None


def lcd_estimate(a: Sequence[float] | np.ndarray, params: LcdParams) -> LcdResult:
    """Grid scan of (0, theta_max] with Lipschitz certification and per-cell refinement.

    Found: theta_star satisfies the strict inequality (re-checked before
    returning). ExceedsThetaMax: no admissible theta was located; it is a
    proof only when `certified` is set and `scanned_to` reaches theta_max.
    """
    arr = _unit(a)
    gamma, alpha = params.gamma, params.alpha
    top = float(np.max(np.abs(arr)))
    h = params.grid_resolution or 1e-3 / top
    theta0 = 1.0 / (2.0 * top)
    lip = 1.0 + gamma
    certified = True

    def exceeds(scanned_to: float) -> LcdResult:
        return LcdResult(
            status=LcdStatus.EXCEEDS_THETA_MAX,
            certified=certified,
            scanned_to=scanned_to,
            resolution=h,
            params=params,
        )

    if params.theta_max <= theta0:
        return exceeds(params.theta_max)

    cells = math.ceil((params.theta_max - theta0) / h)
    if cells + 1 > params.max_grid_points:
        logger.warning("LCD grid needs %d points, scanning only the first %d", cells + 1, params.max_grid_points)
        cells = params.max_grid_points - 1
        certified = False
    end = min(params.theta_max, theta0 + cells * h)

    start = 0
    while start < cells:
        stop = min(cells, start + CHUNK)
        grid = theta0 + h * np.arange(start, stop + 1, dtype=float)
        grid[-1] = min(grid[-1], params.theta_max)
        values = _objective(grid, arr, gamma, alpha)
        clean = values[:-1] + values[1:] >= lip * np.diff(grid) + 1e-12
        for idx in np.flatnonzero(~clean):
            lo, hi = float(grid[idx]), float(grid[idx + 1])
            theta = _refine_cell(lo, hi, float(values[idx]), float(values[idx + 1]), arr, params)
            if theta is not None and _f(theta, arr, gamma, alpha) < 0:
                point = np.rint(theta * arr)
                logger.debug("admissible theta %.12g found in cell [%.6g, %.6g]", theta, lo, hi)
                return LcdResult(
                    status=LcdStatus.FOUND,
                    theta_star=theta,
                    witness=[int(x) for x in point],
                    dist=float(np.linalg.norm(theta * arr - point)),
                    certified=certified,
                    scanned_to=theta,
                    resolution=h,
                    params=params,
                )
            # neither certified nor refuted
            certified = False
        start = stop
    if not certified:
        logger.debug("LCD scan to %.6g left uncertified cells", end)
    return exceeds(end)


def recheck_lcd(a: Sequence[float] | np.ndarray, result: LcdResult) -> bool:
    """Independently re-verify dist(theta* a, witness) < min(gamma ||theta* a||, alpha)."""
    if result.status != LcdStatus.FOUND or result.theta_star is None or result.witness is None:
        return False
    arr = np.asarray(a, dtype=float)
    theta = result.theta_star
    witness = np.asarray(result.witness, dtype=float)
    if not np.any(witness):
        return False
    # the witness must be a nearest lattice point for dist to equal the distance to it
    if not np.array_equal(witness, np.rint(theta * arr)):
        return False
    dist = float(np.linalg.norm(theta * arr - witness))
    bound = min(result.params.gamma * theta * float(np.linalg.norm(arr)), result.params.alpha)
    return dist < bound


def classify_gamma(
    a: Sequence[float] | np.ndarray,
    eta: float,
    n: int,
    params: LcdParams,
    profile: Optional[ExponentProfile] = None,
) -> GammaClass:
    """Gamma2 if LCD < n^(3/4)/eta is exhibited, Gamma1 if the scan certifies none, else Undetermined."""
    if eta <= 0:
        raise PreconditionError(f"eta must be positive, got {eta}")
    profile = profile or ExponentProfile.for_preset(config.profile)
    threshold = n ** profile.lcd_threshold_exp / eta
    result = lcd_estimate(a, params.model_copy(update={"theta_max": threshold}))
    if result.status == LcdStatus.FOUND and result.theta_star is not None and result.theta_star < threshold:
        return GammaClass.GAMMA2
    if result.status == LcdStatus.EXCEEDS_THETA_MAX and result.certified and result.scanned_to >= threshold:
        return GammaClass.GAMMA1
    logger.warning("Gamma classification undetermined below threshold %.6g", threshold)
    return GammaClass.UNDETERMINED
