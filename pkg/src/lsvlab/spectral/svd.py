"""Singular values, operator norms and the norm restricted to the zero-sum hyperplane."""
from typing import Any, Optional, Tuple

import numpy as np
import scipy.linalg
from pydantic import BaseModel, model_validator

from lsvlab.config import config
from lsvlab.errors import ConvergenceError, PreconditionError
from lsvlab.log import get_logger
from lsvlab.spectral.exact import exact_singularity

logger = get_logger(__name__)


class SpectralSummary(BaseModel):
    s_min: float
    s_max: float
    restricted_norm_H: Optional[float] = None
    exact_singular: Optional[bool] = None
    residual: float = 0.0

    @model_validator(mode="after")
    def check_order(self) -> "SpectralSummary":
        if not 0 <= self.s_min <= self.s_max * (1 + 1e-12) + 1e-300:
            raise ValueError(f"need 0 <= s_min <= s_max, got {self.s_min}, {self.s_max}")
        if self.restricted_norm_H is not None and self.restricted_norm_H > self.s_max * (1 + 1e-9) + 1e-12:
            raise ValueError(f"restricted norm {self.restricted_norm_H} exceeds s_max {self.s_max}")
        return self


def as_square(M: Any) -> np.ndarray:
    arr = np.asarray(M.entries if hasattr(M, "entries") else M, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def _svd(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    try:
        return scipy.linalg.svd(A, full_matrices=False, lapack_driver="gesdd")
    except np.linalg.LinAlgError:
        logger.warning("gesdd did not converge on a %dx%d matrix, retrying with gesvd", *A.shape)
    try:
        return scipy.linalg.svd(A, full_matrices=False, lapack_driver="gesvd")
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD failed: {exc}", residual=float("inf")) from exc


def extreme_singular_values(M: Any, tol: Optional[float] = None) -> Tuple[float, float, float]:
    """(s_min, s_max, residual) with the residual of both extreme singular triplets.

    The residual is max ||A v - s u||, ||A^T u - s v|| over the two triplets,
    relative to max(s_max, 1). It must not exceed `tol`.
    """
    tol = config.tol if tol is None else tol
    A = as_square(M)
    U, s, Vt = _svd(A)
    scale = max(float(s[0]), 1.0)
    residual = 0.0
    for idx in (0, len(s) - 1):
        u, v, sv = U[:, idx], Vt[idx, :], s[idx]
        residual = max(
            residual,
            float(np.linalg.norm(A @ v - sv * u)) / scale,
            float(np.linalg.norm(A.T @ u - sv * v)) / scale,
        )
    if residual > tol:
        raise ConvergenceError("singular triplet residual above tolerance", residual=residual)
    return float(s[-1]), float(s[0]), residual


def smallest_singular_value(M: Any, tol: Optional[float] = None) -> float:
    return extreme_singular_values(M, tol)[0]


def operator_norm(M: Any, tol: Optional[float] = None) -> float:
    return extreme_singular_values(M, tol)[1]


def hyperplane_basis(n: int) -> np.ndarray:
    """Orthonormal n x (n-1) basis of H = {v : sum(v) = 0}."""
    return scipy.linalg.null_space(np.ones((1, n)))


def restricted_norm_H(M: Any) -> float:
    """sup over unit v in H of ||M v||, computed on an explicit basis of H."""
    A = as_square(M)
    n = A.shape[0]
    if n == 1:
        return 0.0
    return float(scipy.linalg.svdvals(A @ hyperplane_basis(n))[0])


def spectral_summary(M: Any, tol: Optional[float] = None, exact: bool = False, restricted: bool = True) -> SpectralSummary:
    s_min, s_max, residual = extreme_singular_values(M, tol)
    return SpectralSummary(
        s_min=s_min,
        s_max=s_max,
        restricted_norm_H=restricted_norm_H(M) if restricted else None,
        exact_singular=exact_singularity(M) if exact else None,
        residual=residual,
    )
