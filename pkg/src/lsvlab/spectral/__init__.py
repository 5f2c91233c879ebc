"""Singular values, operator norms and exact singularity."""
from lsvlab.spectral.checks import NormCheck, operator_norm_check, restricted_norm_check
from lsvlab.spectral.exact import exact_determinant, exact_rank, exact_singularity
from lsvlab.spectral.svd import (
    SpectralSummary,
    extreme_singular_values,
    hyperplane_basis,
    operator_norm,
    restricted_norm_H,
    smallest_singular_value,
    spectral_summary,
)

__all__ = [
    "NormCheck",
    "SpectralSummary",
    "exact_determinant",
    "exact_rank",
    "exact_singularity",
    "extreme_singular_values",
    "hyperplane_basis",
    "operator_norm",
    "operator_norm_check",
    "restricted_norm_H",
    "restricted_norm_check",
    "smallest_singular_value",
    "spectral_summary",
]
