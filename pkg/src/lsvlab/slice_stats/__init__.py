"""Moments on the zero-sum slice and invertibility of Q_n on a fixed vector."""
from lsvlab.slice_stats.invertibility import (
    InvertibilityCheck,
    NormSquareEstimate,
    fixed_vector_invertibility_check,
    q_row_norm_monte_carlo,
)
from lsvlab.slice_stats.moments import (
    MgfCalibration,
    MomentCheck,
    MomentParams,
    bernstein_tail_bound,
    calibrate_mgf_constant,
    centered_moment_norm,
    empirical_mgf,
    iid_second_moment,
    low_moment_ratio,
    mgf_bound,
    moment_norm_bound,
    q_row_norm_expectation,
    sample_slice_sums,
    slice_moment_empirical,
    slice_second_moment,
)

__all__ = [
    "InvertibilityCheck",
    "MgfCalibration",
    "MomentCheck",
    "MomentParams",
    "NormSquareEstimate",
    "bernstein_tail_bound",
    "calibrate_mgf_constant",
    "centered_moment_norm",
    "empirical_mgf",
    "fixed_vector_invertibility_check",
    "iid_second_moment",
    "low_moment_ratio",
    "mgf_bound",
    "moment_norm_bound",
    "q_row_norm_expectation",
    "q_row_norm_monte_carlo",
    "sample_slice_sums",
    "slice_moment_empirical",
    "slice_second_moment",
]
