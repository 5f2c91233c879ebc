"""Exact laws of signed sums and their anti-concentration functionals."""
from lsvlab.anticonc.distributions import (
    atom_probability,
    atom_probability_mod_p,
    brute_force_distribution,
    brute_force_mod_p,
    brute_force_slice_distribution,
    mod_p_distribution,
    signed_sum_distribution,
    signed_sum_values,
    slice_sum_distribution,
    slice_values,
)
from lsvlab.anticonc.levy import SmallBallComparison, lcd_small_ball_ratio, levy_concentration
from lsvlab.anticonc.tables import DistTable, LevyEstimate
from lsvlab.anticonc.two_step import row_value_counts, two_step_row_atom

__all__ = [
    "DistTable",
    "LevyEstimate",
    "SmallBallComparison",
    "atom_probability",
    "atom_probability_mod_p",
    "brute_force_distribution",
    "brute_force_mod_p",
    "brute_force_slice_distribution",
    "lcd_small_ball_ratio",
    "levy_concentration",
    "mod_p_distribution",
    "row_value_counts",
    "signed_sum_distribution",
    "signed_sum_values",
    "slice_sum_distribution",
    "slice_values",
    "two_step_row_atom",
]
