"""LCD search, Gamma classification and the inverse Littlewood-Offord counting tools."""
from lsvlab.structure.counting import (
    HalaszCalibration,
    HalaszParams,
    Membership,
    MembershipResult,
    b_set_membership,
    counting_bound,
    halasz_bound,
    halasz_calibration,
    halasz_rhs,
    pigeonhole_floor,
    r_k_star,
    r_k_star_brute,
    r_k_star_inclusion_exclusion,
    r_k_star_trivial_bound,
)
from lsvlab.structure.lcd import (
    GammaClass,
    LcdParams,
    LcdResult,
    LcdStatus,
    classify_gamma,
    lattice_distance,
    lcd_estimate,
    recheck_lcd,
)
from lsvlab.structure.witness import (
    StructureReport,
    check_witnessing_pair,
    compute_T_v,
    min_normalized_r_star,
    witnessing_pair,
)

__all__ = [
    "GammaClass",
    "HalaszCalibration",
    "HalaszParams",
    "LcdParams",
    "LcdResult",
    "LcdStatus",
    "Membership",
    "MembershipResult",
    "StructureReport",
    "b_set_membership",
    "check_witnessing_pair",
    "classify_gamma",
    "compute_T_v",
    "counting_bound",
    "halasz_bound",
    "halasz_calibration",
    "halasz_rhs",
    "lattice_distance",
    "lcd_estimate",
    "min_normalized_r_star",
    "pigeonhole_floor",
    "r_k_star",
    "r_k_star_brute",
    "r_k_star_inclusion_exclusion",
    "r_k_star_trivial_bound",
    "recheck_lcd",
    "witnessing_pair",
]
