import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from lsvlab.core.domain import ExponentProfile
from lsvlab.errors import BudgetExceededError, PreconditionError
from lsvlab.models import difference_vector, sample_base
from lsvlab.structure import (
    GammaClass,
    HalaszParams,
    LcdParams,
    LcdStatus,
    Membership,
    b_set_membership,
    check_witnessing_pair,
    classify_gamma,
    compute_T_v,
    counting_bound,
    halasz_bound,
    halasz_calibration,
    halasz_rhs,
    lattice_distance,
    lcd_estimate,
    min_normalized_r_star,
    pigeonhole_floor,
    r_k_star,
    r_k_star_brute,
    r_k_star_inclusion_exclusion,
    r_k_star_trivial_bound,
    recheck_lcd,
    witnessing_pair,
)


def test_r_k_star_small_case():
    # only (0, 1) and (1, 0) have two distinct indices, each with the signs +- and -+
    assert r_k_star_brute([1, 1], 1, 3) == 4
    assert r_k_star_inclusion_exclusion([1, 1], 1, 3) == 4
    assert r_k_star([1, 1], 1, 3, method="brute") == 4
    assert r_k_star_trivial_bound([1, 1], 1) == 16


def test_r_k_star_rejects_bad_arguments():
    with pytest.raises(PreconditionError):
        r_k_star_inclusion_exclusion([1, 2], 1, 9)
    with pytest.raises(PreconditionError):
        r_k_star_brute([1, 2], 0, 5)
    with pytest.raises(BudgetExceededError):
        r_k_star_brute(list(range(40)), 2, 7, budget=1000)
    assert r_k_star_inclusion_exclusion([], 1, 5) == 0


def test_r_k_star_budget_only_bounds_brute_force():
    a = list(range(40))
    assert r_k_star(a, 2, 7, budget=1000) == r_k_star_inclusion_exclusion(a, 2, 7)
    with pytest.raises(BudgetExceededError):
        r_k_star(a, 2, 7, method="brute", budget=1000)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-20, 20), min_size=1, max_size=6),
    st.sampled_from([3, 5, 7, 11]),
    st.integers(1, 2),
)
def test_r_k_star_engines_agree(a, p, k):
    count = r_k_star_inclusion_exclusion(a, k, p)
    assert count == r_k_star_brute(a, k, p)
    assert 0 <= count <= r_k_star_trivial_bound(a, k)


def test_pigeonhole_floor():
    assert pigeonhole_floor(3, 2) == pytest.approx(1 / 13)
    with pytest.raises(PreconditionError):
        pigeonhole_floor(0, 1)


def test_halasz_rhs_reference_value():
    rhs = halasz_rhs(101, 160, 1, 2.0, 0, 1.0)
    assert rhs == pytest.approx(0.1917, abs=5e-4)
    # C = 0 leaves 1/p + e^-M
    assert halasz_rhs(101, 160, 1, 2.0, 10 ** 6, 0.0) == pytest.approx(1 / 101 + math.exp(-2))


def test_halasz_params_validation():
    HalaszParams(p=101, k=1, M=2, s1=60, s2=60)
    with pytest.raises(ValidationError):
        HalaszParams(p=100, k=1, M=2, s1=60, s2=60)
    with pytest.raises(ValidationError):
        HalaszParams(p=101, k=1, M=2, s1=10, s2=20)
    with pytest.raises(ValidationError):
        HalaszParams(p=5, k=1, M=2, s1=10, s2=10, t=6)
    with pytest.raises(ValidationError):
        HalaszParams(p=101, k=0, M=2, s1=10, s2=10)


def test_halasz_constraints_enforced():
    params = HalaszParams(p=101, k=1, M=2, s1=60, s2=60)
    with pytest.raises(PreconditionError):
        # 80kM = 160 > n
        halasz_bound([1] * 100, params)
    with pytest.raises(PreconditionError):
        # 30M = 60 > |supp(a)|
        halasz_bound([1] * 50 + [0] * 110, params)
    assert halasz_bound([1] * 160, params, r_star=0) == pytest.approx(halasz_rhs(101, 160, 1, 2.0, 0))


def test_halasz_calibration_on_constant_vector():
    # at M = 2 the all-ones vector already sits below 1/p + e^-M
    params = HalaszParams(p=101, k=1, M=2, s1=60, s2=60)
    calibration = halasz_calibration([[1] * 160], params)
    row = calibration.rows[0]
    assert calibration.C_min == row.required_C
    assert row.r_star == r_k_star_inclusion_exclusion([1] * 160, 1, 101)
    bound = halasz_rhs(101, 160, 1, 2.0, row.r_star, calibration.C_min)
    assert row.rho <= bound + 1e-12
    with pytest.raises(PreconditionError):
        halasz_calibration([], params)


def test_b_set_membership_trivial_threshold():
    result = b_set_membership([1, 2, 3, 4], 1, 2, 2, 0, 7)
    assert result.status == Membership.MEMBER
    assert result.method == "trivial"


def test_b_set_membership_preconditions():
    with pytest.raises(PreconditionError):
        b_set_membership([1, 2, 0, 0], 1, 3, 2, 1, 7)
    with pytest.raises(PreconditionError):
        b_set_membership([1, 2, 3, 4], 1, 2, 3, 1, 7)
    with pytest.raises(PreconditionError):
        b_set_membership([1, 2, 3, 4], 1, 2, 2, 8, 7)


def test_b_set_membership_is_monotone_in_t():
    a = [1, 2, 3, 4, 5, 6]
    statuses = [b_set_membership(a, 1, 4, 4, t, 7).status for t in (0, 0.5, 1, 2, 4, 7)]
    first_non_member = statuses.index(Membership.NON_MEMBER)
    assert all(s == Membership.MEMBER for s in statuses[:first_non_member])
    assert all(s == Membership.NON_MEMBER for s in statuses[first_non_member:])


def test_b_set_membership_witness_violates_threshold():
    # R_k^*(b) < 4|b|^2 always, so t = p rejects every subvector
    result = b_set_membership([1, 2, 3, 4, 5, 6], 1, 4, 4, 7, 7)
    assert result.status == Membership.NON_MEMBER
    assert result.method == "exhaustive"
    assert len(result.witness) >= 4
    assert result.witness_r_star * 7 < 7 * 4 * len(result.witness) ** 2


def test_counting_bound():
    assert counting_bound(4, 1, 2, 2, 2, 5) == pytest.approx(math.log(2.5e11), rel=1e-12)
    with pytest.raises(PreconditionError):
        counting_bound(4, 1, 2, 3, 2, 5)
    with pytest.raises(PreconditionError):
        counting_bound(4, 1, 2, 2, 0.5, 5)


def test_lattice_distance():
    d = lattice_distance(np.array([0.5, 1.0, 1.25]), np.array([1.0, 0.0]))
    assert d == pytest.approx([0.5, 0.0, 0.25])


def test_lcd_of_basis_vector():
    params = LcdParams(gamma=0.1, alpha=1.0, theta_max=3.0)
    result = lcd_estimate([1.0, 0.0, 0.0, 0.0], params)
    assert result.status == LcdStatus.FOUND
    # dist(theta e1, Z^4) = 1 - theta < 0.1 theta once theta > 1/1.1
    assert result.theta_star == pytest.approx(1 / 1.1, abs=1e-9)
    assert result.witness == [1, 0, 0, 0]
    assert recheck_lcd([1.0, 0.0, 0.0, 0.0], result)


def test_lcd_of_diagonal_vector():
    a = np.array([1.0, 1.0]) / math.sqrt(2)
    result = lcd_estimate(a, LcdParams(gamma=0.1, alpha=1.0, theta_max=5.0))
    assert result.status == LcdStatus.FOUND
    assert result.theta_star == pytest.approx(math.sqrt(2) / 1.1, abs=1e-9)
    assert result.witness == [1, 1]
    assert recheck_lcd(a, result)


def test_lcd_is_sign_and_permutation_invariant():
    params = LcdParams(gamma=0.1, alpha=1.0, theta_max=10.0)
    a = np.array([3.0, 4.0, 12.0]) / 13.0
    base = lcd_estimate(a, params)
    flipped = lcd_estimate(-a[::-1], params)
    assert base.status == flipped.status == LcdStatus.FOUND
    assert flipped.theta_star == pytest.approx(base.theta_star, abs=2 * base.resolution)


def test_lcd_exceeds_theta_max():
    params = LcdParams(gamma=0.1, alpha=1.0, theta_max=0.8)
    result = lcd_estimate([1.0, 0.0], params)
    assert result.status == LcdStatus.EXCEEDS_THETA_MAX
    assert result.certified
    assert result.scanned_to == pytest.approx(0.8)
    assert not recheck_lcd([1.0, 0.0], result)

    below_start = lcd_estimate([1.0, 0.0], params.model_copy(update={"theta_max": 0.25}))
    assert below_start.certified
    assert below_start.scanned_to == 0.25


def test_lcd_rejects_bad_input():
    with pytest.raises(PreconditionError):
        lcd_estimate([1.0, 1.0], LcdParams(gamma=0.1, alpha=1.0, theta_max=3.0))
    with pytest.raises(ValidationError):
        LcdParams(gamma=1.5, alpha=1.0, theta_max=3.0)
    with pytest.raises(ValidationError):
        LcdParams(gamma=0.1, alpha=1.0, theta_max=math.inf)


def test_recheck_rejects_tampered_witness():
    params = LcdParams(gamma=0.1, alpha=1.0, theta_max=3.0)
    result = lcd_estimate([1.0, 0.0], params)
    assert not recheck_lcd([1.0, 0.0], result.model_copy(update={"witness": [2, 0]}))
    assert not recheck_lcd([1.0, 0.0], result.model_copy(update={"witness": [0, 0]}))


def test_classify_gamma():
    profile = ExponentProfile.desk()
    params = LcdParams(gamma=0.1, alpha=1.0, theta_max=1.0)
    e1 = [1.0] + [0.0] * 15
    # threshold 16^(3/4) / 1 = 8 lies above LCD(e1) = 1/1.1
    assert classify_gamma(e1, 1.0, 16, params, profile) == GammaClass.GAMMA2
    # threshold 8 / 100 lies below the provably empty interval (0, 1/2]
    assert classify_gamma(e1, 100.0, 16, params, profile) == GammaClass.GAMMA1
    diagonal = np.array([1.0, 1.0]) / math.sqrt(2)
    starved = params.model_copy(update={"max_grid_points": 2})
    assert classify_gamma(diagonal, 8.0, 16, starved, profile) == GammaClass.UNDETERMINED
    with pytest.raises(PreconditionError):
        classify_gamma(e1, 0.0, 16, params, profile)


def test_compute_T_v():
    base = sample_base(8, 5)
    assert compute_T_v([0] * 8, base, threshold=1) == []
    assert compute_T_v(list(range(8)), base, threshold=0) == list(range(8))


def test_min_normalized_r_star():
    assert min_normalized_r_star([0, 0], 1, 1, 5) is None
    # the single-entry subvectors have no tuple with two distinct indices
    assert min_normalized_r_star([1, 2], 1, 1, 5) == 0


def test_witnessing_pair_is_ordered():
    base = sample_base(8, 2)
    v = [4, -1, 0, 3, 3, 7, -2, 1]
    report = witnessing_pair(v, base, k=1, s2=1, threshold=1)
    top = max(abs(x) for i in report.T_v for x in difference_vector(v, base, i))
    assert report.p > 4 * top
    assert check_witnessing_pair(report)
    i1, i2 = report.witnessing_pair
    assert not check_witnessing_pair(report.model_copy(update={"witnessing_pair": (i2, i1)}))


def test_witnessing_pair_without_candidates():
    report = witnessing_pair([0] * 8, sample_base(8, 2), k=1, s2=1, threshold=1)
    assert report.T_v == []
    assert report.witnessing_pair is None
    assert check_witnessing_pair(report)
