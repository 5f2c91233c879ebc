import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsvlab.anticonc import signed_sum_distribution, slice_sum_distribution
from lsvlab.errors import PreconditionError
from lsvlab.slice_stats import (
    MomentParams,
    bernstein_tail_bound,
    calibrate_mgf_constant,
    centered_moment_norm,
    empirical_mgf,
    fixed_vector_invertibility_check,
    iid_second_moment,
    low_moment_ratio,
    mgf_bound,
    moment_norm_bound,
    q_row_norm_expectation,
    q_row_norm_monte_carlo,
    sample_slice_sums,
    slice_moment_empirical,
    slice_second_moment,
)
from lsvlab.slice_stats.moments import check_lambda

even_vectors = st.integers(1, 5).flatmap(lambda h: st.lists(st.integers(-9, 9), min_size=2 * h, max_size=2 * h))


def test_slice_second_moment_small_case():
    # half-subset sums of 1..4 are 3, 4, 5, 5, 6, 7, so X^2 averages 640/6
    assert slice_second_moment([1, 2, 3, 4]) == Fraction(320, 3)
    assert slice_second_moment([0.5, 1.5]) == pytest.approx(5.0)
    with pytest.raises(PreconditionError):
        slice_second_moment([1])


@settings(max_examples=50, deadline=None)
@given(even_vectors)
def test_closed_forms_match_enumeration(v):
    n = len(v)
    EX2 = slice_second_moment(v)
    assert EX2 == slice_sum_distribution(v).moment(2)
    assert q_row_norm_expectation(v) == Fraction(n, 4) * EX2
    S = sum(v)
    assert iid_second_moment(v) == signed_sum_distribution(v).expect(lambda x: (x + S) ** 2)


def test_q_row_norm_rejects_odd_n():
    with pytest.raises(PreconditionError):
        q_row_norm_expectation([1, 2, 3])


def test_check_lambda():
    check_lambda(1e-3, 10.0)
    with pytest.raises(PreconditionError):
        check_lambda(0.0, 10.0)
    with pytest.raises(PreconditionError):
        check_lambda(0.01, 10.0)
    with pytest.raises(PreconditionError):
        MomentParams(lam=0.1).check_lambda(1.0)


def test_slice_moment_exact_mode():
    check = slice_moment_empirical([1, 2, 3, 4], 1)
    assert check.exact_moment == Fraction(320, 3)
    assert check.reference == pytest.approx(100 * 2 * 4 * 320 / 3)
    assert check.passed
    with pytest.raises(PreconditionError):
        slice_moment_empirical([1, 2], 0)


def test_slice_moment_monte_carlo_agrees_with_exact():
    v = [3, -1, 4, 1, -5, 9, 2, -6]
    exact = slice_moment_empirical(v, 2)
    mc = slice_moment_empirical(v, 2, mode="mc", trials=20_000, seed=11)
    assert mc.trials == 20_000
    assert abs(mc.moment - exact.moment) <= 4 * mc.se


def test_sample_slice_sums_stay_on_the_support():
    v = [1, 2, 3, 4, 5, 6]
    support = set(float(x) for x in slice_sum_distribution(v).support)
    draws = sample_slice_sums(v, 500, seed=2)
    assert draws.shape == (500,)
    assert set(draws.tolist()) <= support
    assert np.array_equal(draws, sample_slice_sums(v, 500, seed=2))
    with pytest.raises(PreconditionError):
        sample_slice_sums([1, 2, 3], 10, seed=0)


def test_constant_vector_has_no_spread():
    assert low_moment_ratio([2, 2, 2, 2], 3) == pytest.approx(1.0)
    assert centered_moment_norm([2, 2, 2, 2], 2) == 0.0
    assert empirical_mgf([2, 2, 2, 2], 1e-4) == 1.0
    with pytest.raises(PreconditionError):
        low_moment_ratio([0, 0], 2)


def test_centered_moment_norm_within_bound():
    v = [1, 2, 3, 4, -2, 7]
    EX2 = float(slice_second_moment(v))
    for q in (1, 2, 3):
        assert centered_moment_norm(v, q) <= moment_norm_bound(q, len(v), EX2)


def test_mgf_bound():
    assert mgf_bound(1e-3, 10.0, 3, 16, O_t=0.0) == pytest.approx(1 + 200 * 4 * 20 ** 3 * 1e-6)
    with pytest.raises(PreconditionError):
        mgf_bound(1.0, 10.0, 3, 16)


def test_mgf_calibration_covers_the_corpus():
    corpus = [[1, 2, 3, 4], [1, -1, 2, -2], [0, 0, 0, 0], [5, 0, 0, 1, 2, 2]]
    calibration = calibrate_mgf_constant(corpus, t=3)
    # the zero vector has E[X^2] = 0 and is skipped
    assert calibration.evaluations == 12
    assert calibration.O_t >= 0
    for v in corpus:
        EX2 = float(slice_second_moment(v))
        if not EX2:
            continue
        for frac in (0.1, 0.25, 0.5, 0.9):
            lam = frac / (40 * EX2)
            assert empirical_mgf(v, lam) <= mgf_bound(lam, EX2, 3, len(v), calibration.O_t) + 1e-12


def test_bernstein_tail_bound_is_finite():
    v = [1, 2, 3, 4]
    EX2 = float(slice_second_moment(v))
    lam = 0.5 / (40 * EX2)
    bound = bernstein_tail_bound(v, 4, 3, lam, 1.0)
    expected = math.exp(-lam * 4 * EX2 / 2) * mgf_bound(lam, EX2, 3, 4, 1.0) ** 4
    assert bound == pytest.approx(expected)


def test_invertibility_on_the_ones_vector():
    # Q 1 = (n/2) 1 has norm (n/2) sqrt(n), above the cutoff n/2
    check = fixed_vector_invertibility_check(np.ones(10), 10, 20, seed=1)
    assert check.hits == 0
    assert check.probability == 0.0
    with pytest.raises(PreconditionError):
        fixed_vector_invertibility_check(np.ones(9), 10, 20, seed=1)
    with pytest.raises(PreconditionError):
        fixed_vector_invertibility_check(np.ones(10), 10, 0, seed=1)


def test_q_row_norm_monte_carlo():
    v = [1, -2, 0, 3, 1, 1, -1, 2]
    estimate = q_row_norm_monte_carlo(v, 3000, seed=4)
    assert abs(estimate.mean - float(q_row_norm_expectation(v))) <= 4 * estimate.se
