import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from lsvlab.anticonc import (
    DistTable,
    atom_probability,
    atom_probability_mod_p,
    brute_force_distribution,
    brute_force_mod_p,
    brute_force_slice_distribution,
    lcd_small_ball_ratio,
    levy_concentration,
    mod_p_distribution,
    row_value_counts,
    signed_sum_distribution,
    signed_sum_values,
    slice_sum_distribution,
    slice_values,
    two_step_row_atom,
)
from lsvlab.errors import BudgetExceededError, PreconditionError
from lsvlab.models import sample_base
from lsvlab.structure import pigeonhole_floor

small_vectors = st.lists(st.integers(-9, 9), min_size=1, max_size=9)
even_vectors = st.integers(1, 5).flatmap(lambda h: st.lists(st.integers(-9, 9), min_size=2 * h, max_size=2 * h))


def test_dist_table_validates():
    with pytest.raises(ValueError):
        DistTable(support=(0, 1), probs=(Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(ValueError):
        DistTable(support=(1, 0), probs=(Fraction(1, 2), Fraction(1, 2)))
    table = DistTable.from_counts({0: 2, 3: 1, 5: 1}, 4)
    assert table.prob(3) == Fraction(1, 4)
    assert table.prob(4) == 0
    assert table.atom() == Fraction(1, 2)
    assert table.mean() == 2
    assert table.to_csv() == "value,probability\n0,1/2\n3,1/4\n5,1/4\n"
    assert table.probs == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
    with pytest.raises(ValidationError):
        table.exact = False


def test_signed_sum_of_two_ones():
    table = signed_sum_distribution([1, 1])
    assert table.as_dict() == {-2: Fraction(1, 4), 0: Fraction(1, 2), 2: Fraction(1, 4)}
    assert atom_probability([1, 1]) == Fraction(1, 2)


def test_signed_sum_with_zero_entries():
    assert signed_sum_distribution([0, 0, 3]).as_dict() == {-3: Fraction(1, 2), 3: Fraction(1, 2)}


def test_signed_sum_distinct_powers_of_two_has_no_repeated_atoms():
    assert atom_probability([1, 2, 4, 8]) == Fraction(1, 16)


def test_signed_sum_long_vector_uses_exact_integers():
    table = signed_sum_distribution([1] * 70)
    assert table.prob(0) == Fraction(math.comb(70, 35), 2 ** 70)


def test_signed_sum_rational_and_real_inputs():
    table = signed_sum_distribution([Fraction(1, 2), Fraction(1, 3)])
    assert table.support == (Fraction(-5, 6), Fraction(-1, 6), Fraction(1, 6), Fraction(5, 6))
    with pytest.raises(PreconditionError):
        signed_sum_distribution([0.5, 0.25])
    real = signed_sum_distribution([0.1, 0.2, 0.3], exact=False)
    assert not real.exact
    # 0.1 + 0.2 - 0.3 and its negation collapse onto 0 after rounding
    assert real.prob(0.0) == pytest.approx(0.25)


def test_signed_sum_budget():
    with pytest.raises(BudgetExceededError):
        signed_sum_distribution([10 ** 6, 1], budget=1000)
    with pytest.raises(BudgetExceededError):
        brute_force_distribution([1] * 12, budget=1000)


@settings(max_examples=60, deadline=None)
@given(small_vectors)
def test_signed_sum_matches_enumeration(w):
    assert signed_sum_distribution(w) == brute_force_distribution(w)


@settings(max_examples=60, deadline=None)
@given(small_vectors, st.randoms(use_true_random=False), st.integers(1, 5))
def test_atom_invariances(w, rnd, c):
    rho = atom_probability(w)
    shuffled = list(w)
    rnd.shuffle(shuffled)
    flipped = [x if rnd.random() < 0.5 else -x for x in w]
    assert atom_probability(shuffled) == rho
    assert atom_probability(flipped) == rho
    assert atom_probability([c * x for x in w]) == rho


@settings(max_examples=60, deadline=None)
@given(small_vectors)
def test_pigeonhole_floor(w):
    K = max(abs(x) for x in w)
    if K:
        assert atom_probability(w) >= pigeonhole_floor(len(w), K)


def test_mod_p_distribution():
    table = mod_p_distribution([1, 1], 3)
    assert table.as_dict() == {0: Fraction(1, 2), 1: Fraction(1, 4), 2: Fraction(1, 4)}
    assert atom_probability_mod_p([1, 1], 3) == Fraction(1, 2)
    assert mod_p_distribution([-1, 4], 5) == brute_force_mod_p([-1, 4], 5)


def test_mod_p_rejects_bad_primes():
    for p in (2, 9, 1):
        with pytest.raises(PreconditionError):
            mod_p_distribution([1, 2], p)


@settings(max_examples=60, deadline=None)
@given(small_vectors, st.sampled_from([3, 5, 7, 11, 13]))
def test_mod_p_matches_enumeration_and_dominates_lift(w, p):
    assert mod_p_distribution(w, p) == brute_force_mod_p(w, p)
    assert atom_probability_mod_p(w, p) >= atom_probability(w)


def test_slice_distribution_small():
    table = slice_sum_distribution([1, 2])
    assert table.as_dict() == {2: Fraction(1, 2), 4: Fraction(1, 2)}
    table = slice_sum_distribution([1, 1, 1, 1])
    assert table.as_dict() == {4: Fraction(1)}


def test_slice_rejects_odd_n():
    with pytest.raises(PreconditionError):
        slice_sum_distribution([1, 2, 3])
    with pytest.raises(PreconditionError):
        brute_force_slice_distribution([])


@settings(max_examples=60, deadline=None)
@given(even_vectors)
def test_slice_matches_enumeration(v):
    assert slice_sum_distribution(v) == brute_force_slice_distribution(v)


def test_real_enumerators():
    table = signed_sum_values([0.6, 0.8])
    assert len(table) == 4
    assert table.atom() == pytest.approx(0.25)
    slice_table = slice_values([0.6, 0.8])
    assert slice_table.support == pytest.approx((1.2, 1.6))
    with pytest.raises(BudgetExceededError):
        signed_sum_values(np.ones(21))


def test_levy_from_table():
    table = signed_sum_distribution([1, 1])
    assert levy_concentration(table, 0).exact_value == Fraction(1, 2)
    # closed windows: [-2, 0] holds both boundary atoms
    assert levy_concentration(table, 1).exact_value == Fraction(3, 4)
    assert levy_concentration(table, 2).value == 1.0
    with pytest.raises(PreconditionError):
        levy_concentration(table, -0.1)


@settings(max_examples=40, deadline=None)
@given(small_vectors)
def test_levy_is_monotone(w):
    table = signed_sum_distribution(w)
    values = [levy_concentration(table, d).value for d in (0, 0.5, 1, 3, 10)]
    assert values == sorted(values)
    assert levy_concentration(table, 0).exact_value == table.atom()


def test_levy_monte_carlo():
    def sampler(gen, trials):
        return gen.choice([-1.0, 1.0], size=(trials, 2)).sum(axis=1)

    est = levy_concentration(sampler, 0, trials=4000, seed=3)
    assert est.method == "MonteCarlo"
    assert abs(est.value - 0.5) < 0.03
    assert est.se == pytest.approx(math.sqrt(est.value * (1 - est.value) / 4000))
    with pytest.raises(PreconditionError):
        levy_concentration(sampler, 0)


def test_small_ball_ratio_preconditions():
    a = np.array([0.6, 0.8])
    with pytest.raises(PreconditionError):
        lcd_small_ball_ratio(a * 2, 1.0, 10.0, 0.1, 1.0)
    with pytest.raises(PreconditionError):
        lcd_small_ball_ratio(a, 0.01, 10.0, 0.1, 1.0)
    result = lcd_small_ball_ratio(a, 0.2, 10.0, 0.1, 1.0)
    assert result.reference == pytest.approx(0.2 / 0.1 + math.exp(-0.5))
    assert result.ratio == pytest.approx(result.levy / result.reference)
    slice_result = lcd_small_ball_ratio(a, 0.2, 10.0, 0.1, 1.0, on_slice=True)
    assert slice_result.on_slice
    assert slice_result.reference == pytest.approx(0.2 * math.sqrt(2) / 0.1 + math.sqrt(2) * math.exp(-0.5))


def test_row_value_counts_enumeration_and_recurrence_agree():
    base = sample_base(8, 2)
    v = [3, -1, 0, 2, 2, 5, -4, 1]
    for i in range(8):
        enumerated = row_value_counts(v, base, i)
        recurred = row_value_counts(v, base, i, budget=1)
        assert enumerated == recurred
        assert sum(enumerated.values()) == 2 ** 4


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31), st.lists(st.integers(-4, 4), min_size=6, max_size=6), st.integers(0, 5))
def test_two_step_row_atom_bound(seed, v, i):
    lhs, rhs = two_step_row_atom(v, sample_base(6, seed), i)
    assert lhs <= rhs
    assert lhs == rhs
