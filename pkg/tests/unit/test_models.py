import itertools
import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsvlab.core.domain import Base, BitChoices, ExponentProfile, ModelTag
from lsvlab.errors import DimensionMismatchError, NotAMatchingError, PreconditionError
from lsvlab.models import (
    assemble_from_base,
    audit_base,
    cross_edges,
    difference_vector,
    is_perfect_matching,
    least_prime_at_least,
    level_set_stats,
    matching_of,
    sample_base,
    sample_bits,
    sample_gaussian,
    sample_matrix,
    sample_q_via_base,
    sample_rademacher,
    sample_row_regular,
    union_components,
)
from lsvlab.models.audit import count_q2_pairs


def test_rademacher_entries_and_determinism():
    a = sample_rademacher(7, 11)
    assert set(np.unique(a.entries)) <= {-1, 1}
    assert np.array_equal(a.entries, sample_rademacher(7, 11).entries)
    assert not np.array_equal(a.entries, sample_rademacher(7, 12).entries)


@pytest.mark.parametrize("n", [2, 4, 10, 30])
def test_row_regular_row_sums(n):
    for seed in range(5):
        q = sample_row_regular(n, seed)
        assert np.all(q.entries.sum(axis=1) == n // 2)
        assert q.model_tag == ModelTag.ROW_REGULAR


def test_two_step_row_sums():
    for seed in range(5):
        q = sample_q_via_base(8, seed)
        assert np.all(q.entries.sum(axis=1) == 4)
        assert q.model_tag == ModelTag.BASE_ASSEMBLED


def test_odd_n_rejected():
    with pytest.raises(PreconditionError):
        sample_row_regular(5, 0)
    with pytest.raises(PreconditionError):
        sample_base(3, 0)
    with pytest.raises(PreconditionError):
        sample_matrix(ModelTag.EXTERNAL, 4, 0)


def test_row_streams_do_not_depend_on_n():
    small = sample_gaussian(3, 5)
    large = sample_gaussian(5, 5)
    # row i draws from the i-th child stream; only its length changes
    assert np.allclose(small[0], large[0][:3])


def test_assemble_from_base_formula():
    base = Base(perms=[[0, 1, 2, 3], [3, 1, 0, 2], [2, 3, 1, 0], [1, 2, 3, 0]])
    xi = BitChoices(bits=[[1, 0], [0, 0], [1, 1], [0, 1]])
    q = assemble_from_base(base, xi)
    assert q.rows() == [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1, 1, 0],
        [0, 0, 1, 1],
    ]


def test_assemble_rejects_size_mismatch():
    with pytest.raises(DimensionMismatchError):
        assemble_from_base(sample_base(4, 0), sample_bits(6, 0))


def test_two_step_row_law_is_uniform():
    # one row of the two-step model, enumerated over every permutation and bit choice
    n = 4
    counts = Counter()
    for perm in itertools.permutations(range(n)):
        for xi in itertools.product((0, 1), repeat=n // 2):
            q = assemble_from_base(Base(perms=[perm] * n), BitChoices(bits=[xi] * n))
            counts[tuple(q.rows()[0])] += 1
    assert len(counts) == math.comb(n, n // 2)
    assert set(counts.values()) == {math.factorial(n) * 2 ** (n // 2) // math.comb(n, n // 2)}


def test_matching_helpers():
    assert is_perfect_matching([(0, 3), (1, 2)], 4)
    assert not is_perfect_matching([(0, 1), (1, 2)], 4)
    assert matching_of([2, 0, 1, 3]) == [(2, 0), (1, 3)]
    with pytest.raises(NotAMatchingError):
        union_components([(0, 1), (0, 2)], [(0, 1), (2, 3)])


def test_union_components():
    m1 = [(0, 1), (2, 3), (4, 5)]
    assert union_components(m1, m1) == 3
    assert union_components(m1, [(1, 2), (3, 4), (5, 0)]) == 1
    assert union_components(m1, [(0, 1), (2, 4), (3, 5)]) == 2


def test_cross_edges():
    m = [(0, 1), (2, 3), (4, 5)]
    assert cross_edges(m, {0, 2}, {1, 3}) == 2
    assert cross_edges(m, {0}, {4}) == 0
    with pytest.raises(PreconditionError):
        cross_edges(m, {0, 1}, {1})


def test_difference_vector():
    base = Base(perms=[[1, 0, 3, 2], [0, 1, 2, 3], [3, 2, 1, 0], [2, 0, 1, 3]])
    assert difference_vector([5, 1, -2, 0], base, 0) == [-4, 2]
    assert difference_vector([5, 1, -2, 0], base, 3) == [-7, 1]
    with pytest.raises(DimensionMismatchError):
        difference_vector([1, 2], base, 0)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=0, max_value=2**31),
    st.lists(st.integers(-50, 50), min_size=6, max_size=6),
    st.lists(st.integers(-50, 50), min_size=6, max_size=6),
    st.integers(-5, 5),
)
def test_difference_vector_is_linear(seed, u, v, c):
    base = sample_base(6, seed)
    combo = [c * x + y for x, y in zip(u, v)]
    for i in range(6):
        expected = [c * x + y for x, y in zip(difference_vector(u, base, i), difference_vector(v, base, i))]
        assert difference_vector(combo, base, i) == expected


def test_level_set_stats():
    assert level_set_stats([0, 0, 3, 3, 3, -1]) == (3, 4)
    assert level_set_stats([]) == (0, 0)


def test_least_prime_at_least():
    assert least_prime_at_least(2500) == 2503
    assert least_prime_at_least(101) == 101
    assert least_prime_at_least(1.5) == 3
    assert least_prime_at_least(8.2) == 11


def test_count_q2_pairs():
    assert count_q2_pairs(4, 1, 2) == 4 * 3 + 4 * 3 + 6 * 2 + 6 * 1
    assert count_q2_pairs(16, 10, 8) == 0


def test_audit_small_base_is_vacuous_for_q2():
    audit = audit_base(sample_base(16, 3), ExponentProfile.desk())
    assert audit.q1_passed
    assert audit.q2_method == "vacuous"
    assert audit.passed


def test_audit_detects_repeated_rows():
    # every row uses the same matching, so each pair of rows forms n/2 components
    n = 16
    perm = list(range(n))
    audit = audit_base(Base(perms=[perm] * n), ExponentProfile.paper())
    assert audit.q1_max_components == n // 2
    assert not audit.q1_passed
    assert not audit.passed


def test_audit_exact_q2_on_small_range():
    profile = ExponentProfile(q2_set_min=0.5)
    audit = audit_base(sample_base(8, 1), profile)
    assert audit.q2_method == "exact"
    assert audit.q2_pairs_checked == count_q2_pairs(8, 3, 4)
