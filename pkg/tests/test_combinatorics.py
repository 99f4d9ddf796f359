from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from oracles import stirling_row
from weylcone import (
    ConeType, build_stirling_table, chamber_count, parity_sums, stirling_table,
)
from weylcone.combinatorics import chamber_count_value


def test_small_rows():
    a = build_stirling_table("A", 4)
    assert a.row(3) == (0, 2, 3, 1)
    assert a(4, 2) == 11
    b = build_stirling_table("B", 3)
    assert b.row(2) == (3, 4, 1)
    assert b(3, 2) == 9


def test_rows_match_expanded_products():
    for v in "AB":
        t = stirling_table(v, 40)
        for n in range(41):
            assert list(t.row(n)) == stirling_row(n, v)


def test_row_sums_are_total_mass():
    for v in ConeType:
        t = stirling_table(v, 60)
        for n in range(61):
            assert sum(t.row(n)) == v.total_mass(n)


def test_out_of_range_entries():
    t = build_stirling_table("A", 5)
    assert t(5, 7) == 0
    assert t(5, -1) == 0
    with pytest.raises(IndexError):
        t(6, 1)


def test_negative_max_n_rejected():
    with pytest.raises(ValueError):
        build_stirling_table("A", -1)


@pytest.mark.parametrize("n,d,v,expected", [
    (3, 2, "A", 6), (4, 2, "A", 12), (3, 3, "A", 6), (2, 2, "B", 8), (3, 2, "B", 18),
    (5, 1, "A", 2), (4, 1, "B", 2),
])
def test_chamber_counts(n, d, v, expected):
    assert chamber_count(stirling_table(v, n), n, d).value == expected


def test_chamber_count_full_dimension_is_group_order():
    # d = n: every ordering is realized, so the count is the group order
    for n in range(2, 12):
        assert chamber_count(stirling_table("A", n), n, n).value == factorial(n)
        assert chamber_count(stirling_table("B", n), n, n).value == factorial(n) * 2**n


def test_chamber_count_rejects_bad_dimensions():
    t = stirling_table("A", 10)
    for d in (0, 11):
        with pytest.raises(ValueError):
            chamber_count(t, 10, d)
    with pytest.raises(ValueError):
        chamber_count(build_stirling_table("A", 5), 6, 2)
    assert chamber_count_value(t, 5, 0) == 0


def test_parity_small_cases():
    assert parity_sums(stirling_table("A", 3), 3) == (3, 3)
    assert parity_sums(stirling_table("B", 2), 2) == (4, 4)
    with pytest.raises(ValueError):
        parity_sums(stirling_table("A", 3), 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 250), st.sampled_from(list(ConeType)))
def test_parity_identity(n, v):
    even, odd = parity_sums(stirling_table(v, n), n)
    assert even == odd == v.total_mass(n) // 2


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 200), st.data())
def test_chamber_count_recursion_in_d(n, data):
    # consecutive counts telescope into single Stirling entries
    v = data.draw(st.sampled_from(list(ConeType)))
    d = data.draw(st.integers(2, n)) if n >= 2 else None
    if d is None:
        return
    t = stirling_table(v, n)
    diff = chamber_count_value(t, n, d) + chamber_count_value(t, n, d - 1)
    assert diff == 2 * sum(t.row(n)[n - d + 1:])


def test_sigma_values():
    assert ConeType.A.sigma == 1
    assert ConeType.B.sigma == Fraction(1, 2)
    assert ConeType.parse("b") is ConeType.B
    with pytest.raises(ValueError):
        ConeType.parse("C")
