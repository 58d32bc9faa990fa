from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from crossint.combinatorics import (binomial, check_kset, enumerate_lex, format_kset, lex_compare,
                                    lex_rank, lex_unrank, parse_kset, precedes)


@st.composite
def nk(draw, n_max=14):
    n = draw(st.integers(1, n_max))
    return n, draw(st.integers(0, n))


def test_binomial_truncation():
    assert binomial(5, -1) == 0
    assert binomial(3, 5) == 0
    assert binomial(-2, 1) == 0
    assert binomial(0, 0) == 1
    assert binomial(60, 30) == 118264581564861424


def test_pascal_rule():
    for a in range(1, 61):
        for b in range(-1, a + 2):
            assert binomial(a, b) == binomial(a - 1, b) + binomial(a - 1, b - 1)


def test_rank_examples():
    assert lex_rank((1, 2), 4, 2) == 1
    assert lex_rank((2, 3), 4, 2) == 4
    assert lex_rank((3, 4), 4, 2) == 6
    assert lex_unrank(4, 4, 2) == (2, 3)


@given(nk())
def test_rank_unrank_roundtrip(nk_):
    n, k = nk_
    total = binomial(n, k)
    for r in {1, total, (total + 1) // 2}:
        assert lex_rank(lex_unrank(r, n, k), n, k) == r


def test_enumeration_matches_ranks():
    for n in range(0, 9):
        for k in range(0, n + 1):
            sets = list(enumerate_lex(n, k))
            assert len(sets) == binomial(n, k)
            assert [lex_rank(s, n, k) for s in sets] == list(range(1, len(sets) + 1))


def test_precedes_agrees_with_enumeration_order():
    n, k = 6, 3
    sets = list(enumerate_lex(n, k))
    for p, a in enumerate(sets):
        for q, b in enumerate(sets):
            assert precedes(a, b) == (p <= q)
            assert lex_compare(a, b) == (p > q) - (p < q)


def test_precedes_on_different_sizes():
    assert precedes((1, 2, 3), (2, 3))  # superset comes first
    assert not precedes((2, 3), (1, 2, 3))
    assert precedes((1, 4), (2, 3))
    assert precedes((2,), (2,))


@given(st.sets(st.integers(1, 12), max_size=12), st.sets(st.integers(1, 12), max_size=12))
def test_precedes_is_total(a, b):
    a, b = sorted(a), sorted(b)
    assert precedes(a, b) or precedes(b, a)


def test_enumerate_empty_set():
    assert list(enumerate_lex(4, 0)) == [()]
    assert list(enumerate_lex(3, 4)) == []


def test_unrank_out_of_range():
    with pytest.raises(ValueError):
        lex_unrank(0, 4, 2)
    with pytest.raises(ValueError):
        lex_unrank(7, 4, 2)


def test_rank_rejects_wrong_size():
    with pytest.raises(ValueError):
        lex_rank((1, 2, 3), 5, 2)


def test_kset_validation_and_wire_form():
    assert parse_kset("2,3,4") == (2, 3, 4)
    assert parse_kset("") == ()
    assert format_kset((2, 3, 4)) == "2,3,4"
    with pytest.raises(ValueError):
        check_kset((3, 2))
    with pytest.raises(ValueError):
        check_kset((0, 1))
    with pytest.raises(ValueError):
        check_kset((1, 9), 8)


def test_lex_order_on_all_subsets_matches_combinations():
    assert list(enumerate_lex(5, 2)) == list(combinations(range(1, 6), 2))
