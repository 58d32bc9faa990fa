import pytest

from crossint.combinatorics import binomial, enumerate_lex, lex_rank, lex_unrank, precedes
from crossint.linitial import (FamilyID, LInitialFamily, are_cross_intersecting, complement_family,
                               id_for_size, linitial_size, max_cross_id, normalize_id, partner,
                               size_from_id, size_from_id_direct)


def brute_size(a, n, k):
    return sum(1 for s in enumerate_lex(n, k) if precedes(s, a))


def test_partner_examples():
    assert partner((1,)) == (1,)
    assert partner((1, 3)) == (2, 3)
    assert partner((2, 3, 4, 5)) == (1, 5)
    with pytest.raises(ValueError):
        partner(())


def test_partner_is_involution():
    for n in range(1, 13):
        for k in range(1, n + 1):
            for s in enumerate_lex(n, k) if binomial(n, k) < 2000 else []:
                b = partner(s)
                assert partner(b) == s
                assert set(s) & set(b) == {s[-1]}
                assert set(s) | set(b) == set(range(1, s[-1] + 1))


@pytest.mark.parametrize("a, n, k, size", [
    ((1,), 10, 4, 84),
    ((2, 3, 4, 5), 10, 4, 85),
    ((1, 3), 6, 3, 7),
    ((2,), 6, 2, 9),
])
def test_size_examples(a, n, k, size):
    fid = normalize_id(a, n, k)
    assert size_from_id(fid) == size_from_id_direct(fid) == brute_size(a, n, k) == size


def test_singleton_size_is_star_sum():
    for n in range(3, 11):
        for k in range(1, n):
            for m in range(1, n - k + 2):
                expect = sum(binomial(n - s, k - 1) for s in range(1, m + 1))
                assert linitial_size((m,), n, k) == expect


def test_normalize_examples():
    n, k = 10, 4
    assert normalize_id((1, 8, 9, 10), n, k).elements == (1,)
    assert normalize_id((2, 3, 4, 5), n, k).elements == (2, 3, 4, 5)
    # over-long set: cut at the largest missing element below a_k
    a = (1, 2, 4, 5, 6, 7)
    fid = normalize_id(a, n, k)
    assert fid.elements == normalize_id((1, 2, 3), n, k).elements
    assert size_from_id(fid) == brute_size(a, n, k)


def test_normalize_is_canonical_and_idempotent():
    for n in range(2, 9):
        for k in range(1, n + 1):
            seen = {}
            for rank in range(1, binomial(n, k) + 1):
                fid = id_for_size(rank, n, k)
                assert normalize_id(fid.elements, n, k) == fid
                assert size_from_id(fid) == rank
                assert fid not in seen
                seen[fid] = rank


def test_normalize_empty_family():
    # a 3-set inside [4] is a proper subset, any other misses an element of [4] first
    fid = normalize_id((1, 2, 3, 4), 6, 3)
    assert fid.is_empty
    assert size_from_id(fid) == 0


def test_formula_agreement_on_all_prefixes():
    for n in range(1, 11):
        for k in range(1, min(n, 5) + 1):
            for count, s in enumerate(enumerate_lex(n, k), start=1):
                fid = normalize_id(s, n, k)
                assert size_from_id(fid) == size_from_id_direct(fid) == count


def test_max_cross_id_examples():
    n = 9
    star = max_cross_id(normalize_id((1,), n, 4), 3)
    assert star.size == binomial(n - 1, 2)
    fm = max_cross_id(normalize_id((2,), n, 4), 3)
    assert fm.size == binomial(n - 2, 1)
    assert max_cross_id(normalize_id((4,), n, 4), 3).size == 0
    with pytest.raises(ValueError):
        max_cross_id(normalize_id((1,), n, 5), 5)


def test_max_cross_id_is_maximal():
    for n in range(2, 9):
        for a in range(1, n):
            for b in range(1, n - a + 1):
                for r in range(1, binomial(n, a) + 1):
                    fa = LInitialFamily.of_size(r, n, a)
                    g = max_cross_id(fa.fid, b)
                    assert are_cross_intersecting(fa, g, enumerate=True)
                    assert (g.size == 0) == (fa.fid.elements[0] > b)
                    if g.size < binomial(n, b):
                        bigger = LInitialFamily.of_size(g.size + 1, n, b)
                        assert not are_cross_intersecting(fa, bigger, enumerate=True)


def test_cross_intersecting_examples():
    n = 6
    s1 = LInitialFamily.of(normalize_id((1,), n, 3))
    s2 = LInitialFamily.of(normalize_id((1,), n, 2))
    assert are_cross_intersecting(s1, s2)
    full = LInitialFamily.of_size(binomial(n, 3), n, 3)
    assert not are_cross_intersecting(full, s2)
    f = LInitialFamily.of(normalize_id((1, 3), n, 3))
    g = LInitialFamily.of(normalize_id((2, 3), n, 3))
    assert are_cross_intersecting(f, g) and are_cross_intersecting(f, g, enumerate=True)


def test_cross_intersecting_symmetry():
    n = 7
    for a in (2, 3):
        for b in (2, 3, 4):
            if a + b > n:
                continue
            for r in range(1, binomial(n, a) + 1, 3):
                for s in range(1, binomial(n, b) + 1, 2):
                    fa, fb = LInitialFamily.of_size(r, n, a), LInitialFamily.of_size(s, n, b)
                    assert are_cross_intersecting(fa, fb) == are_cross_intersecting(fb, fa)


def test_complement_family():
    n, k = 5, 2
    assert complement_family(iter([(1, 2)]), n) == [(3, 4, 5)]
    star = LInitialFamily.of(normalize_id((1,), n, k))
    comp = complement_family(star.members(), n)
    assert comp == [s for s in enumerate_lex(n, 3) if 1 not in s]
    assert complement_family(enumerate_lex(n, k), n) == list(enumerate_lex(n, 3))


def test_family_members_and_last():
    fam = LInitialFamily.of(FamilyID(6, 3, (1, 3)))
    assert fam.size == 7
    assert list(fam.members())[-1] == fam.last_member() == lex_unrank(7, 6, 3)
    assert lex_rank(fam.last_member(), 6, 3) == 7
