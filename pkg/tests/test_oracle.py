from itertools import product

import pytest

from crossint.bound import ProblemInstance, theorem_bound
from crossint.combinatorics import binomial
from crossint.linitial import LInitialFamily, are_cross_intersecting, max_cross_id
from crossint.oracle import (BudgetExceeded, cap_table, enumerated_cap_table, linitial_search,
                             micro_search_literal, micro_search_t2, pairwise_threshold_feasible)


def naive_optimum(inst):
    """Every size vector, every pair checked member by member."""
    n, ks = inst.n, inst.ks
    best = 0
    for sizes in product(*(range(1, binomial(n, k) + 1) for k in ks)):
        fams = [LInitialFamily.of_size(s, n, k) for s, k in zip(sizes, ks)]
        if all(are_cross_intersecting(fams[p], fams[q], enumerate=True)
               for p in range(len(ks)) for q in range(p + 1, len(ks))):
            best = max(best, sum(sizes))
    return best


@pytest.mark.parametrize("n, ks, value", [
    (4, (2, 2), 6),
    (9, (4, 3, 2), 99),
    (20, (3, 3, 3), 3 * binomial(19, 2)),
])
def test_linitial_search_spot_values(n, ks, value):
    res = linitial_search(ProblemInstance(n, ks))
    assert res.optimum == value == theorem_bound(ProblemInstance(n, ks)).value


def test_linitial_search_witness():
    res = linitial_search(ProblemInstance(9, (4, 3, 2)))
    assert res.witnesses == [(91, 7, 1)]
    assert res.matched_cases == [["star-T (i)"]]


@pytest.mark.parametrize("n, ks", [(4, (2, 2)), (5, (2, 2)), (5, (3, 2)), (5, (2, 2, 1)),
                                   (6, (3, 2, 1)), (6, (2, 2, 2)), (4, (1, 1, 1))])
def test_linitial_search_matches_naive_enumeration(n, ks):
    inst = ProblemInstance(n, ks)
    assert linitial_search(inst).optimum == naive_optimum(inst)


def test_budget_refusal_names_the_requirement():
    with pytest.raises(BudgetExceeded) as exc:
        linitial_search(ProblemInstance(11, (5, 5, 1)), budget=10)
    assert exc.value.required == 213444
    assert "213444" in str(exc.value)


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("CROSSINT_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        linitial_search(ProblemInstance(9, (4, 3, 2)))


def test_cap_table_matches_enumeration():
    for n in range(2, 9):
        for a in range(1, n):
            for b in range(1, n - a + 1):
                assert cap_table(n, a, b) == enumerated_cap_table(n, a, b)


def test_threshold_examples():
    inst = ProblemInstance(9, (4, 3, 2))
    stars = [binomial(8, k - 1) for k in inst.ks]
    assert pairwise_threshold_feasible(stars, inst)
    assert not pairwise_threshold_feasible([binomial(9, 4), 1, 1], inst)
    assert pairwise_threshold_feasible([91, 7, 1], inst)
    with pytest.raises(ValueError):
        pairwise_threshold_feasible([0, 1, 1], inst)


def test_threshold_directions_agree():
    for n in range(2, 9):
        for a in range(1, n):
            for b in range(1, min(a, n - a) + 1):
                for r in range(1, binomial(n, a) + 1):
                    fa = LInitialFamily.of_size(r, n, a)
                    for s in range(1, binomial(n, b) + 1):
                        fb = LInitialFamily.of_size(s, n, b)
                        one = s <= max_cross_id(fa.fid, b).size
                        other = r <= max_cross_id(fb.fid, a).size
                        assert one == other


@pytest.mark.parametrize("n, k1, k2, value", [(4, 2, 2, 6), (5, 2, 2, 8), (6, 3, 3, 20), (6, 3, 2, 17)])
def test_micro_search_values(n, k1, k2, value):
    assert micro_search_t2(n, k1, k2).optimum == value
    assert micro_search_t2(n, k1, k2, method="konig").optimum == value
    assert linitial_search(ProblemInstance(n, (k1, k2))).optimum == value


def test_micro_complement_closed_pairs_all_attain():
    res = micro_search_t2(4, 2, 2)
    # every non-empty proper family of 2-sets, closed under complements on the other side
    assert res.optimal_choices == 2 ** 6 - 2


@pytest.mark.parametrize("n, k1, k2", [(4, 2, 2), (4, 3, 1), (3, 2, 1), (3, 1, 1), (5, 4, 1)])
def test_micro_search_matches_literal_pairs(n, k1, k2):
    if binomial(n, k1) + binomial(n, k2) > 16:
        pytest.skip("literal enumeration too large")
    assert micro_search_t2(n, k1, k2).optimum == micro_search_literal(n, k1, k2)


def test_micro_search_guards():
    with pytest.raises(ValueError):
        micro_search_t2(7, 3, 3, method="enumerate")
    with pytest.raises(ValueError):
        micro_search_t2(5, 3, 3)
    with pytest.raises(ValueError):
        micro_search_t2(6, 3, 3, method="bogus")
