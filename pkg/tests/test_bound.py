import pytest

from crossint.bound import (CASE_FULL_STARS, CASE_STAR_T, InvalidInstance, ProblemInstance, alpha,
                            beta, beta_consecutive, case_labels, extremal_configs, f_eval, f_scan,
                            id_space, id_space_raw, index_dominance, reference_bounds, theorem_bound, z_count)
from crossint.combinatorics import binomial
from crossint.linitial import normalize_id


def grid(n_max, t_max=3):
    for n in range(2, n_max + 1):
        for t in range(2, t_max + 1):
            yield from _ks(n, t)


def _ks(n, t, prefix=()):
    if len(prefix) == t:
        if n >= prefix[0] + prefix[1]:
            yield ProblemInstance(n, prefix)
        return
    top = prefix[-1] if prefix else n
    for k in range(1, top + 1):
        yield from _ks(n, t, prefix + (k,))


def test_instance_validation():
    for n, ks in [(9, (3, 4)), (6, (4, 3)), (5, (2,)), (5, (2, 0))]:
        with pytest.raises(InvalidInstance):
            ProblemInstance(n, ks)
    inst = ProblemInstance(9, (4, 3, 2))
    assert (inst.t, inst.m(1), inst.l(1), inst.m(3), inst.l(3)) == (3, 2, 3, 3, 4)


def test_theorem_bound_examples():
    b = theorem_bound(ProblemInstance(9, (4, 3, 2)))
    assert (b.value, b.branch_values, b.branches) == (99, (99, 92), ("star-T",))
    b = theorem_bound(ProblemInstance(4, (2, 2)))
    assert b.value == 6 and b.branches == ("star-T", "full-stars")


def test_degenerate_branches_coincide():
    for k1 in range(1, 8):
        for k2 in range(1, k1 + 1):
            b = theorem_bound(ProblemInstance(k1 + k2, (k1, k2)))
            assert b.branch_values == (binomial(k1 + k2, k1),) * 2


def test_id_space_examples():
    inst = ProblemInstance(6, (3, 2))
    assert z_count(inst, 1) == 6 and len(id_space(inst, 1)) == 7
    inst = ProblemInstance(8, (4, 3, 1))
    assert [f.elements for f in id_space(inst, 1)] == [(1,)]


def test_f_eval_examples():
    inst = ProblemInstance(9, (4, 3, 2))
    assert f_eval(inst, 1, (1,)).f_value == 92
    assert f_eval(inst, 1, (2,)).f_value == 99
    assert f_eval(inst, 1, (1, 7, 8, 9)).f_value == 92
    assert f_eval(inst, 1, (2,)).per_family_sizes == (91, 7, 1)


def test_f_endpoints_match_closed_forms():
    for inst in grid(10):
        n, ks = inst.n, inst.ks
        assert f_eval(inst, 1, (1,)).f_value == sum(binomial(n - 1, k - 1) for k in ks)
        kt = ks[-1]
        fm = binomial(n, ks[0]) - binomial(n - kt, ks[0]) + sum(binomial(n - kt, k - kt) for k in ks[1:])
        assert f_eval(inst, 1, (inst.m(1),)).f_value == fm


def test_beta_example():
    inst = ProblemInstance(10, (4, 3))
    f, g = normalize_id((2, 3, 4), 10, 3), normalize_id((2, 3, 5), 10, 3)
    assert beta(inst, 2, f, g) == beta_consecutive(inst, 2, 5) == binomial(5, 2) == 10


def test_increment_identity_and_telescoping():
    for inst in grid(9):
        for i in range(1, inst.t + 1):
            ids, raw = id_space(inst, i), id_space_raw(inst, i)
            total = 0
            for f, g, top in zip(ids, ids[1:], raw[1:]):
                a, b = alpha(inst, i, f, g), beta(inst, i, f, g)
                assert a == 1
                assert f_eval(inst, i, g).f_value - f_eval(inst, i, f).f_value == a - b
                assert b == beta_consecutive(inst, i, top[-1])
                total += b
            if len(ids) > 1:
                assert beta(inst, i, ids[0], ids[-1]) == total


def test_alpha_rejects_reversed_order():
    inst = ProblemInstance(9, (4, 3, 2))
    ids = id_space(inst, 1)
    with pytest.raises(ValueError):
        alpha(inst, 1, ids[3], ids[1])


@pytest.mark.parametrize("n, ks, value, at", [
    (9, (4, 3, 2), 99, (2,)),
    (20, (3, 3, 3), 3 * binomial(19, 2), (1,)),
])
def test_f_scan_examples(n, ks, value, at):
    rep = f_scan(ProblemInstance(n, ks), 1)
    assert rep.max_value == value
    assert [f.elements for f in rep.argmax] == [at]
    assert rep.endpoint_ok and rep.bound_ok


def test_f_scan_workers_agree():
    inst = ProblemInstance(12, (5, 4, 3))
    a = f_scan(inst, 1, curve=True)
    b = f_scan(inst, 1, curve=True, workers=2, chunk=50)
    assert (a.max_value, a.argmax, a.curve) == (b.max_value, b.argmax, b.curve)


def test_endpoint_and_index_dominance_on_grid():
    for inst in grid(10):
        if inst.degenerate():
            continue
        for i in range(1, inst.t + 1):
            rep = f_scan(inst, i)
            assert rep.endpoint_ok and rep.bound_ok
        assert index_dominance(inst) == []


def test_reference_bounds_small():
    table = {r.name: r for r in reference_bounds(ProblemInstance(4, (2, 2)))}
    assert table["hilton-milner"].value == 6
    assert table["frankl-tokushige"].value == 6
    table = {r.name: r for r in reference_bounds(ProblemInstance(9, (4, 3, 2)))}
    assert not table["frankl-tokushige"].applicable and table["frankl-tokushige"].value is None


def test_extremal_configs_examples():
    cfgs = extremal_configs(ProblemInstance(9, (4, 3, 2)))
    assert [(c.case_label, c.sizes, c.verified) for c in cfgs] == [(CASE_STAR_T, (91, 7, 1), True)]
    cfgs = extremal_configs(ProblemInstance(20, (3, 3, 3)))
    assert [(c.case_label, c.total) for c in cfgs] == [(CASE_FULL_STARS, 3 * binomial(19, 2))]
    assert cfgs[0].verified


def test_branch_tie_keeps_both_shapes():
    inst = ProblemInstance(5, (2, 2))
    assert case_labels(inst, (7, 1)) == [CASE_STAR_T]
    assert case_labels(inst, (4, 4)) == [CASE_FULL_STARS]
    labels = sorted(c.case_label for c in extremal_configs(inst))
    assert labels == sorted([CASE_STAR_T, CASE_FULL_STARS])
    assert case_labels(inst, (5, 2)) == []
