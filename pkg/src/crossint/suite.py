"""The acceptance runner: one named check per acceptance criterion.

Every check scans a finite grid of instances, capped by ``n_max`` and
``t_max``, and returns integer statistics only, so two runs with the same
caps produce identical output.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Iterator

from . import lemmas
from .bound import (
    ProblemInstance,
    beta_consecutive,
    borg_feghali_bound,
    complement_pair_witness,
    extremal_configs,
    f_raw,
    f_scan,
    frankl_tokushige_bound,
    hilton_bound,
    id_space_raw,
    index_dominance,
    reference_bounds,
    sfq_corollary_bound,
    star_branch,
    theorem_bound,
    verify_witness,
)
from .combinatorics import binomial, enumerate_lex, lex_unrank, precedes, to_mask
from .linitial import (
    id_for_size,
    linitial_size,
    max_cross_id,
    normalize_id,
    partner,
    size_from_id,
    size_from_id_direct,
)
from .oracle import (
    MICRO_ENUM_LIMIT,
    cap_table,
    enumerated_cap_table,
    linitial_search,
    micro_search_t2,
    pairwise_threshold_feasible,
)
from .report import EXPECTED_FAIL, FAIL, PASS


@dataclass
class CriterionResult:
    number: int
    name: str
    status: str
    detail: str
    stats: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)


def instances(n_max: int, ts: tuple[int, ...], k_max: int | None = None,
              n_min: int = 2) -> Iterator[ProblemInstance]:
    """Every valid instance with n <= n_max, t in ts and k_1 <= k_max, in a fixed order."""
    for t in ts:
        for n in range(n_min, n_max + 1):
            top = n if k_max is None else min(n, k_max)
            for ks in combinations_with_replacement(range(top, 0, -1), t):
                if n >= ks[0] + ks[1]:
                    yield ProblemInstance(n, ks)


def _ts(t_max: int) -> tuple[int, ...]:
    return tuple(t for t in (2, 3) if t <= t_max)


def _result(number, name, failures, stats, detail="") -> CriterionResult:
    status = PASS if not failures else FAIL
    if not detail:
        detail = "zero failures" if not failures else f"{len(failures)} failures, first: {failures[0]}"
    return CriterionResult(number, name, status, detail, stats, failures[:20])


# ---------------------------------------------------------------------------
# 1. oracle = bound

def check_main_theorem(n_max: int = 11, t_max: int = 3) -> CriterionResult:
    failures = []
    count = witnesses = 0
    for inst in instances(min(n_max, 11), _ts(t_max)):
        count += 1
        res = linitial_search(inst)
        tb = theorem_bound(inst)
        if res.optimum != tb.value:
            failures.append(f"{inst}: oracle {res.optimum} != bound {tb.value}")
            continue
        n = inst.n
        for sizes, labels in zip(res.witnesses, res.matched_cases):
            witnesses += 1
            if not pairwise_threshold_feasible(sizes, inst):
                failures.append(f"{inst}: witness {sizes} infeasible")
            if not labels:
                failures.append(f"{inst}: witness {sizes} matches no equality case")
            for i in range(1, inst.t + 1):
                ki, m = inst.k(i), inst.m(i)
                cap = sum(binomial(n - s, ki - 1) for s in range(1, m + 1))
                if sizes[i - 1] > cap:
                    failures.append(f"{inst}: |A_{i}| = {sizes[i - 1]} above cap {cap}")
                if sizes[i - 1] >= binomial(n - 1, ki - 1):
                    f = f_raw(inst, i, lex_unrank(sizes[i - 1], n, ki))
                    if sum(sizes) > f:
                        failures.append(f"{inst}: total {sum(sizes)} above f_{i} = {f}")
        if inst.degenerate() and len(res.witnesses) != binomial(n, inst.k(1)) - 1:
            failures.append(f"{inst}: {len(res.witnesses)} witnesses, expected "
                            f"{binomial(n, inst.k(1)) - 1} valid |A_1| values")
    spots = {(4, (2, 2)): 6, (9, (4, 3, 2)): 99}
    for (n, ks), want in spots.items():
        if n <= n_max and len(ks) <= t_max:
            got = linitial_search(ProblemInstance(n, ks)).optimum
            if got != want:
                failures.append(f"spot n={n} ks={ks}: {got} != {want}")
    return _result(1, "main-theorem", failures, {"instances": count, "witnesses": witnesses})


# ---------------------------------------------------------------------------
# 2. size formulas

def check_size_formulas(n_max: int = 10, k_max: int = 5) -> CriterionResult:
    failures = []
    ids = 0
    for n in range(1, min(n_max, 10) + 1):
        for k in range(1, min(k_max, n) + 1):
            members = list(enumerate_lex(n, k))
            for s in range(1, len(members) + 1):
                fid = id_for_size(s, n, k)
                ids += 1
                a, b = size_from_id(fid), size_from_id_direct(fid)
                c = sum(1 for f in members if precedes(f, fid.elements))
                if not a == b == c == s:
                    failures.append(f"n={n} k={k} id={fid}: {a}, {b}, {c}, expected {s}")
    return _result(2, "size-formulas", failures, {"ids": ids})


# ---------------------------------------------------------------------------
# 3. maximal cross-intersecting counterpart

def check_maximality(n_max: int = 10, raw_n_max: int = 7) -> CriterionResult:
    failures = []
    tables = raw = 0
    for n in range(2, min(n_max, 10) + 1):
        for a in range(1, n):
            for b in range(1, n - a + 1):
                tables += 1
                fast, slow = cap_table(n, a, b), enumerated_cap_table(n, a, b)
                if fast != slow:
                    bad = next(s for s in range(len(fast)) if fast[s] != slow[s])
                    failures.append(f"n={n} a={a} b={b} size {bad}: partner {fast[bad]} vs enumeration {slow[bad]}")
                    continue
                for s in range(1, len(fast)):
                    p = id_for_size(s, n, a).elements
                    if (fast[s] == 0) != (p[0] > b):
                        failures.append(f"n={n} a={a} b={b} P={p}: emptiness criterion")
                if n > raw_n_max:
                    continue
                # every raw P with |P| <= a, canonical or not
                for size in range(1, a + 1):
                    for p in enumerate_lex(n, size):
                        raw += 1
                        fam = linitial_size(p, n, a)
                        direct = linitial_size(partner(p), n, b)
                        via_id = max_cross_id(normalize_id(p, n, a), b).size
                        if not direct == via_id == slow[fam]:
                            failures.append(f"n={n} a={a} b={b} raw P={p}: {direct}, {via_id} vs {slow[fam]}")
                        if (direct == 0) != (p[0] > b):
                            failures.append(f"n={n} a={a} b={b} raw P={p}: emptiness criterion")
    return _result(3, "maximality", failures, {"tables": tables, "raw_sets": raw})


# ---------------------------------------------------------------------------
# 4. endpoint and index dominance

def check_endpoint_dominance(n_max: int = 11, t_max: int = 3) -> CriterionResult:
    failures = []
    scans = 0
    count = 0
    for inst in instances(min(n_max, 11), _ts(t_max)):
        count += 1
        for v in index_dominance(inst):
            failures.append(f"{inst}: f_{v[2]}({{{v[1]}}}) exceeds f_1 by {v[3]}")
        if inst.degenerate():
            continue
        for i in range(1, inst.t + 1):
            scans += 1
            rep = f_scan(inst, i)
            if not rep.endpoint_ok:
                failures.append(f"{inst} i={i}: max {rep.max_value} at {[str(a) for a in rep.argmax]}")
            if not rep.bound_ok:
                failures.append(f"{inst} i={i}: scan max {rep.max_value} vs bound")
    return _result(4, "endpoint-dominance", failures, {"instances": count, "scans": scans})


# ---------------------------------------------------------------------------
# 5. lemma suite

def lemma_grid(n_max: int = 10, t_max: int = 3) -> Iterator[ProblemInstance]:
    for inst in instances(min(n_max, 10), _ts(t_max), k_max=5):
        if not inst.degenerate():
            yield inst


def check_lemmas(n_max: int = 10, t_max: int = 3, signature_n_max: int = 9) -> CriterionResult:
    conv = {"triples_checked": 0, "vacuous": 0, "passed": 0, "failed": 0, "ties": 0,
            "failed_strict_premise": 0, "failed_weak": 0}
    stats = {"instances": 0, "ridge_rows": 0, "chain_steps": 0, "beta_pairs": 0,
             "runs": 0, "signature_pairs": 0}
    other_failures: list[str] = []
    conv_examples: list[str] = []
    for inst in lemma_grid(n_max, t_max):
        stats["instances"] += 1
        for i in range(1, inst.t + 1):
            for j in range(inst.k(i)):
                rep = lemmas.verify_local_convexity(inst, i, j, max_examples=1)
                for key, v in rep.counts().items():
                    conv[key] += v
                if rep.counterexamples and len(conv_examples) < 20:
                    ce = rep.counterexamples[0]
                    conv_examples.append(f"{inst} i={i} j={j} c={ce['c']} F={ce['F']} G={ce['G']} "
                                         f"H={ce['H']} f={ce['f']}")
                for c, run in lemmas.c_sequential_runs(inst, i, j):
                    stats["runs"] += 1
                    if not lemmas.down_up_profile(run, inst, i, j).ok:
                        other_failures.append(f"{inst} i={i} j={j}: {c}-run {run[0]}.. not down-up")
            for rc in lemmas.verify_ridges(inst, i):
                stats["ridge_rows"] += len(rc.rows)
                if rc.status == FAIL:
                    other_failures.append(f"{inst} i={i}: ridge {rc.name} {rc.rows}")
            for st in lemmas.reduction_chain(inst, i):
                stats["chain_steps"] += 1
                if st.status == FAIL:
                    other_failures.append(f"{inst} i={i}: {st.name} {st.detail}")
            raw = id_space_raw(inst, i)
            for f, g in zip(raw, raw[1:]):
                stats["beta_pairs"] += 1
                direct = sum(linitial_size(partner(f), inst.n, inst.k(j)) - linitial_size(partner(g), inst.n, inst.k(j))
                             for j in inst.others(i))
                if direct != beta_consecutive(inst, i, g[-1]):
                    other_failures.append(f"{inst} i={i}: beta({f},{g}) = {direct}, closed form differs")
            if inst.n <= signature_n_max:
                checked, bad = lemmas.increment_signature_check(inst, i)
                stats["signature_pairs"] += checked
                if bad:
                    other_failures.append(f"{inst} i={i}: {bad} signature mismatches")
    stats.update({f"convexity_{k}": v for k, v in conv.items()})
    failures = [f"convexity: {e}" for e in conv_examples] if conv["failed"] else []
    failures += other_failures
    if not failures:
        return _result(5, "lemma-suite", failures, stats)
    detail = (f"local convexity fails on {conv['failed']} of {conv['triples_checked']} triples "
              f"({conv['ties']} are flat ties); strict-premise failures {conv['failed_strict_premise']}, "
              f"weak-conclusion failures {conv['failed_weak']}; other lemma failures {len(other_failures)}")
    return CriterionResult(5, "lemma-suite", FAIL, detail, stats, failures[:20])


# ---------------------------------------------------------------------------
# 6. Kruskal-Katona reduction

def check_kk_reduction(n_max: int = 7, k_max: int = 3) -> CriterionResult:
    failures = []
    count = 0
    for n in range(2, min(n_max, 7) + 1):
        for k1 in range(1, min(k_max, 3) + 1):
            for k2 in range(1, k1 + 1):
                if n < k1 + k2:
                    continue
                count += 1
                inst = ProblemInstance(n, (k1, k2))
                micro = micro_search_t2(n, k1, k2).optimum
                lin = linitial_search(inst).optimum
                bound = theorem_bound(inst).value
                if not micro == lin == bound:
                    failures.append(f"{inst}: micro {micro}, l-initial {lin}, bound {bound}")
    return _result(6, "kk-reduction", failures, {"instances": count})


# ---------------------------------------------------------------------------
# 7. equality cases

def complement_pairs_only(n: int, k1: int, k2: int) -> bool:
    """For n = k1 + k2: a k1-set and a k2-set are disjoint exactly when they are complements."""
    full = to_mask(range(1, n + 1))
    ys = {to_mask(y) for y in enumerate_lex(n, k2)}
    for x in enumerate_lex(n, k1):
        xm = to_mask(x)
        disjoint = {ym for ym in ys if not xm & ym}
        if disjoint != {full ^ xm}:
            return False
    return True


def check_equality_cases(n_max: int = 11, t_max: int = 3, regime_n_max: int = 8) -> CriterionResult:
    failures = []
    configs = regime = 0
    for inst in instances(min(n_max, 11), _ts(t_max)):
        for cfg in extremal_configs(inst):
            configs += 1
            if not cfg.verified:
                failures.append(f"{inst}: {cfg.case_label} witness {cfg.sizes}: {cfg.detail}")
    for inst in instances(min(n_max, regime_n_max), (2,)):
        if not inst.degenerate():
            continue
        regime += 1
        n, k1, k2 = inst.n, inst.k(1), inst.k(2)
        bound = theorem_bound(inst).value
        if not complement_pairs_only(n, k1, k2):
            failures.append(f"{inst}: disjoint pairs are not just complements")
        # every A_1 of every size: the complement closure has C(n,k2) - |A_1| sets
        if bound != binomial(n, k2):
            failures.append(f"{inst}: bound {bound} != C(n,k2)")
        small = min(binomial(n, k1), binomial(n, k2))
        if small <= MICRO_ENUM_LIMIT:
            res = micro_search_t2(n, k1, k2, method="enumerate")
            if res.optimum != bound or res.optimal_choices != 2 ** small - 2:
                failures.append(f"{inst}: {res.optimal_choices} optimal families of the smaller side, "
                                f"expected {2 ** small - 2}")
        # the L-initial complement pair at every legal |A_1| verifies by enumeration
        for size in range(1, binomial(n, k1)):
            ok, _method, detail = verify_witness(inst, complement_pair_witness(inst, size))
            if not ok:
                failures.append(f"{inst}: complement pair with |A_1| = {size}: {detail}")
    return _result(7, "equality-cases", failures, {"configs": configs, "regime_instances": regime})


# ---------------------------------------------------------------------------
# 8. reference bounds

def check_reference_bounds(n_max: int = 11, t_max: int = 3) -> CriterionResult:
    failures = []
    count = 0
    for inst in instances(min(n_max, 11), _ts(t_max)):
        count += 1
        n, ks, t = inst.n, inst.ks, inst.t
        value = theorem_bound(inst).value
        if t == 2:
            ft = frankl_tokushige_bound(n, ks[0], ks[1])
            if value != ft:
                failures.append(f"{inst}: bound {value} != two-family value {ft}")
            if star_branch(inst) > ft:
                failures.append(f"{inst}: star sum exceeds the two-family value")
            bf = borg_feghali_bound(n, ks[1], ks[0])
            if value > bf:
                failures.append(f"{inst}: bound {value} above the non-uniform bound {bf}")
        if len(set(ks)) == 1:
            k = ks[0]
            sfq = sfq_corollary_bound(n, k, t)
            if value != sfq:
                failures.append(f"{inst}: bound {value} != equal-k corollary {sfq}")
            if value > hilton_bound(n, k, t):
                failures.append(f"{inst}: bound {value} above the possibly-empty bound")
        for rb in reference_bounds(inst):
            if rb.applicable and rb.name in ("hilton-milner", "shi-frankl-qian(c=1,r=l)") and rb.value != value:
                failures.append(f"{inst}: {rb.name} {rb.value} != {value}")
    return _result(8, "reference-bounds", failures, {"instances": count})


CRITERIA: dict[int, tuple[str, Callable[..., CriterionResult]]] = {
    1: ("main-theorem", lambda n, t: check_main_theorem(n, t)),
    2: ("size-formulas", lambda n, t: check_size_formulas(min(n, 10))),
    3: ("maximality", lambda n, t: check_maximality(min(n, 10))),
    4: ("endpoint-dominance", lambda n, t: check_endpoint_dominance(n, t)),
    5: ("lemma-suite", lambda n, t: check_lemmas(min(n, 10), t)),
    6: ("kk-reduction", lambda n, t: check_kk_reduction(min(n, 7))),
    7: ("equality-cases", lambda n, t: check_equality_cases(n, t)),
    8: ("reference-bounds", lambda n, t: check_reference_bounds(n, t)),
}


def run_suite(n_max: int = 11, t_max: int = 3, only: list[int] | None = None,
              expected_failures: frozenset[int] = frozenset()) -> list[CriterionResult]:
    """Run the selected criteria in order; criteria in ``expected_failures`` that fail are marked xfail."""
    out = []
    for number, (_name, fn) in CRITERIA.items():
        if only and number not in only:
            continue
        res = fn(n_max, t_max)
        if res.status == FAIL and number in expected_failures:
            res.status = EXPECTED_FAIL
        out.append(res)
    return out
