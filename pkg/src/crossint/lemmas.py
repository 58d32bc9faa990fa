"""Exhaustive checks of the local convexity properties of the f objective.

Everything here is a finite scan over the ID space of one distinguished
family i.  A set S in the projected space R(j) stands for S + [n-j+1, n].
All checks refuse degenerate instances (t = 2 and n = k_1 + k_2), where
the properties are not claimed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .bound import ProblemInstance, beta_consecutive, f_raw, id_space_raw, z_count
from .combinatorics import KSet, binomial, lex_rank


class HypothesisViolated(ValueError):
    """Raised for degenerate instances."""


def _require_nondegenerate(inst: ProblemInstance) -> None:
    if inst.degenerate():
        raise HypothesisViolated(
            f"{inst}: t = 2 and n = k_1 + k_2; the convexity lemmas assume n > k_1 + k_2 or t > 2")


def pad(s: Sequence[int], depth: int, n: int) -> KSet:
    return tuple(s) + tuple(range(n - depth + 1, n + 1))


@dataclass(frozen=True)
class ProjectedSpace:
    j: int
    ids: list[KSet]


def projected_space(inst: ProblemInstance, i: int, j: int) -> ProjectedSpace:
    """R(j): members of the ID space containing [n-j+1, n], with that run removed."""
    n, ki = inst.n, inst.k(i)
    if not 0 <= j <= ki - 1:
        raise ValueError(f"depth {j} outside [0, {ki - 1}]")
    top = set(range(n - j + 1, n + 1))
    out = []
    for r in id_space_raw(inst, i):
        if top <= set(r):
            out.append(tuple(x for x in r if x not in top))
    return ProjectedSpace(j, out)


def is_c_run(r: Sequence[int], c: int) -> bool:
    return 1 <= c <= len(r) and all(r[p] + 1 == r[p + 1] for p in range(len(r) - c, len(r) - 1))


def c_successor(r: Sequence[int], c: int, n: int) -> KSet | None:
    """Shift the final run of length c one step right; None if it already ends at n."""
    r = tuple(r)
    if not 1 <= c <= len(r):
        raise ValueError(f"c={c} outside [1, {len(r)}]")
    if not is_c_run(r, c):
        raise ValueError(f"the last {c} elements of {r} are not consecutive")
    if r[-1] >= n:
        return None
    return r[:-c] + tuple(x + 1 for x in r[-c:])


@dataclass(frozen=True)
class CSeqTriple:
    c: int
    F: KSet
    G: KSet
    H: KSet


def c_sequential_triples(inst: ProblemInstance, i: int, j: int):
    space = projected_space(inst, i, j)
    members = set(space.ids)
    limit = inst.n - j
    for f in space.ids:
        for c in range(1, len(f) + 1):
            if not is_c_run(f, c):
                continue
            g = c_successor(f, c, limit)
            if g is None or g not in members:
                continue
            h = c_successor(g, c, limit)
            if h is None or h not in members:
                continue
            yield CSeqTriple(c, f, g, h)


@dataclass
class ConvexityReport:
    i: int
    j: int
    triples_checked: int = 0
    vacuous: int = 0
    passed: int = 0
    failed: int = 0
    ties: int = 0  # failures with f(F) = f(G) = f(H)
    failed_strict_premise: int = 0  # f(G) > f(F) but f(H) <= f(G)
    failed_weak: int = 0  # f(G) >= f(F) but f(H) < f(G)
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def counts(self) -> dict:
        return {"triples_checked": self.triples_checked, "vacuous": self.vacuous,
                "passed": self.passed, "failed": self.failed, "ties": self.ties,
                "failed_strict_premise": self.failed_strict_premise,
                "failed_weak": self.failed_weak}


def verify_local_convexity(inst: ProblemInstance, i: int, j: int = 0,
                           max_examples: int = 20) -> ConvexityReport:
    """For every c-sequential F, G, H in R(j): f(G) >= f(F) must force f(H) > f(G).

    Two weaker readings are counted alongside: a strict premise
    (f(G) > f(F) forces f(H) > f(G)) and a weak conclusion (f(G) >= f(F)
    forces f(H) >= f(G)).  Flat triples with f(F) = f(G) = f(H) break the
    literal statement but neither weaker one.
    """
    _require_nondegenerate(inst)
    n = inst.n
    rep = ConvexityReport(i, j)
    for tri in c_sequential_triples(inst, i, j):
        ff, fg, fh = (f_raw(inst, i, pad(s, j, n)) for s in (tri.F, tri.G, tri.H))
        premise = fg >= ff
        conclusion = fh > fg
        rep.triples_checked += 1
        if not premise:
            rep.vacuous += 1
            rep.passed += 1
        elif conclusion:
            rep.passed += 1
        else:
            rep.failed += 1
            if ff == fg == fh:
                rep.ties += 1
            if len(rep.counterexamples) < max_examples:
                rep.counterexamples.append({"c": tri.c, "F": tri.F, "G": tri.G, "H": tri.H,
                                            "f": (ff, fg, fh)})
        if fg > ff and fh <= fg:
            rep.failed_strict_premise += 1
        if fg >= ff and fh < fg:
            rep.failed_weak += 1
    return rep


def f_prefix(inst: ProblemInstance, i: int, s: Sequence[int]) -> int:
    """f at the short set s, padded up to k_i elements with the top of [n]."""
    return f_raw(inst, i, pad(s, inst.k(i) - len(s), inst.n))


def _in_id_space(inst: ProblemInstance, i: int, r: KSet) -> bool:
    n, ki = inst.n, inst.k(i)
    base = binomial(n - 1, ki - 1)
    return base <= lex_rank(r, n, ki) <= base + z_count(inst, i)


@dataclass
class RidgeCheck:
    name: str
    status: str  # "pass", "fail" or "n/a"
    rows: list[dict] = field(default_factory=list)
    note: str = ""


def _ridge(inst: ProblemInstance, i: int, name: str, chain: list[KSet], lo: int) -> RidgeCheck:
    # chain[p] is the prefix of length p + 1; rows test positions lo.. of the chain
    n, ki = inst.n, inst.k(i)
    for s in chain:
        if not _in_id_space(inst, i, pad(s, ki - len(s), n)):
            return RidgeCheck(name, "n/a", note=f"{s} lies outside the ID space")
    vals = [f_prefix(inst, i, s) for s in chain]
    check = RidgeCheck(name, "pass")
    for p in range(lo, len(chain)):
        premise = vals[p] <= vals[p - 1]
        conclusion = vals[p - 1] < vals[p - 2]
        ok = conclusion or not premise
        check.rows.append({"set": chain[p], "premise": premise, "conclusion": conclusion, "ok": ok})
        if not ok:
            check.status = "fail"
    if not check.rows:
        check.status, check.note = "n/a", "empty index range"
    return check


def verify_ridges(inst: ProblemInstance, i: int) -> list[RidgeCheck]:
    """The prefix chains {2..j} and {m..j}: a non-increasing step forces a strict drop one step earlier.

    Steps whose earlier set would be empty are not checked.
    """
    _require_nondegenerate(inst)
    ki, m = inst.k(i), inst.m(i)
    out = []
    if ki < 2:
        out.append(RidgeCheck("prefix-2", "n/a", note="needs k_i >= 2"))
    elif m < 2:
        out.append(RidgeCheck("prefix-2", "n/a", note="ID space is a single point (m = 1)"))
    else:
        chain = [tuple(range(2, 2 + length)) for length in range(1, ki + 1)]
        out.append(_ridge(inst, i, "prefix-2", chain, 2))
    if m < 2:
        out.append(RidgeCheck("prefix-m", "n/a", note="ID space is a single point (m = 1)"))
    else:
        chain = [tuple(range(m, m + length)) for length in range(1, ki + 1)]
        out.append(_ridge(inst, i, "prefix-m", chain, 2))
    return out


@dataclass
class DownUpProfile:
    ids: list[KSet]
    f_values: list[int]
    down_degree: int | None
    violation: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None


def down_up_degree(values: Sequence[int]) -> tuple[int | None, tuple[int, int] | None]:
    """(g, None) if values drop strictly g times then never drop; else (None, first bad pair)."""
    g = 0
    while g + 1 < len(values) and values[g + 1] < values[g]:
        g += 1
    for p in range(g + 1, len(values) - 1):
        if values[p + 1] < values[p]:
            return None, (p, p + 1)
    return g, None


def down_up_profile(ids: Sequence[Sequence[int]], inst: ProblemInstance, i: int,
                    depth: int = 0) -> DownUpProfile:
    n, ki = inst.n, inst.k(i)
    ids = [tuple(s) for s in ids]
    ranks = [lex_rank(pad(s, depth, n), n, ki) for s in ids]
    if any(a >= b for a, b in zip(ranks, ranks[1:])):
        raise ValueError("ids are not in strictly increasing lex order")
    vals = [f_raw(inst, i, pad(s, depth, n)) for s in ids]
    g, bad = down_up_degree(vals)
    return DownUpProfile(ids, vals, g, bad)


def c_sequential_runs(inst: ProblemInstance, i: int, j: int = 0) -> list[tuple[int, list[KSet]]]:
    """Maximal c-sequential runs (length >= 2) inside R(j)."""
    space = projected_space(inst, i, j)
    members = set(space.ids)
    limit = inst.n - j
    runs = []
    for f in space.ids:
        for c in range(1, len(f) + 1):
            if not is_c_run(f, c):
                continue
            # start only at run heads: the c-predecessor must be absent
            head, tail = f[:-c], f[-c:]
            prev = head + tuple(x - 1 for x in tail)
            if tail[0] - 1 > (head[-1] if head else 0) and prev in members:
                continue
            run = [f]
            nxt = c_successor(f, c, limit)
            while nxt is not None and nxt in members:
                run.append(nxt)
                nxt = c_successor(nxt, c, limit)
            if len(run) >= 2:
                runs.append((c, run))
    return runs


@dataclass
class ChainStep:
    name: str
    status: str  # "pass", "fail" or "n/a"
    detail: str = ""


def reduction_chain(inst: ProblemInstance, i: int) -> list[ChainStep]:
    """Recompute each max-equality of the reduction from the whole ID space to its two endpoints."""
    _require_nondegenerate(inst)
    n, ki, m = inst.n, inst.k(i), inst.m(i)
    f = lambda s: f_prefix(inst, i, s)  # noqa: E731
    pre2 = lambda length: tuple(range(2, 2 + length))  # noqa: E731
    prem = lambda length: tuple(range(m, m + length))  # noqa: E731
    space_max = [max(f_raw(inst, i, pad(s, j, n)) for s in projected_space(inst, i, j).ids)
                 for j in range(ki)]
    f1, fm = f((1,)), f((m,))
    steps = []

    def step(name, ok, detail=""):
        steps.append(ChainStep(name, "pass" if ok else "fail", detail))

    def na(name, why):
        steps.append(ChainStep(name, "n/a", why))

    wide = m >= 2
    if wide and ki >= 2:
        want = max(f(pre2(ki)), f(prem(ki)), space_max[1])
        step("frr", space_max[0] == want, f"{space_max[0]} vs {want}")
        for j in range(1, ki - 1):
            want = max(f(pre2(ki - j)), f(prem(ki - j)), space_max[j + 1])
            step(f"fr[{j}]", space_max[j] == want, f"{space_max[j]} vs {want}")
    else:
        na("frr", "needs m >= 2 and k_i >= 2")
    step("fr-last", space_max[ki - 1] == max(f1, fm), f"{space_max[ki - 1]} vs {max(f1, fm)}")

    if wide and ki >= 2:
        lhs = max(f(pre2(length)) for length in range(2, ki + 1))
        mid = max(f(pre2(ki)), f(pre2(1)))
        rhs = max(f(pre2(ki)), f1, fm)
        step("dd", lhs <= mid <= rhs, f"{lhs} <= {mid} <= {rhs}")
    else:
        na("dd", "needs m >= 2 and k_i >= 2")

    if wide:
        lhs = max(f(prem(length)) for length in range(1, ki + 1))
        rhs = max(f(prem(ki)), fm)
        step("d", lhs == rhs, f"{lhs} vs {rhs}")

        before = pad((m - 1,), ki - 1, n)
        after = prem(ki)
        consecutive = lex_rank(after, n, ki) == lex_rank(before, n, ki) + 1
        b_closed = beta_consecutive(inst, i, m + ki - 1)
        b_direct = (sum(_other_sizes(inst, i, before)) - sum(_other_sizes(inst, i, after)))
        f_before = f((m - 1,))
        ok = (consecutive and b_closed == b_direct and b_closed >= 1
              and f(after) <= f_before <= max(f1, fm))
        step("eq35", ok, f"beta={b_direct} closed={b_closed} f={f(after)}<={f_before}<={max(f1, fm)}")

        step("eq33", space_max[0] == max(f(pre2(ki)), f1, fm),
             f"{space_max[0]} vs {max(f(pre2(ki)), f1, fm)}")

        r0, r1 = pad((1,), ki - 1, n), pre2(ki)
        a01 = lex_rank(r1, n, ki) - lex_rank(r0, n, ki)
        b01 = sum(_other_sizes(inst, i, r0)) - sum(_other_sizes(inst, i, r1))
        b01_closed = sum(binomial(n - (ki + 1), inst.k(j) - 1) for j in inst.others(i))
        step("first-step", a01 == 1 and b01 == b01_closed >= 1 and f1 >= f(r1),
             f"alpha={a01} beta={b01} closed={b01_closed}")
    else:
        for name in ("d", "eq35", "eq33", "first-step"):
            na(name, "needs m >= 2")
    step("ccc", space_max[0] == max(f1, fm), f"{space_max[0]} vs {max(f1, fm)}")
    return steps


def _other_sizes(inst: ProblemInstance, i: int, r: KSet) -> list[int]:
    from .linitial import linitial_size, partner
    t = partner(r)
    return [linitial_size(t, inst.n, inst.k(j)) for j in inst.others(i)]


def increment_signature_check(inst: ProblemInstance, i: int) -> tuple[int, int]:
    """alpha and beta of a c-sequential pair depend only on (c, max F, max G).

    Returns (pairs checked, mismatches) over every depth j.
    """
    n = inst.n
    checked = mismatches = 0
    for j in range(inst.k(i)):
        space = projected_space(inst, i, j)
        members = set(space.ids)
        seen: dict[tuple[int, int, int], tuple[int, int]] = {}
        for f in space.ids:
            for c in range(1, len(f) + 1):
                if not is_c_run(f, c):
                    continue
                g = c_successor(f, c, n - j)
                if g is None or g not in members:
                    continue
                pf, pg = pad(f, j, n), pad(g, j, n)
                a = lex_rank(pg, n, inst.k(i)) - lex_rank(pf, n, inst.k(i))
                b = sum(_other_sizes(inst, i, pf)) - sum(_other_sizes(inst, i, pg))
                key = (c, f[-1], g[-1])
                checked += 1
                if key in seen and seen[key] != (a, b):
                    mismatches += 1
                seen.setdefault(key, (a, b))
    return checked, mismatches
