"""Brute-force ground truth.

``linitial_search`` maximizes the total size over all tuples of non-empty
L-initial families.  ``micro_search_t2`` drops the L-initial restriction
entirely for two families on a tiny ground set, which makes it an
independent check that restricting to L-initial families loses nothing.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

import networkx as nx
import numpy as np

from .bound import ProblemInstance, case_labels
from .combinatorics import binomial, enumerate_lex, to_mask
from .linitial import FamilyID, id_for_size, max_cross_id

DEFAULT_BUDGET = 10**8
MICRO_ENUM_LIMIT = 20  # 2**20 subsets of the smaller side


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"search needs {required} states, budget is {budget}")
        self.required = required
        self.budget = budget


def default_budget() -> int:
    return int(os.environ.get("CROSSINT_BUDGET", DEFAULT_BUDGET))


@dataclass
class OracleResult:
    optimum: int
    witnesses: list[tuple[int, ...]]
    ids: list[tuple[FamilyID, ...]] = field(default_factory=list)
    matched_cases: list[list[str]] = field(default_factory=list)
    complete: bool = True
    method: str = ""
    states: int = 0
    optimal_choices: int | None = None  # micro oracle: number of optimal smaller-side families


def cap_table(n: int, a: int, b: int) -> list[int]:
    """cap[s] = size of the largest b-uniform L-initial family cross-intersecting
    the first s a-sets, for s = 0..C(n, a), via the partner of the ID.

    When a + b > n every a-set meets every b-set, so nothing is ever excluded.
    """
    if a + b > n:
        return [binomial(n, b)] * (binomial(n, a) + 1)
    out = [binomial(n, b)]
    for s in range(1, binomial(n, a) + 1):
        out.append(max_cross_id(id_for_size(s, n, a), b).size)
    return out


def enumerated_cap_table(n: int, a: int, b: int) -> list[int]:
    """Same table as :func:`cap_table`, computed by testing every pair of sets."""
    amasks = [to_mask(s) for s in enumerate_lex(n, a)]
    never = len(amasks) + 1
    first_disjoint = []
    for s in enumerate_lex(n, b):
        m = to_mask(s)
        first_disjoint.append(next((p + 1 for p, am in enumerate(amasks) if not am & m), never))
    prefix_min = []
    cur = never
    for v in first_disjoint:
        cur = min(cur, v)
        prefix_min.append(cur)
    # the first sb b-sets meet the first sa a-sets iff prefix_min[sb-1] > sa
    return [sum(1 for v in prefix_min if v > sa) for sa in range(len(amasks) + 1)]


def pairwise_threshold_feasible(sizes: Sequence[int], inst: ProblemInstance) -> bool:
    """Whether the L-initial families of the given sizes are pairwise cross-intersecting.

    Both directions of every pair are tested.
    """
    n = inst.n
    if len(sizes) != inst.t:
        raise ValueError("one size per family expected")
    for j, s in enumerate(sizes, start=1):
        if not 1 <= s <= binomial(n, inst.k(j)):
            raise ValueError(f"size {s} of family {j} out of range")
    for p in range(1, inst.t + 1):
        fid = id_for_size(sizes[p - 1], n, inst.k(p))
        for q in range(1, inst.t + 1):
            if q != p and sizes[q - 1] > max_cross_id(fid, inst.k(q)).size:
                return False
    return True


def search_space(inst: ProblemInstance) -> int:
    # the last family is never enumerated: its best size follows from the others
    return prod(binomial(inst.n, k) for k in inst.ks[:-1])


def linitial_search(inst: ProblemInstance, budget: int | None = None) -> OracleResult:
    """Exact maximum of sum |A_j| over non-empty pairwise cross-intersecting
    L-initial families, with every maximizing size vector."""
    budget = default_budget() if budget is None else budget
    need = search_space(inst)
    if need > budget:
        raise BudgetExceeded(need, budget)
    n, ks, t = inst.n, inst.ks, inst.t
    tables: dict[tuple[int, int], list[int]] = {}
    for p in range(t):
        for q in range(t):
            if p != q and (ks[p], ks[q]) not in tables:
                tables[ks[p], ks[q]] = cap_table(n, ks[p], ks[q])
    cap = [[tables.get((ks[p], ks[q])) for q in range(t)] for p in range(t)]

    best = -1
    wits: list[tuple[int, ...]] = []
    states = 0
    chosen = [0] * t

    def reverse_ok(j: int, s: int) -> bool:
        row = cap[j]
        return all(chosen[p] <= row[p][s] for p in range(j))

    def go(j: int, partial: int, limits: list[int]) -> None:
        nonlocal best, wits, states
        if partial + sum(limits[j:]) < best:
            return
        if j == t - 1:
            s = limits[j]
            while s >= 1 and not reverse_ok(j, s):
                s -= 1
            states += 1
            if s < 1:
                return
            total = partial + s
            chosen[j] = s
            if total > best:
                best, wits = total, [tuple(chosen)]
            elif total == best:
                wits.append(tuple(chosen))
            return
        for s in range(limits[j], 0, -1):
            states += 1
            if partial + s + sum(limits[j + 1:]) < best:
                break
            if not reverse_ok(j, s):
                continue
            row = cap[j]
            nxt = limits[:j + 1] + [min(limits[q], row[q][s]) for q in range(j + 1, t)]
            if min(nxt[j + 1:]) < 1:
                continue
            chosen[j] = s
            go(j + 1, partial + s, nxt)
        chosen[j] = 0

    go(0, 0, [binomial(n, k) for k in ks])
    wits.sort(reverse=True)
    ids = [tuple(id_for_size(s, n, k) for s, k in zip(w, ks)) for w in wits]
    cases = [case_labels(inst, w) for w in wits]
    return OracleResult(best, wits, ids, cases, True, "l-initial branch and bound", states)


# ---------------------------------------------------------------------------
# unrestricted two-family oracle

def _subset_zeta(counts: np.ndarray, m: int) -> np.ndarray:
    # g[T] = sum of counts[S] over S subset of T
    g = counts.copy()
    for bit in range(m):
        view = g.reshape(-1, 2, 1 << bit)
        view[:, 1, :] += view[:, 0, :]
    return g


def _micro_enumerate(n: int, k1: int, k2: int) -> OracleResult:
    side = [list(enumerate_lex(n, k1)), list(enumerate_lex(n, k2))]
    small = 0 if len(side[0]) <= len(side[1]) else 1
    xs, ys = side[small], side[1 - small]
    m = len(xs)
    xmasks = [to_mask(x) for x in xs]
    counts = np.zeros(1 << m, dtype=np.int64)
    for y in ys:
        ym = to_mask(y)
        disjoint = 0
        for p, xm in enumerate(xmasks):
            if not xm & ym:
                disjoint |= 1 << p
        counts[disjoint] += 1
    # For a chosen X-family S the best partner is its closure: every y with
    # no disjoint member in S.  Adding a y can never break feasibility, so
    # some optimum is always closed.
    fits = _subset_zeta(counts, m)[::-1]  # fits[S] = |closure(S)|
    pop = _subset_zeta(_singletons(m), m)  # popcount
    value = pop + fits
    valid = fits >= 1
    valid[0] = False
    value = np.where(valid, value, -1)
    opt = int(value.max())
    where = np.flatnonzero(value == opt)
    wits = sorted({(int(pop[s]), int(fits[s])) if small == 0 else (int(fits[s]), int(pop[s]))
                   for s in where}, reverse=True)
    return OracleResult(opt, wits, complete=True, method="subset enumeration",
                        states=1 << m, optimal_choices=len(where))


def _singletons(m: int) -> np.ndarray:
    arr = np.zeros(1 << m, dtype=np.int64)
    for bit in range(m):
        arr[1 << bit] = 1
    return arr


def _micro_konig(n: int, k1: int, k2: int) -> OracleResult:
    xs = list(enumerate_lex(n, k1))
    ys = list(enumerate_lex(n, k2))
    g = nx.Graph()
    g.add_nodes_from(("x", p) for p in range(len(xs)))
    g.add_nodes_from(("y", q) for q in range(len(ys)))
    ymasks = [to_mask(y) for y in ys]
    for p, x in enumerate(xs):
        xm = to_mask(x)
        for q, ym in enumerate(ymasks):
            if not xm & ym:
                g.add_edge(("x", p), ("y", q))
    # A feasible pair is an independent set of the disjointness graph meeting
    # both sides.  The symmetric group acts transitively on the k1-sets, so
    # one forced X-vertex suffices, and its stabilizer is transitive on the
    # k2-sets with a given overlap, so one forced Y-vertex per overlap size.
    a = ("x", 0)
    seen = set()
    best, best_set = -1, None
    for q, y in enumerate(ys):
        b = ("y", q)
        overlap = len(set(xs[0]) & set(y))
        if overlap == 0 or overlap in seen:
            continue
        seen.add(overlap)
        drop = {a, b} | set(g[a]) | set(g[b])
        h = g.subgraph(v for v in g if v not in drop)
        top = [v for v in h if v[0] == "x"]
        matching = nx.bipartite.hopcroft_karp_matching(h, top_nodes=top)
        cover = nx.bipartite.to_vertex_cover(h, matching, top_nodes=top)
        indep = set(h) - cover
        total = 2 + len(indep)
        if total > best:
            best, best_set = total, indep | {a, b}
    n1 = sum(1 for v in best_set if v[0] == "x")
    return OracleResult(best, [(n1, best - n1)], complete=False, method="bipartite independent set",
                        states=len(ys))


def micro_search_t2(n: int, k1: int, k2: int, method: str = "auto") -> OracleResult:
    """Maximum |A_1| + |A_2| over all non-empty cross-intersecting A_1, A_2."""
    if not (k1 >= k2 >= 1 and n >= k1 + k2):
        raise ValueError(f"need k1 >= k2 >= 1 and n >= k1 + k2, got n={n}, ({k1},{k2})")
    small = min(binomial(n, k1), binomial(n, k2))
    if method == "auto":
        method = "enumerate" if small <= MICRO_ENUM_LIMIT else "konig"
    if method == "enumerate":
        if small > MICRO_ENUM_LIMIT:
            raise ValueError(f"2^{small} subsets exceeds the enumeration guard 2^{MICRO_ENUM_LIMIT}")
        return _micro_enumerate(n, k1, k2)
    if method == "konig":
        return _micro_konig(n, k1, k2)
    raise ValueError(f"unknown method {method!r}")


def micro_search_literal(n: int, k1: int, k2: int) -> int:
    """Maximum over every pair of non-empty families, no closure shortcut (tiny n only)."""
    xs = [to_mask(s) for s in enumerate_lex(n, k1)]
    ys = [to_mask(s) for s in enumerate_lex(n, k2)]
    if len(xs) + len(ys) > 16:
        raise ValueError("literal pair enumeration limited to 2^16 pairs")
    best = -1
    for s1 in range(1, 1 << len(xs)):
        a = [xs[p] for p in range(len(xs)) if s1 >> p & 1]
        for s2 in range(1, 1 << len(ys)):
            if all(am & ys[q] for q in range(len(ys)) if s2 >> q & 1 for am in a):
                best = max(best, bin(s1).count("1") + bin(s2).count("1"))
    return best
