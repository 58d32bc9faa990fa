"""Exact binomials and the lexicographic engine for k-subsets of [n].

Sets are plain tuples of strictly increasing integers drawn from the
1-indexed ground set {1, ..., n}.  Ranks are 1-indexed: the first set
{1, ..., k} has rank 1, so a rank doubles as the size of the initial
segment ending at that set.
"""
from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable, Iterator, Sequence

KSet = tuple[int, ...]


def binomial(a: int, b: int) -> int:
    """C(a, b) with the truncation convention: 0 whenever b < 0, a < 0 or b > a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def check_kset(elements: Iterable[int], n: int | None = None) -> KSet:
    """Validate and return ``elements`` as a KSet tuple.

    Raises ValueError unless the elements are strictly increasing and, when
    ``n`` is given, lie in [1, n].
    """
    s = tuple(int(x) for x in elements)
    for p in range(len(s) - 1):
        if s[p] >= s[p + 1]:
            raise ValueError(f"set {s} is not strictly increasing")
    if s and s[0] < 1:
        raise ValueError(f"set {s} has an element below 1")
    if n is not None and s and s[-1] > n:
        raise ValueError(f"set {s} has an element above n={n}")
    return s


def parse_kset(text: str) -> KSet:
    """Parse the wire form ``"2,3,4"``; the empty string is the empty set."""
    text = text.strip()
    if not text:
        return ()
    return check_kset(int(tok) for tok in text.split(","))


def format_kset(s: Sequence[int]) -> str:
    return ",".join(str(x) for x in s)


def to_mask(s: Iterable[int]) -> int:
    """Bitmask with bit x set for every element x (bit 0 unused)."""
    m = 0
    for x in s:
        m |= 1 << x
    return m


def precedes(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff a is lex-before-or-equal to b.

    a precedes b when a is a superset of b or min(a - b) < min(b - a).  This
    is reflexive and works for sets of different sizes.
    """
    sa, sb = set(a), set(b)
    if sa >= sb:
        return True
    only_a = sa - sb
    if not only_a:
        return False
    return min(only_a) < min(sb - sa)


def lex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """-1 if a strictly precedes b, 0 if equal, 1 if a strictly follows b."""
    if set(a) == set(b):
        return 0
    return -1 if precedes(a, b) else 1


def lex_rank(r: Sequence[int], n: int, k: int) -> int:
    """1-indexed position of the k-set ``r`` among all k-subsets of [n]."""
    r = check_kset(r, n)
    if len(r) != k:
        raise ValueError(f"set {r} does not have {k} elements")
    rank = 1
    prev = 0
    for pos, x in enumerate(r, start=1):
        # sets agreeing on the first pos-1 entries and smaller at pos
        for y in range(prev + 1, x):
            rank += binomial(n - y, k - pos)
        prev = x
    return rank


def lex_unrank(rank: int, n: int, k: int) -> KSet:
    """Inverse of :func:`lex_rank`."""
    total = binomial(n, k)
    if not 1 <= rank <= total:
        raise ValueError(f"rank {rank} outside [1, {total}] for n={n}, k={k}")
    out = []
    rest = rank - 1
    x = 1
    for pos in range(1, k + 1):
        while True:
            block = binomial(n - x, k - pos)
            if rest < block:
                break
            rest -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def enumerate_lex(n: int, k: int) -> Iterator[KSet]:
    """All k-subsets of [n] in lex order (itertools emits exactly this order)."""
    if not 0 <= k <= n:
        return iter(())
    return combinations(range(1, n + 1), k)
