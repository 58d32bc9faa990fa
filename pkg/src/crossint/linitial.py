"""L-initial families: canonical IDs, partners, sizes and maximal counterparts.

An L-initial k-uniform family is an initial segment of the lex order on
k-subsets of [n].  It is identified by a set R: the family of all k-sets
preceding R.  Many sets R give the same family; :func:`normalize_id` picks
one canonical representative, and the empty family gets the reserved ID ().
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Iterator, Sequence

from .combinatorics import (
    KSet,
    binomial,
    check_kset,
    enumerate_lex,
    format_kset,
    lex_unrank,
    to_mask,
)

EMPTY_ID: KSet = ()


@dataclass(frozen=True, order=True)
class FamilyID:
    """Canonical ID of the L-initial family L([n], elements, k).

    ``elements == ()`` is reserved for the empty family.  The full family
    C([n], k) is the only one whose ID ends in a run reaching n.
    """

    n: int
    k: int
    elements: KSet

    @property
    def is_empty(self) -> bool:
        return not self.elements

    def __str__(self) -> str:
        return format_kset(self.elements) if self.elements else "<empty>"


def partner(a: Sequence[int]) -> KSet:
    """The set strongly intersecting ``a`` at q = max(a): ([q] - a) + {q}."""
    a = check_kset(a)
    if not a:
        raise ValueError("partner of the empty set is undefined")
    q = a[-1]
    present = set(a)
    return tuple(x for x in range(1, q) if x not in present) + (q,)


def _size_by_partner(a: KSet, n: int, k: int) -> int:
    # |L([n], a, k)| = sum_j C(n - b_j, k - b_j + j - 1) over the partner b
    b = partner(a)
    return sum(binomial(n - bj, k - bj + j) for j, bj in enumerate(b))


def _size_by_gaps(a: KSet, n: int, k: int) -> int:
    # Count k-sets by the first gap element j (between a_{d-1} and a_d) they
    # contain: C(n - j, k - d); plus the sets whose trace on [max a] is a.
    total = 0
    prev = 0
    for d, ad in enumerate(a, start=1):
        for j in range(prev + 1, ad):
            total += binomial(n - j, k - d)
        prev = ad
    return total + binomial(n - a[-1], k - len(a))


def linitial_size(a: Sequence[int], n: int, k: int) -> int:
    """|{F in C([n], k) : F precedes a}| for any non-empty a (not necessarily canonical)."""
    a = check_kset(a, n)
    if not a:
        raise ValueError("raw set must be non-empty; use FamilyID for the empty family")
    return _size_by_partner(a, n, k)


def size_from_id(fid: FamilyID) -> int:
    if fid.is_empty:
        return 0
    return _size_by_partner(fid.elements, fid.n, fid.k)


def size_from_id_direct(fid: FamilyID) -> int:
    """Same value as :func:`size_from_id`, computed from the gaps of the ID itself."""
    if fid.is_empty:
        return 0
    return _size_by_gaps(fid.elements, fid.n, fid.k)


def _strip_top_run(s: KSet, n: int) -> KSet:
    """Drop the maximal run ending at n, unless the whole set is that run."""
    if not s or s[-1] != n:
        return s
    p = len(s) - 1
    while p > 0 and s[p - 1] == s[p] - 1:
        p -= 1
    if p == 0:
        return s
    return s[:p]


def normalize_id(a: Sequence[int], n: int, k: int) -> FamilyID:
    """Canonical ID of L([n], a, k).

    Over-long sets (|a| > k) are first cut back to (a & [j]) + {j} with j the
    largest element of [a_k] missing from a; no such j means the family is
    empty.  The lex-last member of the family then has its top run at n
    stripped off.
    """
    a = check_kset(a, n)
    if not a:
        raise ValueError("cannot normalize the empty set")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    size = _size_by_gaps(a, n, k)
    if len(a) > k:
        present = set(a)
        missing = [q for q in range(1, a[k - 1] + 1) if q not in present]
        if not missing:
            return FamilyID(n, k, EMPTY_ID)
        j = missing[-1]
        a = tuple(x for x in a if x < j) + (j,)
    if len(a) == k:
        last = a
    else:
        last = lex_unrank(_size_by_partner(a, n, k), n, k)
    fid = FamilyID(n, k, _strip_top_run(last, n))
    if size_from_id(fid) != size:
        raise AssertionError(f"normalization of {a} changed the family size")
    return fid


def id_for_size(size: int, n: int, k: int) -> FamilyID:
    """ID of the L-initial family of the given size (0 gives the empty ID)."""
    if size == 0:
        return FamilyID(n, k, EMPTY_ID)
    return normalize_id(lex_unrank(size, n, k), n, k)


@dataclass(frozen=True)
class LInitialFamily:
    fid: FamilyID
    size: int

    @classmethod
    def of(cls, fid: FamilyID) -> "LInitialFamily":
        return cls(fid, size_from_id(fid))

    @classmethod
    def of_size(cls, size: int, n: int, k: int) -> "LInitialFamily":
        return cls(id_for_size(size, n, k), size)

    @property
    def n(self) -> int:
        return self.fid.n

    @property
    def k(self) -> int:
        return self.fid.k

    def members(self) -> Iterator[KSet]:
        return islice(enumerate_lex(self.n, self.k), self.size)

    def last_member(self) -> KSet | None:
        if self.size == 0:
            return None
        return lex_unrank(self.size, self.n, self.k)


def max_cross_id(p: FamilyID, b: int) -> LInitialFamily:
    """Largest b-uniform L-initial family cross-intersecting L([n], p, p.k).

    This is the family of the partner of p; it is empty exactly when
    min(p) > b.
    """
    n = p.n
    if p.k + b > n:
        raise ValueError(f"need a + b <= n, got {p.k} + {b} > {n}")
    if p.is_empty:
        return LInitialFamily(FamilyID(n, b, tuple(range(n - b + 1, n + 1))), binomial(n, b))
    return LInitialFamily.of(normalize_id(partner(p.elements), n, b))


def cross_intersecting_by_enumeration(fa: Iterator[KSet], fb: Iterator[KSet]) -> bool:
    masks_b = [to_mask(s) for s in fb]
    for s in fa:
        m = to_mask(s)
        for mb in masks_b:
            if not m & mb:
                return False
    return True


def are_cross_intersecting(f: LInitialFamily, g: LInitialFamily, enumerate: bool = False) -> bool:
    """Whether every member of f meets every member of g.

    The default test compares |g| against the maximal counterpart of f;
    ``enumerate=True`` checks all pairs instead.
    """
    if f.n != g.n:
        raise ValueError("families live on different ground sets")
    if f.size == 0 or g.size == 0:
        return True
    if enumerate:
        return cross_intersecting_by_enumeration(f.members(), g.members())
    if f.k + g.k > f.n:
        return True
    return g.size <= max_cross_id(f.fid, g.k).size


def complement_family(members: Iterator[KSet], n: int) -> list[KSet]:
    """{[n] - F : F in members}, sorted in lex order."""
    full = set(range(1, n + 1))
    return sorted(tuple(sorted(full - set(s))) for s in members)
