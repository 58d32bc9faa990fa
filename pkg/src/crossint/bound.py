"""The closed-form maximum, the f objective over family IDs, and extremal witnesses.

Family indices ``i`` are 1-based throughout, matching the uniformities
k_1 >= k_2 >= ... >= k_t.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .combinatorics import KSet, binomial, enumerate_lex, lex_unrank
from .linitial import (
    FamilyID,
    LInitialFamily,
    are_cross_intersecting,
    complement_family,
    cross_intersecting_by_enumeration,
    linitial_size,
    normalize_id,
    partner,
    size_from_id,
)

CASE_STAR_T = "star-T (i)"
CASE_FULL_STARS = "full-stars (ii)"
CASE_COMPLEMENT_PAIR = "complement-pair (iii)"
CASE_EQUAL_K = "equal-k-complement (iv)"

ENUMERATION_LIMIT = 10**7


class InvalidInstance(ValueError):
    pass


@dataclass(frozen=True)
class ProblemInstance:
    n: int
    ks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ks", tuple(int(k) for k in self.ks))
        ks = self.ks
        if len(ks) < 2:
            raise InvalidInstance("need t >= 2 families")
        if any(ks[p] < ks[p + 1] for p in range(len(ks) - 1)):
            raise InvalidInstance(f"uniformities must satisfy k_1 >= ... >= k_t, got {ks}")
        if ks[-1] < 1:
            raise InvalidInstance("need k_t >= 1")
        if self.n < ks[0] + ks[1]:
            raise InvalidInstance(f"need n >= k_1 + k_2, got n={self.n} < {ks[0] + ks[1]}")

    @property
    def t(self) -> int:
        return len(self.ks)

    def k(self, i: int) -> int:
        return self.ks[i - 1]

    def others(self, i: int) -> list[int]:
        return [j for j in range(1, self.t + 1) if j != i]

    def m(self, i: int) -> int:
        """Smallest uniformity among the families other than i."""
        return min(self.k(j) for j in self.others(i))

    def l(self, i: int) -> int:
        return max(self.k(j) for j in self.others(i))

    def degenerate(self) -> bool:
        return self.t == 2 and self.n == self.ks[0] + self.ks[1]

    def as_dict(self) -> dict:
        return {"n": self.n, "ks": list(self.ks), "t": self.t}

    def __str__(self) -> str:
        return f"n={self.n} ks=({','.join(map(str, self.ks))})"


@dataclass(frozen=True)
class TheoremBound:
    value: int
    branch_values: tuple[int, int]  # (complement-of-T branch, star-sum branch)
    branches: tuple[str, ...]  # which branches attain the value


def ft_branch(inst: ProblemInstance) -> int:
    n, ks = inst.n, inst.ks
    kt = ks[-1]
    return binomial(n, ks[0]) - binomial(n - kt, ks[0]) + sum(binomial(n - kt, k - kt) for k in ks[1:])


def star_branch(inst: ProblemInstance) -> int:
    return sum(binomial(inst.n - 1, k - 1) for k in inst.ks)


def theorem_bound(inst: ProblemInstance) -> TheoremBound:
    ft, star = ft_branch(inst), star_branch(inst)
    value = max(ft, star)
    branches = tuple(name for name, v in (("star-T", ft), ("full-stars", star)) if v == value)
    return TheoremBound(value, (ft, star), branches)


# ---------------------------------------------------------------------------
# f objective

def f_raw(inst: ProblemInstance, i: int, r: Sequence[int]) -> int:
    """f_i at the (possibly non-canonical) set r."""
    return _f_raw(inst.n, inst.ks, i, tuple(r))


@lru_cache(maxsize=1 << 18)
def _f_raw(n: int, ks: tuple[int, ...], i: int, r: KSet) -> int:
    t = partner(r)
    own = linitial_size(r, n, ks[i - 1])
    return own + sum(linitial_size(t, n, k) for j, k in enumerate(ks, start=1) if j != i)


@dataclass(frozen=True)
class FEvaluation:
    i: int
    fid: FamilyID
    f_value: int
    per_family_sizes: tuple[int, ...]
    rank_offset: int


def f_eval(inst: ProblemInstance, i: int, r: FamilyID | Sequence[int]) -> FEvaluation:
    """Upper bound on the total size when family i is L-initial with ID r."""
    n, ki = inst.n, inst.k(i)
    fid = r if isinstance(r, FamilyID) else normalize_id(r, n, ki)
    if fid.k != ki or fid.n != n:
        raise ValueError(f"ID {fid} is not a {ki}-uniform ID over [{n}]")
    own = size_from_id(fid)
    sizes = []
    for j in range(1, inst.t + 1):
        if j == i:
            sizes.append(own)
        elif fid.is_empty:
            sizes.append(binomial(n, inst.k(j)))
        else:
            sizes.append(linitial_size(partner(fid.elements), n, inst.k(j)))
    return FEvaluation(i, fid, sum(sizes), tuple(sizes), own - binomial(n - 1, ki - 1))


def z_count(inst: ProblemInstance, i: int) -> int:
    ki, m = inst.k(i), inst.m(i)
    return sum(binomial(inst.n - s, ki - 1) for s in range(2, m + 1))


def id_space_raw(inst: ProblemInstance, i: int) -> list[KSet]:
    """The ID space as raw k_i-sets in lex order, from the last member of the star at 1."""
    n, ki = inst.n, inst.k(i)
    base = binomial(n - 1, ki - 1)
    return [lex_unrank(base + r, n, ki) for r in range(z_count(inst, i) + 1)]


def id_space(inst: ProblemInstance, i: int) -> list[FamilyID]:
    n, ki = inst.n, inst.k(i)
    return [normalize_id(r, n, ki) for r in id_space_raw(inst, i)]


def _check_order(r: FamilyID, r2: FamilyID) -> None:
    if size_from_id(r2) < size_from_id(r):
        raise ValueError(f"{r2} strictly precedes {r}")


def alpha(inst: ProblemInstance, i: int, r: FamilyID, r2: FamilyID) -> int:
    """Growth of family i when its ID moves from r to r2."""
    _check_order(r, r2)
    return size_from_id(r2) - size_from_id(r)


def beta(inst: ProblemInstance, i: int, r: FamilyID, r2: FamilyID) -> int:
    """Total shrinkage of the other families' maximal counterparts from r to r2."""
    _check_order(r, r2)
    before = f_eval(inst, i, r).per_family_sizes
    after = f_eval(inst, i, r2).per_family_sizes
    return sum(before[j - 1] - after[j - 1] for j in inst.others(i))


def beta_consecutive(inst: ProblemInstance, i: int, q: int) -> int:
    """Closed form of beta(F, G) for consecutive IDs F < G with max G = q."""
    ki = inst.k(i)
    return sum(binomial(inst.n - q, inst.k(j) - (q - ki)) for j in inst.others(i))


@dataclass
class FScanReport:
    inst: ProblemInstance
    i: int
    max_value: int
    argmax: list[FamilyID]
    f_one: int
    f_m: int
    at_one: bool
    at_m: bool
    endpoint_ok: bool | None  # None when the instance is degenerate
    bound_ok: bool
    curve: list[FEvaluation] = field(default_factory=list)


def _scan_chunk(args):
    inst, i, lo, hi = args
    n, ki = inst.n, inst.k(i)
    base = binomial(n - 1, ki - 1)
    best, arg = -1, []
    curve = []
    for r in range(lo, hi):
        rid = normalize_id(lex_unrank(base + r, n, ki), n, ki)
        ev = f_eval(inst, i, rid)
        curve.append(ev)
        if ev.f_value > best:
            best, arg = ev.f_value, [rid]
        elif ev.f_value == best:
            arg.append(rid)
    return best, arg, curve


def _merge(a, b):
    # associative max; ties keep lower-rank IDs first
    if a[0] > b[0]:
        return a[0], a[1], a[2] + b[2]
    if b[0] > a[0]:
        return b[0], b[1], a[2] + b[2]
    return a[0], a[1] + b[1], a[2] + b[2]


def f_scan(inst: ProblemInstance, i: int, curve: bool = False, workers: int = 1,
           chunk: int = 4096) -> FScanReport:
    size = z_count(inst, i) + 1
    jobs = [(inst, i, lo, min(lo + chunk, size)) for lo in range(0, size, chunk)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_scan_chunk, jobs))
    else:
        parts = [_scan_chunk(job) for job in jobs]
    best, arg, evs = parts[0]
    for part in parts[1:]:
        best, arg, evs = _merge((best, arg, evs), part)

    n, ki, m = inst.n, inst.k(i), inst.m(i)
    one = normalize_id((1,), n, ki)
    em = normalize_id((m,), n, ki)
    f_one, f_m = f_eval(inst, i, one).f_value, f_eval(inst, i, em).f_value
    endpoint_ok = None
    if not inst.degenerate():
        endpoint_ok = best == max(f_one, f_m) and set(arg) <= {one, em}
    bound = theorem_bound(inst).value
    bound_ok = best == bound if i == 1 else best <= bound
    return FScanReport(inst, i, best, arg, f_one, f_m, one in arg, em in arg,
                       endpoint_ok, bound_ok, evs if curve else [])


def index_dominance(inst: ProblemInstance) -> list[tuple[int, int, int, int]]:
    """Cases where f_1({s}) < f_j({s}) for s in [1, m(i)], any i and j.

    f_j({s}) means f_j at {s, n-k_j+2, ..., n}, so s stops at n-k_1+1 (this
    only bites for t = 2, i = 2, where m = k_1).  Returns (i, s, j, f_j - f_1)
    for every violation; an empty list means index 1 dominates.
    """
    n = inst.n
    out = []
    at = lambda j, s: f_raw(inst, j, (s,) + tuple(range(n - inst.k(j) + 2, n + 1)))  # noqa: E731
    for i in range(1, inst.t + 1):
        for s in range(1, min(inst.m(i), n - inst.k(1) + 1) + 1):
            first = at(1, s)
            for j in range(2, inst.t + 1):
                v = at(j, s)
                if v > first:
                    out.append((i, s, j, v - first))
    return out


# ---------------------------------------------------------------------------
# reference bounds

@dataclass(frozen=True)
class RefBound:
    name: str
    value: int | None
    applicable: bool
    note: str = ""


def hilton_bound(n: int, k: int, t: int) -> int:
    # t <= n/k  <=>  t*k <= n
    return binomial(n, k) if t * k <= n else t * binomial(n - 1, k - 1)


def hilton_milner_bound(n: int, k: int) -> int:
    return binomial(n, k) - binomial(n - k, k) + 1


def frankl_tokushige_bound(n: int, k: int, l: int) -> int:
    return binomial(n, k) - binomial(n - l, k) + 1


def borg_feghali_bound(n: int, r: int, s: int) -> int:
    """Bound for families of sets of size at most r and at most s (r <= s)."""
    return 1 + sum(binomial(n, q) - binomial(n - r, q) for q in range(1, s + 1))


def shi_frankl_qian_bound(n: int, k: int, l: int, r: int, c: Fraction | int) -> Fraction:
    """max of |A| + c|B| for cross-intersecting A, B with C(n-r, l-r) <= |B| <= C(n-1, l-1)."""
    c = Fraction(c)
    return max(binomial(n, k) - binomial(n - r, k) + c * binomial(n - r, l - r),
               binomial(n - 1, k - 1) + c * binomial(n - 1, l - 1))


def sfq_corollary_bound(n: int, k: int, t: int) -> int:
    return max(binomial(n, k) - binomial(n - k, k) + t - 1, t * binomial(n - 1, k - 1))


def reference_bounds(inst: ProblemInstance) -> list[RefBound]:
    n, ks, t = inst.n, inst.ks, inst.t
    equal = len(set(ks)) == 1
    k = ks[0]
    out = []
    if equal and n >= 2 * k:
        out.append(RefBound("hilton", hilton_bound(n, k, t), True, "families may be empty; upper bound only"))
    else:
        out.append(RefBound("hilton", None, False, "needs k_1 = ... = k_t and n >= 2k"))
    if equal and t == 2 and n >= 2 * k:
        out.append(RefBound("hilton-milner", hilton_milner_bound(n, k), True))
    else:
        out.append(RefBound("hilton-milner", None, False, "needs t = 2, k_1 = k_2, n >= 2k"))
    if t == 2:
        out.append(RefBound("frankl-tokushige", frankl_tokushige_bound(n, ks[0], ks[1]), True))
        out.append(RefBound("borg-feghali", borg_feghali_bound(n, ks[1], ks[0]), True,
                            "non-uniform setting; upper bound only"))
        sfq = shi_frankl_qian_bound(n, ks[0], ks[1], ks[1], 1)
        out.append(RefBound("shi-frankl-qian(c=1,r=l)", int(sfq), True))
    else:
        out.append(RefBound("frankl-tokushige", None, False, "needs t = 2"))
        out.append(RefBound("borg-feghali", None, False, "needs t = 2"))
        out.append(RefBound("shi-frankl-qian(c=1,r=l)", None, False, "needs t = 2"))
    if equal and n >= 2 * k:
        out.append(RefBound("sfq-corollary", sfq_corollary_bound(n, k, t), True))
    else:
        out.append(RefBound("sfq-corollary", None, False, "needs k_1 = ... = k_t and n >= 2k"))
    return out


# ---------------------------------------------------------------------------
# extremal configurations

@dataclass
class ExtremalConfig:
    case_label: str
    families: tuple[LInitialFamily, ...]
    sizes: tuple[int, ...]
    total: int
    verified: bool
    method: str  # "enumeration" or "threshold"
    detail: str = ""


def _pair_ok(fa: LInitialFamily, fb: LInitialFamily) -> tuple[bool, str]:
    if fa.size * fb.size <= ENUMERATION_LIMIT:
        return cross_intersecting_by_enumeration(fa.members(), fb.members()), "enumeration"
    return are_cross_intersecting(fa, fb), "threshold"


def verify_witness(inst: ProblemInstance, fams: Sequence[LInitialFamily]) -> tuple[bool, str, str]:
    """Check non-emptiness, pairwise cross-intersection and bound attainment."""
    methods = set()
    if any(f.size == 0 for f in fams):
        return False, "", "empty family"
    for a in range(len(fams)):
        for b in range(a + 1, len(fams)):
            ok, how = _pair_ok(fams[a], fams[b])
            methods.add(how)
            if not ok:
                return False, how, f"families {a + 1} and {b + 1} not cross-intersecting"
    total = sum(f.size for f in fams)
    bound = theorem_bound(inst).value
    method = "threshold" if "threshold" in methods else "enumeration"
    if total != bound:
        return False, method, f"total {total} != bound {bound}"
    return True, method, ""


def _config(inst: ProblemInstance, label: str, fams: list[LInitialFamily]) -> ExtremalConfig:
    ok, method, detail = verify_witness(inst, fams)
    sizes = tuple(f.size for f in fams)
    return ExtremalConfig(label, tuple(fams), sizes, sum(sizes), ok, method, detail)


def star_t_witness(inst: ProblemInstance) -> list[LInitialFamily]:
    # T = [k_t]: family 1 meets T, every other family contains T
    n, kt = inst.n, inst.ks[-1]
    first = LInitialFamily.of(normalize_id((kt,), n, inst.ks[0]))
    rest = [LInitialFamily.of(normalize_id(tuple(range(1, kt + 1)), n, k)) for k in inst.ks[1:]]
    return [first] + rest


def full_star_witness(inst: ProblemInstance) -> list[LInitialFamily]:
    return [LInitialFamily.of(normalize_id((1,), inst.n, k)) for k in inst.ks]


def complement_pair_witness(inst: ProblemInstance, size: int = 1) -> list[LInitialFamily]:
    """A_1 = first ``size`` k_1-sets, A_2 = every k_2-set except their complements."""
    n, k1, k2 = inst.n, inst.ks[0], inst.ks[1]
    a1 = LInitialFamily.of_size(size, n, k1)
    # complementation reverses lex order when n = k_1 + k_2, so the
    # complement closure of an initial segment is again an initial segment
    a2 = LInitialFamily.of_size(binomial(n, k2) - size, n, k2)
    return [a1, a2]


def complement_closure(members: list[KSet], n: int, k2: int) -> list[KSet]:
    """All k2-sets of [n] that are not complements of a member."""
    comp = set(complement_family(iter(members), n))
    return [s for s in enumerate_lex(n, k2) if s not in comp]


def extremal_configs(inst: ProblemInstance) -> list[ExtremalConfig]:
    tb = theorem_bound(inst)
    ft, star = tb.branch_values
    n, ks = inst.n, inst.ks
    out = []
    if inst.degenerate():
        out.append(_config(inst, CASE_COMPLEMENT_PAIR, complement_pair_witness(inst)))
        return out
    if ft >= star:
        out.append(_config(inst, CASE_STAR_T, star_t_witness(inst)))
    if star >= ft:
        loose_pair = any(n > ks[a] + ks[b] for a in range(inst.t) for b in range(a + 1, inst.t))
        label = CASE_FULL_STARS if loose_pair else CASE_EQUAL_K
        out.append(_config(inst, label, full_star_witness(inst)))
    return out


def case_labels(inst: ProblemInstance, sizes: Sequence[int]) -> list[str]:
    """Equality cases whose size profile matches ``sizes`` (families with equal k may be permuted)."""
    n, ks, t = inst.n, inst.ks, inst.t
    ft, star = theorem_bound(inst).branch_values
    labels = []
    if sum(sizes) != max(ft, star):
        return labels
    if inst.degenerate():
        labels.append(CASE_COMPLEMENT_PAIR)
        return labels
    kt = ks[-1]
    # on a branch tie the star-T shape also attains the bound (e.g. ks = (2, 2))
    if ft >= star:
        for p in range(t):
            if ks[p] != ks[0]:
                continue
            # the role of family 1 may be taken by any family with the same k
            others = [q for q in range(t) if q != p]
            if (sizes[p] == binomial(n, ks[0]) - binomial(n - kt, ks[0])
                    and all(sizes[q] == binomial(n - kt, ks[q] - kt) for q in others)):
                labels.append(CASE_STAR_T)
                break
    if ft <= star and all(sizes[q] == binomial(n - 1, ks[q] - 1) for q in range(t)):
        loose_pair = any(n > ks[a] + ks[b] for a in range(t) for b in range(a + 1, t))
        labels.append(CASE_FULL_STARS if loose_pair else CASE_EQUAL_K)
    return labels
