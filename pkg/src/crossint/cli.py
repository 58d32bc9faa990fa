"""Command-line interface.

Exit status: 0 when every check passes, 1 when any check fails, 2 on a
usage or validation error (including a refused oracle budget).
"""
from __future__ import annotations

import argparse
import sys
import time
from typing import Sequence

from . import lemmas
from .bound import (
    InvalidInstance,
    ProblemInstance,
    case_labels,
    extremal_configs,
    f_scan,
    reference_bounds,
    theorem_bound,
    z_count,
)
from .combinatorics import format_kset, lex_rank, lex_unrank, parse_kset
from .linitial import linitial_size, normalize_id, partner, size_from_id, size_from_id_direct
from .oracle import BudgetExceeded, default_budget, linitial_search, micro_search_t2
from .report import FORMATS, Report, emit
from .suite import CRITERIA, run_suite

HYPOTHESIS = "k_1 ≥ … ≥ k_t, n ≥ k_1+k_2"


class UsageError(Exception):
    pass


def parse_ks(text: str) -> tuple[int, ...]:
    try:
        ks = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise UsageError(f"--ks must be a comma-separated list of integers, got {text!r}") from None
    return ks


def make_instance(n: int, ks_text: str) -> ProblemInstance:
    ks = parse_ks(ks_text)
    try:
        return ProblemInstance(n, ks)
    except InvalidInstance as exc:
        raise UsageError(f"invalid instance n={n} ks={ks_text}: {exc}; required: t ≥ 2, k_t ≥ 1, {HYPOTHESIS}") from None


def _parse_set(text: str, n: int) -> tuple[int, ...]:
    try:
        s = parse_kset(text)
    except ValueError as exc:
        raise UsageError(f"bad set {text!r}: {exc}") from None
    if not s:
        raise UsageError("the set must be non-empty")
    if s[-1] > n:
        raise UsageError(f"set {text!r} has an element above n={n}")
    return s


def _index(inst: ProblemInstance, i: int) -> int:
    if not 1 <= i <= inst.t:
        raise UsageError(f"--i must lie in [1, {inst.t}]")
    return i


def _instance_dict(inst: ProblemInstance, **extra) -> dict:
    d = inst.as_dict()
    d.update(extra)
    return d


# ---------------------------------------------------------------------------
# commands

def cmd_bound(args) -> Report:
    inst = make_instance(args.n, args.ks)
    tb = theorem_bound(inst)
    configs = extremal_configs(inst)
    rep = Report("bound", _instance_dict(inst))
    rep.results = {
        "bound": tb.value,
        "branch_values": list(tb.branch_values),
        "branches": list(tb.branches),
        "case_labels": [c.case_label for c in configs],
        "reference_bounds": [
            {"name": rb.name, "value": rb.value, "applicable": rb.applicable, "note": rb.note}
            for rb in reference_bounds(inst)
        ],
    }
    rep.check("bound-is-max-of-branches", tb.value == max(tb.branch_values))
    return rep


def cmd_fscan(args) -> Report:
    inst = make_instance(args.n, args.ks)
    i = _index(inst, args.i)
    want_curve = args.curve or args.format == "csv"
    scan = f_scan(inst, i, curve=want_curve, workers=args.workers)
    rep = Report("f-scan", _instance_dict(inst, i=i))
    rep.results = {
        "max": scan.max_value,
        "argmax_ids": [format_kset(a.elements) for a in scan.argmax],
        "f_one": scan.f_one,
        "f_m": scan.f_m,
        "at_one": scan.at_one,
        "at_m": scan.at_m,
        "id_count": z_count(inst, i) + 1,
    }
    if args.curve:
        rep.results["curve"] = [
            {"rank_offset": ev.rank_offset, "id": format_kset(ev.fid.elements), "f": ev.f_value,
             "per_family_sizes": list(ev.per_family_sizes)}
            for ev in scan.curve
        ]
    rep.table = (["rank_offset", "id", "f"],
                 [[ev.rank_offset, format_kset(ev.fid.elements), ev.f_value] for ev in scan.curve])
    rep.check("endpoint-dominance", scan.endpoint_ok,
              "degenerate instance: endpoint claim not made" if scan.endpoint_ok is None else "")
    rep.check("bound", scan.bound_ok, f"scan max {scan.max_value}, bound {theorem_bound(inst).value}")
    return rep


def cmd_lemmas(args) -> Report:
    inst = make_instance(args.n, args.ks)
    if inst.degenerate():
        raise UsageError(f"{inst}: t = 2 and n = k_1 + k_2; the lemmas assume n > k_1+k_2 or t > 2 "
                         "(hypothesis violated, refusing to check)")
    indices = list(range(1, inst.t + 1)) if args.all_i else [_index(inst, args.i)]
    rep = Report("lemmas", _instance_dict(inst))
    per_index = []
    for i in indices:
        ki = inst.k(i)
        depths = [args.depth] if args.depth is not None else list(range(ki))
        for j in depths:
            if not 0 <= j <= ki - 1:
                raise UsageError(f"--depth must lie in [0, {ki - 1}] for i={i}")
        conv = []
        for j in depths:
            r = lemmas.verify_local_convexity(inst, i, j)
            conv.append({"depth": j, **r.counts(),
                         "counterexamples": [{"c": ce["c"], "F": format_kset(ce["F"]), "G": format_kset(ce["G"]),
                                              "H": format_kset(ce["H"]), "f": list(ce["f"])}
                                             for ce in r.counterexamples]})
            rep.check(f"i={i} j={j} local-convexity", r.ok,
                      f"{r.failed} of {r.triples_checked} triples fail ({r.ties} flat)" if r.failed else "")
            runs = lemmas.c_sequential_runs(inst, i, j)
            bad = [run for _c, run in runs if not lemmas.down_up_profile(run, inst, i, j).ok]
            rep.check(f"i={i} j={j} down-up-runs", not bad, f"{len(bad)} of {len(runs)} runs not down-up")
        ridges = lemmas.verify_ridges(inst, i)
        for rc in ridges:
            rep.check(f"i={i} ridge {rc.name}", None if rc.status == "n/a" else rc.status == "pass", rc.note)
        chain = lemmas.reduction_chain(inst, i)
        for st in chain:
            rep.check(f"i={i} chain {st.name}", None if st.status == "n/a" else st.status == "pass", st.detail)
        checked, mismatches = lemmas.increment_signature_check(inst, i)
        rep.check(f"i={i} increment-signature", mismatches == 0, f"{checked} pairs")
        per_index.append({
            "i": i,
            "convexity": conv,
            "ridges": [{"name": rc.name, "status": rc.status, "rows": [
                {"set": format_kset(row["set"]), "premise": row["premise"], "conclusion": row["conclusion"]}
                for row in rc.rows]} for rc in ridges],
            "chain": [{"name": st.name, "status": st.status, "detail": st.detail} for st in chain],
            "signature_pairs": checked,
        })
    rep.results = {"indices": per_index}
    return rep


def _budget(args) -> int:
    budget = default_budget() if args.budget is None else args.budget
    if budget < 1:
        raise UsageError("--budget must be at least 1")
    return budget


def cmd_oracle(args) -> Report:
    inst = make_instance(args.n, args.ks)
    try:
        res = linitial_search(inst, budget=_budget(args))
    except BudgetExceeded as exc:
        raise UsageError(f"refused: {exc}; raise --budget to at least {exc.required}") from None
    bound = theorem_bound(inst).value
    rep = Report("oracle", _instance_dict(inst))
    rep.results = {
        "optimum": res.optimum,
        "bound": bound,
        "witnesses": [list(w) for w in res.witnesses],
        "ids": [[format_kset(f.elements) for f in ids] for ids in res.ids],
        "matched_cases": res.matched_cases,
        "complete": res.complete,
        "method": res.method,
        "states": res.states,
    }
    rep.check("optimum-equals-bound", res.optimum == bound, f"{res.optimum} vs {bound}")
    rep.check("witnesses-labelled", all(res.matched_cases))
    return rep


def cmd_kk_check(args) -> Report:
    inst = make_instance(args.n, args.ks)
    if inst.t != 2:
        raise UsageError("kk-check takes exactly two uniformities")
    k1, k2 = inst.ks
    try:
        micro = micro_search_t2(inst.n, k1, k2, method=args.method)
        lin = linitial_search(inst, budget=_budget(args))
    except (ValueError, BudgetExceeded) as exc:
        raise UsageError(f"refused: {exc}") from None
    bound = theorem_bound(inst).value
    rep = Report("kk-check", _instance_dict(inst))
    rep.results = {
        "micro_optimum": micro.optimum,
        "micro_method": micro.method,
        "micro_witnesses": [list(w) for w in micro.witnesses],
        "micro_complete": micro.complete,
        "optimal_choices": micro.optimal_choices,
        "linitial_optimum": lin.optimum,
        "bound": bound,
        "matched_cases": sorted({lab for labels in lin.matched_cases for lab in labels}),
    }
    rep.check("micro-equals-linitial", micro.optimum == lin.optimum)
    rep.check("linitial-equals-bound", lin.optimum == bound)
    return rep


def cmd_extremal(args) -> Report:
    inst = make_instance(args.n, args.ks)
    rep = Report("extremal", _instance_dict(inst))
    configs = extremal_configs(inst)
    rep.results = {
        "bound": theorem_bound(inst).value,
        "configs": [
            {"case_label": c.case_label, "sizes": list(c.sizes), "total": c.total,
             "ids": [format_kset(f.fid.elements) for f in c.families], "verified": c.verified,
             "method": c.method, "labels_from_sizes": case_labels(inst, c.sizes)}
            for c in configs
        ],
    }
    rep.table = (["case_label", "sizes", "total", "ids", "verified", "method"],
                 [[c.case_label, list(c.sizes), c.total, " ".join(format_kset(f.fid.elements) for f in c.families),
                   c.verified, c.method] for c in configs])
    for c in configs:
        rep.check(f"{c.case_label} witness", c.verified, c.detail or c.method)
    return rep


def _check_nk(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise UsageError(f"need 1 ≤ k ≤ n, got n={n}, k={k}")


def cmd_rank(args) -> Report:
    _check_nk(args.n, args.k)
    s = _parse_set(args.set, args.n)
    if len(s) != args.k:
        raise UsageError(f"set {args.set!r} does not have k={args.k} elements")
    rep = Report("rank", {"n": args.n, "k": args.k})
    rep.results = {"set": format_kset(s), "rank": lex_rank(s, args.n, args.k)}
    return rep


def cmd_unrank(args) -> Report:
    _check_nk(args.n, args.k)
    try:
        s = lex_unrank(args.rank, args.n, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = Report("unrank", {"n": args.n, "k": args.k})
    rep.results = {"rank": args.rank, "set": format_kset(s)}
    return rep


def cmd_partner(args) -> Report:
    s = _parse_set(args.set, args.n)
    rep = Report("partner", {"n": args.n})
    rep.results = {"set": format_kset(s), "partner": format_kset(partner(s))}
    return rep


def cmd_size(args) -> Report:
    _check_nk(args.n, args.k)
    s = _parse_set(args.set, args.n)
    fid = normalize_id(s, args.n, args.k)
    rep = Report("size", {"n": args.n, "k": args.k})
    size = linitial_size(s, args.n, args.k)
    rep.results = {"set": format_kset(s), "id": format_kset(fid.elements), "size": size,
                   "size_from_id": size_from_id(fid), "size_from_id_direct": size_from_id_direct(fid)}
    rep.check("size-formulas-agree", size == size_from_id(fid) == size_from_id_direct(fid))
    return rep


def cmd_suite(args) -> Report:
    if args.n_max < 2 or args.t_max < 2:
        raise UsageError("--n-max and --t-max must be at least 2")
    only = None
    if args.only:
        try:
            only = [int(x) for x in args.only.split(",")]
        except ValueError:
            raise UsageError("--only takes a comma-separated list of criterion numbers") from None
        if any(x not in CRITERIA for x in only):
            raise UsageError(f"criteria are numbered {min(CRITERIA)}..{max(CRITERIA)}")
    results = run_suite(args.n_max, args.t_max, only)
    rep = Report("suite", {"n": args.n_max, "t": args.t_max})
    rep.results = {"criteria": [
        {"number": r.number, "name": r.name, "status": r.status, "detail": r.detail,
         "stats": r.stats, "failures": r.failures}
        for r in results
    ]}
    rep.table = (["criterion", "name", "status", "detail"],
                 [[r.number, r.name, r.status, r.detail] for r in results])
    for r in results:
        rep.check(f"criterion-{r.number} {r.name}", r.status == "pass", r.detail)
    return rep


COMMANDS = {
    "bound": cmd_bound,
    "f-scan": cmd_fscan,
    "lemmas": cmd_lemmas,
    "oracle": cmd_oracle,
    "kk-check": cmd_kk_check,
    "extremal": cmd_extremal,
    "rank": cmd_rank,
    "unrank": cmd_unrank,
    "partner": cmd_partner,
    "size": cmd_size,
    "suite": cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossint",
        description="Maximum total size of non-empty pairwise cross-intersecting uniform families: "
                    "closed-form bound, f-objective scans, lemma checks and brute-force oracles.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--output", help="write the report here instead of stdout")

    inst = argparse.ArgumentParser(add_help=False)
    inst.add_argument("--n", type=int, required=True, help="ground set size")
    inst.add_argument("--ks", required=True, help=f"uniformities, comma separated ({HYPOTHESIS})")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("bound", parents=[common, inst], help="closed-form maximum and its two branches")

    p = sub.add_parser("f-scan", parents=[common, inst], help="scan f_i over the ID space")
    p.add_argument("--i", type=int, default=1, help="distinguished family (1-based)")
    p.add_argument("--curve", action="store_true", help="include every ID in the JSON results")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("lemmas", parents=[common, inst], help="exhaustive local convexity checks")
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--depth", type=int, help="suffix depth j (default: every depth)")
    p.add_argument("--all-i", action="store_true", help="check every family index")

    for name, text in (("oracle", "exact optimum over L-initial tuples"),
                       ("kk-check", "unrestricted two-family optimum vs the L-initial one")):
        p = sub.add_parser(name, parents=[common, inst], help=text)
        p.add_argument("--budget", type=int, help="state budget (default from CROSSINT_BUDGET or 10^8)")
        if name == "kk-check":
            p.add_argument("--method", choices=("auto", "enumerate", "konig"), default="auto")

    sub.add_parser("extremal", parents=[common, inst], help="extremal configurations, verified")

    for name in ("rank", "size"):
        p = sub.add_parser(name, parents=[common], help=f"{name} of a set")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--set", required=True, help='elements, e.g. "2,3,4"')
    p = sub.add_parser("unrank", parents=[common], help="k-set at a 1-based lex rank")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p = sub.add_parser("partner", parents=[common], help="partner of a set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", required=True)

    p = sub.add_parser("suite", parents=[common], help="run the acceptance criteria")
    p.add_argument("--n-max", type=int, default=11)
    p.add_argument("--t-max", type=int, default=3)
    p.add_argument("--only", help="comma-separated criterion numbers")
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[Report, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    rep = COMMANDS[args.command](args)
    rep.timing_ms = int((time.perf_counter() - start) * 1000)
    return rep, args


def main(argv: Sequence[str] | None = None) -> int:
    try:
        rep, args = run(argv)
    except UsageError as exc:
        print(f"crossint: error: {exc}", file=sys.stderr)
        return 2
    data = emit(rep, args.format)
    if args.output:
        try:
            with open(args.output, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            print(f"crossint: error: cannot write {args.output}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
