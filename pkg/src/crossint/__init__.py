"""Exact computations for non-empty pairwise cross-intersecting uniform families.

The closed-form maximum, the f objective over L-initial family IDs,
exhaustive checks of its local convexity, and brute-force oracles that
confirm all of it at desk scale.
"""
from .bound import ProblemInstance, extremal_configs, f_eval, f_scan, theorem_bound
from .combinatorics import binomial, lex_rank, lex_unrank
from .linitial import FamilyID, max_cross_id, normalize_id, partner, size_from_id
from .oracle import linitial_search, micro_search_t2

__all__ = [
    "FamilyID",
    "ProblemInstance",
    "binomial",
    "extremal_configs",
    "f_eval",
    "f_scan",
    "lex_rank",
    "lex_unrank",
    "linitial_search",
    "max_cross_id",
    "micro_search_t2",
    "normalize_id",
    "partner",
    "size_from_id",
    "theorem_bound",
]
__version__ = "0.1.0"
