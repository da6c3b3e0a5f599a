"""
Groebner module: S-pairs and their elimination, selection strategies,
Buchberger's algorithm and basis statistics.
"""

from .buchberger import BuchbergerState, PairOutcome, RunStats, buchberger, reduce_basis, run, stats_for
from .pairs import SPair, make_pair, sugar_of_pair, sugar_of_reduction, update
from .stats import basis_size_bound, deg_max, dimension, generic_degree_bound, is_groebner_basis
from .strategies import (
    CallableSelector,
    DegreeSelector,
    FirstSelector,
    KeySelector,
    MonomialFirstSelector,
    NormalSelector,
    PairSelector,
    RandomSelector,
    SugarSelector,
    TrueDegreeSelector,
    get_strategy,
    select,
)

__all__ = [
    "BuchbergerState",
    "PairOutcome",
    "RunStats",
    "buchberger",
    "reduce_basis",
    "run",
    "stats_for",
    "SPair",
    "make_pair",
    "sugar_of_pair",
    "sugar_of_reduction",
    "update",
    "basis_size_bound",
    "deg_max",
    "dimension",
    "generic_degree_bound",
    "is_groebner_basis",
    "CallableSelector",
    "DegreeSelector",
    "FirstSelector",
    "KeySelector",
    "MonomialFirstSelector",
    "NormalSelector",
    "PairSelector",
    "RandomSelector",
    "SugarSelector",
    "TrueDegreeSelector",
    "get_strategy",
    "select",
]
