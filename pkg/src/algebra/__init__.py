"""
Algebra module: the prime field, grevlex monomials, sparse polynomials and
the multivariate division algorithm.
"""

from .field import FieldElement, PrimeField, get_field, is_prime
from .monomial import (
    Monomial,
    Ordering,
    degree,
    divides,
    gcd,
    grevlex_cmp,
    grevlex_key,
    is_coprime,
    lcm,
    make_monomial,
    mul,
    one,
    quotient,
    support,
)
from .polynomial import (
    Polynomial,
    ReductionResult,
    Term,
    enable_reduction_checks,
    format_polynomial,
    parse_polynomial,
    poly_sub_scaled,
    reduce,
    reduce_with_quotients,
    s_polynomial,
    verify_reduced,
)

__all__ = [
    "FieldElement",
    "PrimeField",
    "get_field",
    "is_prime",
    "Monomial",
    "Ordering",
    "degree",
    "divides",
    "gcd",
    "grevlex_cmp",
    "grevlex_key",
    "is_coprime",
    "lcm",
    "make_monomial",
    "mul",
    "one",
    "quotient",
    "support",
    "Polynomial",
    "ReductionResult",
    "Term",
    "enable_reduction_checks",
    "format_polynomial",
    "parse_polynomial",
    "poly_sub_scaled",
    "reduce",
    "reduce_with_quotients",
    "s_polynomial",
    "verify_reduced",
]
