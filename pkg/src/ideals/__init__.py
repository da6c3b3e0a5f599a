"""
Ideals module: seeded random binomial and non-binomial ideal distributions.
"""

from .distributions import (
    DistributionSpec,
    IdealGenerator,
    IdealSample,
    count_monomials,
    make_rng,
    parse_specs,
    poisson,
    random_binomial_ideal,
    random_monomial,
    random_nonbinomial_ideal,
    sample_ideal,
    unrank_monomial,
)

__all__ = [
    "DistributionSpec",
    "IdealGenerator",
    "IdealSample",
    "count_monomials",
    "make_rng",
    "parse_specs",
    "poisson",
    "random_binomial_ideal",
    "random_monomial",
    "random_nonbinomial_ideal",
    "sample_ideal",
    "unrank_monomial",
]
