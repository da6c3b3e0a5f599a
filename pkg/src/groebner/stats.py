"""
Complexity statistics of Groebner bases: maximal degree, Krull dimension
from leading monomials, and the generic degree bounds.
"""

from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from ..algebra import Monomial, Polynomial, reduce, s_polynomial, support
from ..core import GroebnerConstants, InvalidArgumentError


def deg_max(basis: Sequence[Polynomial]) -> int:
    """Largest total degree among the generators (0 for an empty basis)."""
    return max((g.degree for g in basis if not g.is_zero), default=0)


def dimension(leads: Iterable[Monomial], n: int) -> int:
    """
    Krull dimension of R/I from the leading monomials of a Groebner basis.

    Largest size of a variable subset S such that no lead monomial has
    its support inside S. Returns -1 for the unit ideal.
    """
    leads = list(leads)
    if n > GroebnerConstants.MAX_DIMENSION_VARIABLES:
        raise InvalidArgumentError(
            f"dimension search supports at most {GroebnerConstants.MAX_DIMENSION_VARIABLES} variables"
        )
    if any(sum(m) == 0 for m in leads):
        return GroebnerConstants.UNIT_IDEAL_DIMENSION

    supports = {support(m) for m in leads}
    # only inclusion-minimal supports constrain S
    minimal = [s for s in supports if not any(t < s for t in supports)]

    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            chosen = frozenset(subset)
            if not any(s <= chosen for s in minimal):
                return size
    return 0


def generic_degree_bound(n: int, d: int) -> int:
    """Degree bound (n+1)(d-1)+1 that holds for generic ideals."""
    return (n + 1) * (d - 1) + 1


def basis_size_bound(n: int, D: int) -> int:
    """Number of monomials of degree at most D in n variables."""
    return comb(D + n, n)


def is_groebner_basis(G: Sequence[Polynomial]) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    G = [g for g in G if not g.is_zero]
    for j in range(len(G)):
        for i in range(j):
            if not reduce(s_polynomial(G[i], G[j]), G).remainder.is_zero:
                return False
    return True
