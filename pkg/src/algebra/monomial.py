"""
Monomials as exponent vectors and the grevlex monomial order.

A monomial x^a = x0^a0 * ... * x{n-1}^a{n-1} is stored as the plain tuple a.
"""

from enum import IntEnum
from typing import Tuple

from ..core import DimensionError, DivisibilityError, InvalidArgumentError

Monomial = Tuple[int, ...]


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def make_monomial(exponents) -> Monomial:
    """Validate and freeze an exponent vector."""
    mono = tuple(int(e) for e in exponents)
    if not mono:
        raise InvalidArgumentError("monomial needs at least one variable")
    if any(e < 0 for e in mono):
        raise InvalidArgumentError(f"negative exponent in {mono}")
    return mono


def one(n: int) -> Monomial:
    """The constant monomial in n variables."""
    return (0,) * n


def _check(a: Monomial, b: Monomial):
    if len(a) != len(b):
        raise DimensionError(f"monomials of length {len(a)} and {len(b)}")


def degree(a: Monomial) -> int:
    return sum(a)


def grevlex_key(a: Monomial) -> tuple:
    """
    Sort key realizing grevlex: larger key means larger monomial.

    Degree first, then the reversed, negated exponents so that the last
    nonzero entry of a - b being negative makes a the larger one.
    """
    return (sum(a), tuple(-e for e in reversed(a)))


def grevlex_cmp(a: Monomial, b: Monomial) -> Ordering:
    """Compare two monomials in grevlex."""
    _check(a, b)
    da, db = sum(a), sum(b)
    if da != db:
        return Ordering.GREATER if da > db else Ordering.LESS
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return Ordering.GREATER if x < y else Ordering.LESS
    return Ordering.EQUAL


def mul(a: Monomial, b: Monomial) -> Monomial:
    _check(a, b)
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    """True iff a divides b."""
    _check(a, b)
    return all(x <= y for x, y in zip(a, b))


def quotient(a: Monomial, b: Monomial) -> Monomial:
    """Return a / b; requires b | a."""
    _check(a, b)
    q = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in q):
        raise DivisibilityError(f"{b} does not divide {a}")
    return q


def lcm(a: Monomial, b: Monomial) -> Monomial:
    _check(a, b)
    return tuple(x if x > y else y for x, y in zip(a, b))


def gcd(a: Monomial, b: Monomial) -> Monomial:
    _check(a, b)
    return tuple(x if x < y else y for x, y in zip(a, b))


def is_coprime(a: Monomial, b: Monomial) -> bool:
    """True iff gcd(a, b) = 1."""
    _check(a, b)
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def support(a: Monomial) -> frozenset:
    """Indices of the variables occurring in a."""
    return frozenset(i for i, e in enumerate(a) if e)
