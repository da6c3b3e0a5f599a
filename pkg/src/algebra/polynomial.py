"""
Sparse polynomials over F_p in grevlex order, S-polynomials and the
multivariate division algorithm with polynomial-addition counting.

Terms are kept as a tuple of (coeff, monomial) pairs sorted strictly
decreasing in grevlex, so the leading term is always terms[0].
"""

import re
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from ..core import (
    DimensionError,
    FieldConstants,
    InvalidArgumentError,
    InvalidStateError,
    ParseError,
    get_logger,
)
from .field import FieldElement, get_field
from .monomial import Monomial, grevlex_key, lcm, quotient

logger = get_logger("polynomial")

_reduction_checks = False


def enable_reduction_checks(flag: bool = True):
    """Verify the remainder postcondition on every call to reduce (test mode)."""
    global _reduction_checks
    _reduction_checks = flag


class Term(NamedTuple):
    coeff: int
    monomial: Monomial


class Polynomial:
    """Immutable sparse polynomial over F_p."""

    __slots__ = ("terms", "n", "p")

    def __init__(self, terms: Iterable = (), n: int = None, p: int = FieldConstants.DEFAULT_PRIME):
        """
        Build a normalized polynomial from (coeff, monomial) pairs.

        Duplicate monomials are merged, zero coefficients dropped and terms
        sorted decreasing in grevlex.
        """
        combined = {}
        for coeff, mono in terms:
            mono = tuple(mono)
            if n is None:
                n = len(mono)
            elif len(mono) != n:
                raise DimensionError(f"term {mono} does not have {n} variables")
            if any(e < 0 for e in mono):
                raise InvalidArgumentError(f"negative exponent in {mono}")
            c = int(coeff) % p
            combined[mono] = (combined.get(mono, 0) + c) % p
        if n is None:
            raise InvalidArgumentError("variable count required for the zero polynomial")
        ordered = sorted(
            (Term(c, m) for m, c in combined.items() if c),
            key=lambda t: grevlex_key(t.monomial),
            reverse=True,
        )
        self.terms: Tuple[Term, ...] = tuple(ordered)
        self.n = n
        self.p = p

    @classmethod
    def _from_sorted(cls, terms: Sequence, n: int, p: int) -> "Polynomial":
        """Wrap terms already normalized and sorted (internal fast path)."""
        poly = cls.__new__(cls)
        poly.terms = tuple(terms)
        poly.n = n
        poly.p = p
        return poly

    @classmethod
    def zero(cls, n: int, p: int = FieldConstants.DEFAULT_PRIME) -> "Polynomial":
        return cls._from_sorted((), n, p)

    @classmethod
    def monomial(cls, mono: Monomial, coeff: int = 1, p: int = FieldConstants.DEFAULT_PRIME) -> "Polynomial":
        return cls([(coeff, mono)], len(mono), p)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _require_nonzero(self):
        if not self.terms:
            raise InvalidStateError("the zero polynomial has no leading term")

    @property
    def lead_term(self) -> Term:
        self._require_nonzero()
        return self.terms[0]

    @property
    def lm(self) -> Monomial:
        self._require_nonzero()
        return self.terms[0].monomial

    @property
    def lc(self) -> int:
        self._require_nonzero()
        return self.terms[0].coeff

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(t.monomial) for t in self.terms)

    @property
    def monomials(self) -> List[Monomial]:
        return [t.monomial for t in self.terms]

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.p, self.terms))

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, n={self.n}, p={self.p})"

    def __str__(self):
        return format_polynomial(self)

    def _check_ring(self, other: "Polynomial"):
        if self.n != other.n or self.p != other.p:
            raise DimensionError(
                f"polynomials live in different rings: (n={self.n}, p={self.p}) vs (n={other.n}, p={other.p})"
            )

    def mul_term(self, coeff: int, mono: Monomial) -> "Polynomial":
        """Return coeff * x^mono * self."""
        if len(mono) != self.n:
            raise DimensionError(f"monomial {mono} does not have {self.n} variables")
        c = int(coeff) % self.p
        if c == 0 or not self.terms:
            return Polynomial.zero(self.n, self.p)
        p = self.p
        # multiplying by a monomial preserves the grevlex order of terms
        return Polynomial._from_sorted(
            [Term(tc * c % p, tuple(a + b for a, b in zip(tm, mono))) for tc, tm in self.terms],
            self.n,
            p,
        )

    def scale(self, coeff: int) -> "Polynomial":
        return self.mul_term(coeff, (0,) * self.n)

    def monic(self) -> "Polynomial":
        """Scale so the leading coefficient is 1 (zero stays zero)."""
        if not self.terms:
            return self
        return self.scale(get_field(self.p).inv(self.lc))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        return Polynomial(list(self.terms) + list(other.terms), self.n, self.p)

    def __neg__(self) -> "Polynomial":
        return self.scale(self.p - 1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        return poly_sub_scaled(self, 1, (0,) * self.n, other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        p = self.p
        return Polynomial(
            [
                (a * b % p, tuple(x + y for x, y in zip(ma, mb)))
                for a, ma in self.terms
                for b, mb in other.terms
            ],
            self.n,
            p,
        )


def _sub_scaled_terms(r_terms: Sequence, c: int, m: Monomial, f_terms: Sequence, p: int) -> list:
    """Merge r - c*x^m*f on sorted term sequences."""
    out = []
    i, j = 0, 0
    len_r, len_f = len(r_terms), len(f_terms)
    neg_c = (-c) % p
    shifted = None
    key_r = key_f = None
    while i < len_r and j < len_f:
        if shifted is None:
            fc, fm = f_terms[j]
            shifted = (fc * neg_c % p, tuple(a + b for a, b in zip(fm, m)))
            key_f = grevlex_key(shifted[1])
        if key_r is None:
            key_r = grevlex_key(r_terms[i][1])
        if key_r > key_f:
            out.append(r_terms[i])
            i += 1
            key_r = None
        elif key_r < key_f:
            out.append(Term(shifted[0], shifted[1]))
            j += 1
            shifted = None
        else:
            s = (r_terms[i][0] + shifted[0]) % p
            if s:
                out.append(Term(s, shifted[1]))
            i += 1
            j += 1
            key_r = None
            shifted = None
    if i < len_r:
        out.extend(r_terms[i:])
    while j < len_f:
        fc, fm = f_terms[j]
        out.append(Term(fc * neg_c % p, tuple(a + b for a, b in zip(fm, m))))
        j += 1
    return out


def poly_sub_scaled(r: Polynomial, c, m: Monomial, f: Polynomial) -> Polynomial:
    """Return r - c * x^m * f; callers count it as one polynomial addition."""
    r._check_ring(f)
    if len(m) != r.n:
        raise DimensionError(f"monomial {m} does not have {r.n} variables")
    c = int(c.value if isinstance(c, FieldElement) else c) % r.p
    if c == 0 or f.is_zero:
        return r
    return Polynomial._from_sorted(_sub_scaled_terms(r.terms, c, m, f.terms, r.p), r.n, r.p)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """(x^gamma / LT(f)) f - (x^gamma / LT(g)) g with x^gamma = lcm(LM(f), LM(g))."""
    if f.is_zero or g.is_zero:
        raise InvalidArgumentError("S-polynomial of the zero polynomial")
    f._check_ring(g)
    field = get_field(f.p)
    gamma = lcm(f.lm, g.lm)
    f_part = f.mul_term(field.inv(f.lc), quotient(gamma, f.lm))
    return poly_sub_scaled(f_part, field.inv(g.lc), quotient(gamma, g.lm), g)


@dataclass(frozen=True)
class ReductionResult:
    remainder: Polynomial
    additions: int
    # sugar of the remainder when generator sugars were supplied
    sugar: Optional[int] = None


def _divisor_table(G: Sequence[Polynomial]) -> list:
    """Divisors sorted by grevlex-smallest leading monomial, then index."""
    table = []
    for k, g in enumerate(G):
        if g.is_zero:
            continue
        table.append((grevlex_key(g.lm), k, g.lm, get_field(g.p).inv(g.lc), g.terms))
    table.sort(key=lambda row: (row[0], row[1]))
    return [(lm, inv_lc, terms, k) for _, k, lm, inv_lc, terms in table]


def reduce(
    h: Polynomial,
    G: Sequence[Polynomial],
    sugars: Optional[Sequence[int]] = None,
    sugar: Optional[int] = None,
) -> ReductionResult:
    """
    Fully reduce h by G, counting every subtraction step.

    The divisor is the element of G whose leading monomial divides the
    current term and is smallest in grevlex, ties broken by lowest index.
    Reduction continues through the tail so no term of the remainder is
    divisible by any leading monomial of G.

    Args:
        h: Polynomial to reduce
        G: Divisors
        sugars: Optional sugar degree per element of G
        sugar: Sugar of h, required with sugars

    Returns:
        ReductionResult with the remainder, the addition count and the
        propagated sugar
    """
    for g in G:
        h._check_ring(g)
    if sugars is not None and sugar is None:
        sugar = h.degree

    divisors = _divisor_table(G)
    p = h.p
    r = list(h.terms)
    remainder = []
    additions = 0

    while r:
        c, m = r[0]
        for lm, inv_lc, g_terms, k in divisors:
            if all(x <= y for x, y in zip(lm, m)):
                q = tuple(y - x for x, y in zip(lm, m))
                r = _sub_scaled_terms(r, c * inv_lc % p, q, g_terms, p)
                additions += 1
                if sugars is not None:
                    sugar = max(sugar, sum(q) + sugars[k])
                break
        else:
            # terms after an irreducible lead are never touched again by it
            remainder.append(r[0])
            r = r[1:]

    result = Polynomial._from_sorted(remainder, h.n, p)
    if _reduction_checks:
        verify_reduced(result, G)
    logger.debug(f"Reduced polynomial with {len(h)} terms in {additions} additions")
    return ReductionResult(result, additions, sugar if sugars is not None else None)


def verify_reduced(remainder: Polynomial, G: Sequence[Polynomial]):
    """Raise if some term of remainder is divisible by a leading monomial of G."""
    leads = [g.lm for g in G if not g.is_zero]
    for _, m in remainder.terms:
        for lm in leads:
            if all(x <= y for x, y in zip(lm, m)):
                raise InvalidStateError(f"remainder term {m} is divisible by leading monomial {lm}")


def reduce_with_quotients(h: Polynomial, G: Sequence[Polynomial]) -> Tuple[List[Polynomial], Polynomial]:
    """
    Division that also records the quotient multipliers.

    Returns (quotients, remainder) with h = sum(q_k * G[k]) + remainder.
    Uses the same divisor choice as reduce; intended for membership checks.
    """
    divisors = _divisor_table(G)
    p, n = h.p, h.n
    quotients = [[] for _ in G]
    r = list(h.terms)
    remainder = []
    while r:
        c, m = r[0]
        for lm, inv_lc, g_terms, k in divisors:
            if all(x <= y for x, y in zip(lm, m)):
                q = tuple(y - x for x, y in zip(lm, m))
                coeff = c * inv_lc % p
                quotients[k].append((coeff, q))
                r = _sub_scaled_terms(r, coeff, q, g_terms, p)
                break
        else:
            remainder.append(r[0])
            r = r[1:]
    return (
        [Polynomial(qs, n, p) for qs in quotients],
        Polynomial._from_sorted(remainder, n, p),
    )


# --- text format -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(\^)|(\*)|([+-]))")
_EXPONENT = re.compile(r"\s*\^\s*(\d+)")
_DANGLING_CARET = re.compile(r"\s*\^")


def format_term(coeff: int, mono: Monomial) -> str:
    factors = []
    for i, e in enumerate(mono):
        if e == 1:
            factors.append(f"x{i}")
        elif e > 1:
            factors.append(f"x{i}^{e}")
    if not factors:
        return str(coeff)
    if coeff == 1:
        return "*".join(factors)
    return "*".join([str(coeff)] + factors)


def format_polynomial(f: Polynomial) -> str:
    """Render f as 'c*x0^e0*...' terms joined by '+'; zero prints as '0'."""
    if f.is_zero:
        return "0"
    return "+".join(format_term(c, m) for c, m in f.terms)


def parse_polynomial(text: str, n: int = None, p: int = FieldConstants.DEFAULT_PRIME, line: int = 1) -> Polynomial:
    """
    Parse the text format; unit coefficients and exponents may be omitted
    and '-' is accepted between terms.

    Args:
        text: Polynomial text such as '3*x0^2*x1+x2^5+7'
        n: Variable count (defaults to one more than the largest index seen)
        p: Field characteristic
        line: Line number reported in parse errors

    Raises:
        ParseError: With line and column of the offending character
    """
    pos = 0
    length = len(text)
    terms = []
    max_index = -1

    def error(message: str, at: int):
        raise ParseError(message, line=line, column=at + 1)

    def next_token(at: int):
        match = _TOKEN.match(text, at)
        if not match:
            if text[at:].strip() == "":
                return None, length
            stripped = at + (len(text[at:]) - len(text[at:].lstrip()))
            error(f"unexpected character {text[stripped]!r}", stripped)
        return match, match.end()

    if text.strip() == "":
        error("empty polynomial", 0)
    if text.strip() == "0":
        if n is None:
            raise ParseError("variable count required for the zero polynomial", line=line, column=1)
        return Polynomial.zero(n, p)

    sign = 1
    expect_term = True
    coeff = 1
    exps = {}
    seen_factor = False
    after_star = False

    def finish_term():
        nonlocal coeff, exps, seen_factor, sign
        terms.append((sign * coeff, dict(exps)))
        coeff, exps, seen_factor, sign = 1, {}, False, 1

    while True:
        match, new_pos = next_token(pos)
        if match is None:
            break
        start = match.start() + (len(match.group(0)) - len(match.group(0).lstrip()))
        number, var, caret, star, op = match.groups()
        if op is not None:
            if not expect_term:
                finish_term()
                expect_term = True
            elif after_star:
                error("operator after '*'", start)
            sign = -sign if op == "-" else sign
            pos = new_pos
            continue
        if star is not None:
            if not seen_factor:
                error("'*' without a preceding factor", start)
            expect_term = True
            seen_factor = False
            after_star = True
            pos = new_pos
            continue
        if caret is not None:
            error("'^' without a preceding variable", start)
        if not expect_term:
            error("missing '*' or '+' between factors", start)
        if number is not None:
            coeff = coeff * int(number)
            pos = new_pos
        else:
            index = int(var)
            exponent = 1
            pos = new_pos
            caret_match = _EXPONENT.match(text, pos)
            if caret_match:
                exponent = int(caret_match.group(1))
                pos = caret_match.end()
            elif _DANGLING_CARET.match(text, pos):
                error("exponent must be a non-negative integer", pos)
            exps[index] = exps.get(index, 0) + exponent
            max_index = max(max_index, index)
        seen_factor = True
        expect_term = False
        after_star = False

    if expect_term:
        error("polynomial ends with an operator", max(length - 1, 0))
    finish_term()

    if n is None:
        n = max(max_index + 1, 1)
    elif max_index >= n:
        raise ParseError(f"variable x{max_index} out of range for {n} variables", line=line, column=1)

    return Polynomial(
        [(c, tuple(e.get(i, 0) for i in range(n))) for c, e in terms],
        n,
        p,
    )
