"""
S-pairs, sugar bookkeeping and the pair-set update with Gebauer-Moeller
elimination (plus the naive union used for differential testing).
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from ..algebra import Monomial, divides, grevlex_key, is_coprime, lcm
from ..core import GroebnerConstants, InvalidArgumentError, get_logger

logger = get_logger("pairs")


@dataclass(frozen=True, slots=True)
class SPair:
    """A pair of generator indices i < j with cached lcm metadata."""

    i: int
    j: int
    lcm: Monomial
    degree: int
    sugar: int
    insertion_seq: int

    @property
    def indices(self) -> Tuple[int, int]:
        return (self.i, self.j)


def sugar_of_pair(lead_i: Monomial, sugar_i: int, lead_j: Monomial, sugar_j: int) -> int:
    """Sugar of S(g_i, g_j): the larger sugar of its two multiplied summands."""
    gamma = lcm(lead_i, lead_j)
    d = sum(gamma)
    return max(d - sum(lead_i) + sugar_i, d - sum(lead_j) + sugar_j)


def sugar_of_reduction(sugar: int, multiplier: Monomial, divisor_sugar: int) -> int:
    """Sugar after subtracting x^multiplier times a divisor of the given sugar."""
    return max(sugar, sum(multiplier) + divisor_sugar)


def make_pair(i: int, j: int, leads: Sequence[Monomial], sugars: Sequence[int], seq: int) -> SPair:
    if not i < j:
        raise InvalidArgumentError(f"pair indices must satisfy i < j, got ({i}, {j})")
    gamma = lcm(leads[i], leads[j])
    return SPair(
        i=i,
        j=j,
        lcm=gamma,
        degree=sum(gamma),
        sugar=sugar_of_pair(leads[i], sugars[i], leads[j], sugars[j]),
        insertion_seq=seq,
    )


def update(
    P: Sequence[SPair],
    leads: Sequence[Monomial],
    sugars: Sequence[int],
    r_lead: Monomial,
    r_sugar: int,
    next_seq: int,
    mode: str = GroebnerConstants.GEBAUER_MOELLER,
) -> Tuple[List[SPair], int]:
    """
    Pair set after appending a new generator r with leading monomial r_lead.

    `leads` and `sugars` describe the current generators, not including r;
    r receives index len(leads).

    Gebauer-Moeller mode:
      (a) drop old pairs whose lcm is divisible by LM(r) unless it equals
          lcm(i, r) or lcm(j, r);
      (b) among new pairs keep one representative (smallest index) per lcm
          and drop those whose lcm is divisible by a smaller kept lcm;
      (c) drop lcm classes containing a pair with coprime leading monomials.
    Naive mode returns P plus every pair (k, r).

    Returns:
        (new pair list in insertion order, next insertion sequence number)
    """
    if mode not in GroebnerConstants.ELIMINATION_MODES:
        raise InvalidArgumentError(f"unknown elimination mode {mode!r}")

    r_index = len(leads)
    all_leads = list(leads) + [r_lead]
    all_sugars = list(sugars) + [r_sugar]

    if mode == GroebnerConstants.NAIVE:
        kept = list(P)
        new_partners = list(range(r_index))
    else:
        kept = [
            pair
            for pair in P
            if not (
                divides(r_lead, pair.lcm)
                and pair.lcm != lcm(leads[pair.i], r_lead)
                and pair.lcm != lcm(leads[pair.j], r_lead)
            )
        ]

        classes = {}
        for k, lead in enumerate(leads):
            classes.setdefault(lcm(lead, r_lead), []).append(k)

        minimal_lcms = []
        new_partners = []
        for gamma in sorted(classes, key=grevlex_key):
            if any(divides(m, gamma) for m in minimal_lcms):
                continue
            minimal_lcms.append(gamma)
            if any(is_coprime(leads[k], r_lead) for k in classes[gamma]):
                continue
            new_partners.append(classes[gamma][0])
        new_partners.sort()

    for k in new_partners:
        kept.append(make_pair(k, r_index, all_leads, all_sugars, next_seq))
        next_seq += 1

    logger.debug(
        f"Pair update ({mode}): {len(P)} old, {len(new_partners)} new, {len(kept)} kept"
    )
    return kept, next_seq
