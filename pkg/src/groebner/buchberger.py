"""
Buchberger's algorithm with pluggable pair selection.

`BuchbergerState` is the mutable state shared by batch runs and the
reinforcement learning environment; `buchberger` drives it to completion
and `reduce_basis` turns the result into the unique reduced minimal basis.
"""

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra import Polynomial, divides, grevlex_key, reduce, s_polynomial
from ..core import GroebnerConstants, InvalidArgumentError, InvalidStateError, get_logger
from .pairs import SPair, update
from .stats import deg_max, dimension
from .strategies import PairSelector, get_strategy

logger = get_logger("buchberger")


@dataclass(frozen=True)
class PairOutcome:
    """Result of processing one pair."""

    pair: SPair
    additions: int
    remainder: Polynomial
    p_before: int

    @property
    def reward(self) -> int:
        return -self.additions


@dataclass
class BuchbergerState:
    G: List[Polynomial]
    sugar_of: List[int]
    P: List[SPair]
    additions_total: int = 0
    pairs_processed: int = 0
    zero_reductions: int = 0
    pair_additions: List[int] = field(default_factory=list)
    next_seq: int = 0
    elimination: str = GroebnerConstants.GEBAUER_MOELLER
    _s_cache: Dict[Tuple[int, int], Polynomial] = field(default_factory=dict, repr=False)

    @classmethod
    def from_generators(
        cls,
        F: Sequence[Polynomial],
        elimination: str = GroebnerConstants.GEBAUER_MOELLER,
    ) -> "BuchbergerState":
        """Insert the input generators one at a time through the pair update."""
        if not F:
            raise InvalidArgumentError("ideal must have at least one generator")
        if any(f.is_zero for f in F):
            raise InvalidArgumentError("input generators must be nonzero")
        for f in F[1:]:
            F[0]._check_ring(f)

        state = cls(G=[], sugar_of=[], P=[], elimination=elimination)
        for f in F:
            state.add_generator(f, f.degree)
        logger.debug(f"Initial state: {len(state.G)} generators, {len(state.P)} pairs")
        return state

    @property
    def n(self) -> int:
        return self.G[0].n

    @property
    def p(self) -> int:
        return self.G[0].p

    @property
    def leads(self) -> list:
        return [g.lm for g in self.G]

    @property
    def done(self) -> bool:
        return not self.P

    def add_generator(self, r: Polynomial, sugar: int):
        self.P, self.next_seq = update(
            self.P,
            self.leads,
            self.sugar_of,
            r.lm,
            sugar,
            self.next_seq,
            self.elimination,
        )
        self.G.append(r)
        self.sugar_of.append(sugar)

    def s_polynomial(self, pair: SPair) -> Polynomial:
        """S-polynomial of a pair, cached since generators never change."""
        key = pair.indices
        s = self._s_cache.get(key)
        if s is None:
            s = s_polynomial(self.G[pair.i], self.G[pair.j])
            self._s_cache[key] = s
        return s

    def process(self, index: int) -> PairOutcome:
        """
        Remove P[index], reduce its S-polynomial and update the state.

        Costs one addition for forming the S-polynomial plus one per
        reduction step. A nonzero remainder becomes a new generator.
        """
        if not 0 <= index < len(self.P):
            raise InvalidStateError(f"pair index {index} out of range for {len(self.P)} pairs")
        p_before = len(self.P)
        pair = self.P.pop(index)
        s = self.s_polynomial(pair)
        del self._s_cache[pair.indices]

        if s.is_zero:
            additions, remainder = 1, s
        else:
            result = reduce(s, self.G, self.sugar_of, pair.sugar)
            additions, remainder = 1 + result.additions, result.remainder
            if not remainder.is_zero:
                self.add_generator(remainder, result.sugar)

        if remainder.is_zero:
            self.zero_reductions += 1
        self.additions_total += additions
        self.pairs_processed += 1
        self.pair_additions.append(additions)
        return PairOutcome(pair, additions, remainder, p_before)

    def copy(self) -> "BuchbergerState":
        """Independent copy; polynomials are immutable and shared."""
        return BuchbergerState(
            G=list(self.G),
            sugar_of=list(self.sugar_of),
            P=list(self.P),
            additions_total=self.additions_total,
            pairs_processed=self.pairs_processed,
            zero_reductions=self.zero_reductions,
            pair_additions=list(self.pair_additions),
            next_seq=self.next_seq,
            elimination=self.elimination,
            _s_cache=dict(self._s_cache),
        )


@dataclass
class RunStats:
    additions: int = 0
    pairs_processed: int = 0
    zero_reductions: int = 0
    basis_size: int = 0
    deg_max: int = 0
    dimension: Optional[int] = None
    truncated: bool = False
    # generator count before minimalization
    generators: int = 0
    pair_additions: List[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "additions": self.additions,
            "pairs_processed": self.pairs_processed,
            "zero_reductions": self.zero_reductions,
            "basis_size": self.basis_size,
            "deg_max": self.deg_max,
            "dimension": self.dimension,
            "truncated": self.truncated,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def run(
    state: BuchbergerState,
    strategy,
    rng: Optional[np.random.Generator] = None,
    max_steps: Optional[int] = None,
) -> bool:
    """
    Process pairs until the pair set is empty or max_steps is reached.

    Returns:
        True if the run stopped at the step cap with pairs remaining
    """
    selector: PairSelector = get_strategy(strategy)
    if selector.needs_rng and rng is None:
        raise InvalidArgumentError(f"strategy {selector.name!r} requires an rng")
    steps = 0
    while state.P:
        if max_steps is not None and steps >= max_steps:
            return True
        state.process(selector.choose(state, rng))
        steps += 1
    return False


def stats_for(state: BuchbergerState, truncated: bool) -> Tuple[List[Polynomial], RunStats]:
    """Collect RunStats for a finished or truncated state."""
    stats = RunStats(
        additions=state.additions_total,
        pairs_processed=state.pairs_processed,
        zero_reductions=state.zero_reductions,
        truncated=truncated,
        generators=len(state.G),
        pair_additions=list(state.pair_additions),
    )
    G = list(state.G)
    if truncated:
        stats.basis_size = len(G)
        stats.deg_max = deg_max(G)
    else:
        reduced = reduce_basis(G)
        stats.basis_size = len(reduced)
        stats.deg_max = deg_max(reduced)
        stats.dimension = dimension([g.lm for g in reduced], state.n)
    return G, stats


def buchberger(
    F: Sequence[Polynomial],
    strategy="degree",
    rng: Optional[np.random.Generator] = None,
    max_steps: Optional[int] = None,
    elimination: str = GroebnerConstants.GEBAUER_MOELLER,
) -> Tuple[List[Polynomial], RunStats]:
    """
    Compute a Groebner basis of the ideal generated by F.

    Args:
        F: Nonzero input generators
        strategy: Strategy name or PairSelector
        rng: Random generator, required by random and learned selection
        max_steps: Optional cap on processed pairs
        elimination: "gebauer_moeller" or "naive"

    Returns:
        (G, stats) where G is the unreduced basis, or the partial
        generating set when the cap was hit
    """
    state = BuchbergerState.from_generators(list(F), elimination)
    truncated = run(state, strategy, rng, max_steps)
    if truncated:
        logger.warning(f"Buchberger run truncated after {state.pairs_processed} pairs")
    G, stats = stats_for(state, truncated)
    logger.debug(f"Buchberger finished: {stats.to_dict()}")
    return G, stats


def reduce_basis(G: Sequence[Polynomial]) -> List[Polynomial]:
    """
    Unique reduced minimal Groebner basis from a Groebner basis.

    A generator whose lead is divisible by another lead is replaced by its
    remainder modulo the others (on a Groebner basis that remainder is 0).
    Then every tail is reduced by the others, everything is made monic and
    the result is sorted by leading monomial, largest first.
    """
    minimal: List[Polynomial] = sorted(
        (g.monic() for g in G if not g.is_zero),
        key=lambda g: grevlex_key(g.lm),
    )
    changed = True
    while changed:
        changed = False
        for k, g in enumerate(minimal):
            others = minimal[:k] + minimal[k + 1:]
            if any(divides(h.lm, g.lm) for h in others):
                remainder = reduce(g, others).remainder
                minimal = others + ([remainder.monic()] if not remainder.is_zero else [])
                changed = True
                break

    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        reduced.append(reduce(g, others).remainder.monic())
    reduced.sort(key=lambda g: grevlex_key(g.lm), reverse=True)
    return reduced
