"""
Pair selection strategies.

Each selector maps a Buchberger state to the index of the chosen pair in the
insertion-ordered pair list. `select` returns the pair itself.
"""

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Callable, Dict, Optional

import numpy as np

from ..algebra import grevlex_key
from ..core import GroebnerConstants, InvalidArgumentError, InvalidStateError, get_logger
from .pairs import SPair

if TYPE_CHECKING:
    from .buchberger import BuchbergerState

logger = get_logger("strategies")


def _first_key(pair: SPair) -> tuple:
    return (pair.j, pair.i)


class PairSelector(ABC):
    """Base class for selection strategies."""

    name: str = ""
    needs_rng: bool = False

    @abstractmethod
    def choose(self, state: "BuchbergerState", rng: Optional[np.random.Generator] = None) -> int:
        """Return the index into state.P of the selected pair."""

    def __repr__(self):
        return f"{type(self).__name__}()"


class KeySelector(PairSelector):
    """Selector picking the pair with the smallest sort key."""

    def key(self, state: "BuchbergerState", pair: SPair) -> tuple:
        raise NotImplementedError

    def choose(self, state, rng=None) -> int:
        if not state.P:
            raise InvalidStateError("cannot select from an empty pair set")
        return min(range(len(state.P)), key=lambda k: self.key(state, state.P[k]))


class FirstSelector(KeySelector):
    """Treat the pair set as a queue: smallest j, then smallest i."""

    name = GroebnerConstants.FIRST

    def key(self, state, pair):
        return _first_key(pair)


class DegreeSelector(KeySelector):
    name = GroebnerConstants.DEGREE

    def key(self, state, pair):
        return (pair.degree,) + _first_key(pair)


class NormalSelector(KeySelector):
    """Smallest lcm in grevlex."""

    name = GroebnerConstants.NORMAL

    def key(self, state, pair):
        return (grevlex_key(pair.lcm),) + _first_key(pair)


class SugarSelector(KeySelector):
    name = GroebnerConstants.SUGAR

    def key(self, state, pair):
        return (pair.sugar, grevlex_key(pair.lcm)) + _first_key(pair)


class TrueDegreeSelector(KeySelector):
    """
    Smallest total degree of the S-polynomial's leading monomial.

    The S-polynomial is computed for every candidate; a pair whose
    S-polynomial vanishes ranks as degree -1 and is chosen first.
    """

    name = GroebnerConstants.TRUE_DEGREE

    def key(self, state, pair):
        return (state.s_polynomial(pair).degree,) + _first_key(pair)


class MonomialFirstSelector(KeySelector):
    """Degree selection, but pairs whose S-polynomial is a monomial go first."""

    name = GroebnerConstants.MONOMIAL_FIRST

    def key(self, state, pair):
        is_monomial = len(state.s_polynomial(pair)) == 1
        return (0 if is_monomial else 1, pair.degree) + _first_key(pair)


class RandomSelector(PairSelector):
    name = GroebnerConstants.RANDOM
    needs_rng = True

    def choose(self, state, rng=None) -> int:
        if not state.P:
            raise InvalidStateError("cannot select from an empty pair set")
        if rng is None:
            raise InvalidArgumentError("random selection requires an rng")
        return int(rng.integers(len(state.P)))


class CallableSelector(PairSelector):
    """
    Adapter for externally driven selection, e.g. a learned policy.

    `chooser(state, rng)` must return a valid row index.
    """

    name = "learned"

    def __init__(self, chooser: Callable, needs_rng: bool = True):
        self._chooser = chooser
        self.needs_rng = needs_rng

    def choose(self, state, rng=None) -> int:
        if not state.P:
            raise InvalidStateError("cannot select from an empty pair set")
        index = int(self._chooser(state, rng))
        if not 0 <= index < len(state.P):
            raise InvalidStateError(f"selector returned row {index} for {len(state.P)} pairs")
        return index


_SELECTORS: Dict[str, type] = {
    cls.name: cls
    for cls in (
        FirstSelector,
        DegreeSelector,
        NormalSelector,
        SugarSelector,
        RandomSelector,
        TrueDegreeSelector,
        MonomialFirstSelector,
    )
}


def get_strategy(strategy) -> PairSelector:
    """Resolve a strategy name (case-insensitive) or pass through a selector."""
    if isinstance(strategy, PairSelector):
        return strategy
    if not isinstance(strategy, str):
        raise InvalidArgumentError(f"strategy must be a name or PairSelector, got {strategy!r}")
    try:
        return _SELECTORS[strategy.strip().lower()]()
    except KeyError:
        raise InvalidArgumentError(
            f"unknown strategy {strategy!r}; choose from {', '.join(GroebnerConstants.ALL_STRATEGIES)}"
        ) from None


def select(state: "BuchbergerState", strategy, rng: Optional[np.random.Generator] = None) -> SPair:
    """Return the pair chosen by strategy without removing it."""
    selector = get_strategy(strategy)
    return state.P[selector.choose(state, rng)]
