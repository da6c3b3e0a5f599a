"""
Random ideal distributions.

Specs are written "n-d-s flavor", optionally followed by "lambda=x" for the
non-binomial model that adds a Poisson number of extra terms to each
binomial. All sampling goes through numpy Generators seeded with PCG64 so a
(spec, seed) pair reproduces an ideal exactly.
"""

import math
import re
from dataclasses import dataclass, field, replace
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra import Monomial, Polynomial, parse_polynomial
from ..core import DistributionConstants, FieldConstants, InvalidArgumentError, ParseError, get_logger

logger = get_logger("distributions")

_SPEC = re.compile(
    r"^\s*(\d+)\s*-\s*(\d+)\s*-\s*(\d+)"
    r"\s*(?:\(\s*(\w+)\s*\)|(\w+))?"
    r"(?:\s+lambda\s*=\s*([0-9]*\.?[0-9]+(?:[eE][-+]?\d+)?))?\s*$",
    re.IGNORECASE,
)


def make_rng(seed: int, attempt: int = 0) -> np.random.Generator:
    """
    The seeded generator every sampler uses.

    Redraws (attempt > 0) come from the child seed sequence with spawn key
    (attempt,), which never coincides with the first draw of another seed
    or with the list-seeded action and epoch streams.
    """
    if attempt:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(attempt,))))
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class DistributionSpec:
    n: int
    d: int
    s: int
    flavor: str = DistributionConstants.WEIGHTED
    extra_terms_lambda: Optional[float] = None
    p: int = FieldConstants.DEFAULT_PRIME

    def __post_init__(self):
        for name in ("n", "d", "s"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise InvalidArgumentError(f"distribution {name} must be a positive integer, got {value!r}")
        if self.flavor not in DistributionConstants.FLAVORS:
            raise InvalidArgumentError(f"unknown distribution flavor {self.flavor!r}")
        if self.extra_terms_lambda is not None and self.extra_terms_lambda < 0:
            raise InvalidArgumentError("extra_terms_lambda must be non-negative")
        # binomials need two distinct nonconstant monomials
        if sum(count_monomials(self.n, t) for t in range(1, self.d + 1)) < 2:
            raise InvalidArgumentError(
                f"distribution {self.n}-{self.d}-{self.s} has fewer than two nonconstant monomials"
            )

    @classmethod
    def parse(cls, text: str, p: int = FieldConstants.DEFAULT_PRIME) -> "DistributionSpec":
        """Parse '3-20-10 weighted', '3-20-10 (uniform)' or '3-20-10 weighted lambda=0.5'."""
        match = _SPEC.match(text)
        if not match:
            raise ParseError(f"cannot parse distribution {text!r}; expected 'n-d-s flavor'")
        n, d, s, paren_flavor, bare_flavor, lam = match.groups()
        flavor = (paren_flavor or bare_flavor or DistributionConstants.WEIGHTED).lower()
        if flavor not in DistributionConstants.FLAVORS:
            raise ParseError(f"unknown distribution flavor {flavor!r} in {text!r}")
        return cls(int(n), int(d), int(s), flavor, float(lam) if lam is not None else None, p)

    @property
    def is_binomial(self) -> bool:
        return not self.extra_terms_lambda

    def __str__(self):
        text = f"{self.n}-{self.d}-{self.s} {self.flavor}"
        if self.extra_terms_lambda is not None:
            text += f" lambda={self.extra_terms_lambda:g}"
        return text


@dataclass(frozen=True)
class IdealSample:
    generators: Tuple[Polynomial, ...]
    spec: DistributionSpec
    seed: int
    # redraw number within the seed, 0 for the first draw
    attempt: int = 0

    def to_dict(self) -> dict:
        record = {
            "spec": str(self.spec),
            "seed": self.seed,
            "generators": [str(g) for g in self.generators],
        }
        if self.attempt:
            record["attempt"] = self.attempt
        return record

    @classmethod
    def from_dict(cls, data: dict, p: int = FieldConstants.DEFAULT_PRIME) -> "IdealSample":
        try:
            spec = DistributionSpec.parse(data["spec"], p)
            seed = int(data["seed"])
            attempt = int(data.get("attempt", 0))
            texts = data["generators"]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed ideal record: {e}") from e
        generators = tuple(
            parse_polynomial(text, spec.n, spec.p, line=k + 1) for k, text in enumerate(texts)
        )
        return cls(generators, spec, seed, attempt)


# --- monomial sampling -----------------------------------------------------


def count_monomials(n: int, t: int) -> int:
    """Number of monomials of exact degree t in n variables."""
    return comb(t + n - 1, n - 1)


def unrank_monomial(rank: int, n: int, t: int) -> Monomial:
    """
    The rank-th monomial of degree t in n variables.

    Monomials are enumerated with the first exponent descending, then
    recursively on the remaining variables (stars and bars).
    """
    if not 0 <= rank < count_monomials(n, t):
        raise InvalidArgumentError(f"rank {rank} out of range for degree {t} in {n} variables")
    exponents = []
    remaining = t
    for i in range(n - 1):
        free = n - i - 1
        for e in range(remaining, -1, -1):
            block = comb(remaining - e + free - 1, free - 1)
            if rank < block:
                exponents.append(e)
                remaining -= e
                break
            rank -= block
    exponents.append(remaining)
    return tuple(exponents)


def random_monomial(flavor: str, n: int, d: int, rng: np.random.Generator) -> Monomial:
    """
    Sample a nonconstant monomial of degree at most d.

    weighted: degree uniform on 1..d, then uniform within that degree.
    uniform: uniform over all monomials of degree 1..d.
    """
    if d < 1:
        raise InvalidArgumentError(f"maximum degree must be at least 1, got {d}")
    if flavor == DistributionConstants.WEIGHTED:
        t = int(rng.integers(1, d + 1))
        rank = int(rng.integers(count_monomials(n, t)))
    elif flavor == DistributionConstants.UNIFORM:
        rank = int(rng.integers(comb(d + n, n) - 1))
        t = 1
        while rank >= count_monomials(n, t):
            rank -= count_monomials(n, t)
            t += 1
    else:
        raise InvalidArgumentError(f"unknown distribution flavor {flavor!r}")
    return unrank_monomial(rank, n, t)


def random_coefficient(p: int, rng: np.random.Generator) -> int:
    return int(rng.integers(1, p))


def poisson(lam: float, rng: np.random.Generator) -> int:
    """Poisson sample by inversion of the cumulative distribution."""
    u = rng.random()
    k = 0
    prob = math.exp(-lam)
    cumulative = prob
    while u > cumulative and prob > 0.0:
        k += 1
        prob *= lam / k
        cumulative += prob
    return k


def random_binomial(spec: DistributionSpec, rng: np.random.Generator) -> List[Tuple[int, Monomial]]:
    m1 = random_monomial(spec.flavor, spec.n, spec.d, rng)
    m2 = random_monomial(spec.flavor, spec.n, spec.d, rng)
    while m2 == m1:
        m2 = random_monomial(spec.flavor, spec.n, spec.d, rng)
    return [(random_coefficient(spec.p, rng), m1), (random_coefficient(spec.p, rng), m2)]


def random_binomial_ideal(spec: DistributionSpec, rng: np.random.Generator, seed: int = 0) -> IdealSample:
    """s random binomials c1*m1 + c2*m2 with m1 != m2."""
    generators = tuple(Polynomial(random_binomial(spec, rng), spec.n, spec.p) for _ in range(spec.s))
    return IdealSample(generators, spec, seed)


def random_nonbinomial_ideal(spec: DistributionSpec, rng: np.random.Generator, seed: int = 0) -> IdealSample:
    """
    Binomials with k ~ Poisson(lambda) extra terms each.

    Extra monomials come from the same distribution; a colliding monomial
    merges its coefficient, and a generator that cancels to zero is
    redrawn.
    """
    if not spec.extra_terms_lambda:
        raise InvalidArgumentError("non-binomial sampling needs a positive extra_terms_lambda")
    generators = []
    while len(generators) < spec.s:
        terms = random_binomial(spec, rng)
        for _ in range(poisson(spec.extra_terms_lambda, rng)):
            terms.append(
                (random_coefficient(spec.p, rng), random_monomial(spec.flavor, spec.n, spec.d, rng))
            )
        g = Polynomial(terms, spec.n, spec.p)
        if g.is_zero:
            logger.warning(f"Generator cancelled to zero in {spec}; resampling")
            continue
        generators.append(g)
    return IdealSample(tuple(generators), spec, seed)


def sample_ideal(spec: DistributionSpec, rng: np.random.Generator, seed: int = 0) -> IdealSample:
    if spec.is_binomial:
        return random_binomial_ideal(spec, rng, seed)
    return random_nonbinomial_ideal(spec, rng, seed)


@dataclass
class IdealGenerator:
    """
    Deterministic stream of ideals: sample k is drawn from PCG64(seed + k).

    `sample(k, attempt)` with attempt > 0 redraws sample k from a separate
    stream without touching the seeds of later samples.
    """

    spec: DistributionSpec
    seed: int = 0
    _counter: int = field(default=0, repr=False)

    def sample(self, index: int, attempt: int = 0) -> IdealSample:
        episode_seed = self.seed + index
        sample = sample_ideal(self.spec, make_rng(episode_seed, attempt), episode_seed)
        return replace(sample, attempt=attempt) if attempt else sample

    def samples(self, count: int, start: int = 0) -> List[IdealSample]:
        return [self.sample(start + k) for k in range(count)]

    def __iter__(self) -> Iterator[IdealSample]:
        return self

    def __next__(self) -> IdealSample:
        sample = self.sample(self._counter)
        self._counter += 1
        return sample


def parse_specs(texts: Sequence[str], p: int = FieldConstants.DEFAULT_PRIME) -> List[DistributionSpec]:
    return [t if isinstance(t, DistributionSpec) else DistributionSpec.parse(t, p) for t in texts]
