"""
Arithmetic in the prime field F_p.

Polynomials store raw integers in [0, p) for speed; `PrimeField` owns the
modular operations on those integers and `FieldElement` is the value type
exposed to callers that want operator syntax.
"""

from dataclasses import dataclass
from functools import lru_cache

from ..core import FieldConstants, FieldZeroDivisionError, InvalidArgumentError, get_logger

logger = get_logger("field")


def is_prime(p: int) -> bool:
    """Deterministic trial-division primality test (p is small)."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


class PrimeField:
    """The field Z/pZ."""

    __slots__ = ("p",)

    def __init__(self, p: int = FieldConstants.DEFAULT_PRIME):
        if not isinstance(p, int) or not is_prime(p):
            raise InvalidArgumentError(f"field characteristic must be prime, got {p!r}")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise FieldZeroDivisionError(f"0 has no inverse modulo {self.p}")
        return pow(a, -1, self.p)


@lru_cache(maxsize=None)
def get_field(p: int = FieldConstants.DEFAULT_PRIME) -> PrimeField:
    """Return the shared field instance for characteristic p."""
    return PrimeField(p)


@dataclass(frozen=True)
class FieldElement:
    """An element of F_p, always fully reduced."""

    value: int
    p: int = FieldConstants.DEFAULT_PRIME

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise InvalidArgumentError(f"cannot mix F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value + b) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value - b) % self.p, self.p)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement((b - self.value) % self.p, self.p)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value * b) % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement((-self.value) % self.p, self.p)

    def inverse(self) -> "FieldElement":
        return FieldElement(get_field(self.p).inv(self.value), self.p)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self * FieldElement(b, self.p).inverse()

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"
