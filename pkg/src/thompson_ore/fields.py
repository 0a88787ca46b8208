"""Exact coefficient fields.

Three flavours are supported:

* ``Rationals`` -- elements are :class:`fractions.Fraction`.
* ``PrimeField(p)`` -- elements are ints in ``range(p)``.
* ``IndeterminateField(seed)`` -- a stand-in for a field of rational
  functions in named indeterminates.  Each name is sent to a seeded random
  element of a large prime field, so a computation in this field is the
  image of the symbolic computation under one evaluation homomorphism.
  Running the same check under several seeds certifies a polynomial
  identity up to a Schwartz-Zippel error bound (see :func:`certify`).
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

# largest prime below 2**31; products of two residues fit in a machine word
DEFAULT_PRIME = 2147483647


class FieldMismatchError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, bits: int = 31) -> int:
    """Uniform-ish random prime in ``[2**(bits-1), 2**bits)``."""
    while True:
        n = rng.randrange(2 ** (bits - 1), 2 ** bits) | 1
        if is_prime(n):
            return n


class Field:
    """Common interface; subclasses implement the arithmetic."""

    zero = 0
    one = 1

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def convert(self, x):
        """Map an int or Fraction into the field."""
        raise NotImplementedError

    def random_element(self, rng: random.Random, nonzero: bool = False):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, token: str):
        return self.convert(Fraction(token))

    def symbol(self, name: str):
        raise FieldMismatchError(f"indeterminate {name!r} needs an IndeterminateField")

    def descriptor(self) -> str:
        raise NotImplementedError

    def require_same(self, other: "Field") -> None:
        if self != other:
            raise FieldMismatchError(f"{self.descriptor()} vs {other.descriptor()}")


@dataclass(frozen=True)
class Rationals(Field):
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def convert(self, x):
        return Fraction(x)

    def random_element(self, rng, nonzero=False, height: int = 9):
        while True:
            x = Fraction(rng.randint(-height, height), rng.randint(1, height))
            if x or not nonzero:
                return x

    def format(self, a) -> str:
        return str(Fraction(a))

    def descriptor(self) -> str:
        return "q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def convert(self, x):
        if isinstance(x, Fraction):
            return x.numerator % self.p * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def random_element(self, rng, nonzero=False):
        return rng.randrange(1 if nonzero else 0, self.p)

    def format(self, a) -> str:
        # symmetric residue reads better for small signed coefficients
        return str(a - self.p if a > self.p // 2 else a)

    def descriptor(self) -> str:
        return f"fp:{self.p}"


@dataclass(frozen=True)
class IndeterminateField(PrimeField):
    """Prime field with a seeded evaluation of named indeterminates."""

    seed: int = 0
    names: tuple = field(default=(), compare=False)

    def symbol(self, name: str):
        h = hashlib.sha256(f"{self.seed}:{name}".encode()).digest()
        return int.from_bytes(h[:16], "big") % (self.p - 1) + 1

    def descriptor(self) -> str:
        if self.p == DEFAULT_PRIME:
            return f"generic:{self.seed}"
        return f"generic:{self.seed}:{self.p}"


def parse_field(text: str) -> Field:
    """``q``, ``fp:<p>`` or ``generic:<seed>[:<p>]``."""
    s = text.strip().lower()
    if s in ("q", "qq", "rationals"):
        return Rationals()
    kind, _, rest = s.partition(":")
    try:
        if kind == "fp":
            return PrimeField(int(rest))
        if kind == "generic":
            seed, _, p = rest.partition(":")
            return IndeterminateField(int(p) if p else DEFAULT_PRIME, int(seed))
    except ValueError as exc:
        raise ValueError(f"bad field descriptor {text!r}: {exc}") from None
    raise ValueError(f"bad field descriptor {text!r}")


@dataclass
class Certificate:
    """Outcome of a randomized identity check."""

    holds: bool
    seeds: list
    prime: int
    degree_bound: int
    failures: list = field(default_factory=list)

    @property
    def error_bound(self) -> float:
        """Probability that a false identity passed every evaluation."""
        if not self.holds:
            return 0.0
        return min(1.0, self.degree_bound / self.prime) ** len(self.seeds)


def certify(check: Callable[[IndeterminateField], bool], seeds: Sequence[int] = (1, 2, 3),
            degree_bound: int = 64, p: int = DEFAULT_PRIME) -> Certificate:
    """Run ``check`` under one evaluation homomorphism per seed.

    ``degree_bound`` is an upper bound for the total degree, in the
    indeterminates, of the identity being tested.
    """
    failures = [s for s in seeds if not check(IndeterminateField(p, s))]
    return Certificate(not failures, list(seeds), p, degree_bound, failures)
