"""Coefficient domains: the rationals and prime fields.

Polynomials and matrices store *raw* coefficients for speed: ``int`` or
``Fraction`` over QQ, and plain ``int`` residues in ``[0, p)`` over GF(p).
The field object owns conversion and normalisation.  ``Mod`` is the public
scalar type for prime-field values handed to or returned from user code.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class DomainError(TypeError):
    """Raised when values from different coefficient domains are mixed."""


@dataclass(frozen=True, slots=True)
class Mod:
    """Residue class ``value mod p``."""

    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            object.__setattr__(self, "value", self.value % self.p)

    def _other(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise DomainError(f"cannot mix GF({self.p}) with GF({other.p})")
            return other.value
        if isinstance(other, bool) or not isinstance(other, int):
            raise DomainError(
                f"cannot mix GF({self.p}) with {type(other).__name__}; reduce explicitly"
            )
        return other % self.p

    def __add__(self, other):
        return Mod((self.value + self._other(other)) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Mod((self.value - self._other(other)) % self.p, self.p)

    def __rsub__(self, other):
        return Mod((self._other(other) - self.value) % self.p, self.p)

    def __mul__(self, other):
        return Mod(self.value * self._other(other) % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.value % self.p, self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Mod(self.value * pow(o, -1, self.p) % self.p, self.p)

    def __rtruediv__(self, other):
        return Mod(self._other(other), self.p) / self

    def __pow__(self, n: int):
        if n < 0:
            return Mod(pow(pow(self.value, -1, self.p), -n, self.p), self.p)
        return Mod(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Mod({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class RationalField:
    """The field QQ; raw elements are ``int`` or ``Fraction``."""

    characteristic = 0
    name = "QQ"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def convert(self, x):
        if isinstance(x, Mod):
            raise DomainError(f"cannot use a GF({x.p}) element over QQ")
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, str):
            return self.convert(Fraction(x))
        raise DomainError(f"cannot convert {type(x).__name__} to QQ")

    @staticmethod
    def normalize(x):
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return self.normalize(Fraction(a) / b)

    def inv(self, a):
        return self.div(1, a)

    def element(self, raw):
        return raw

    def random_element(self, rng: random.Random, bound: int = 9):
        return rng.randint(-bound, bound)

    def format(self, raw) -> str:
        return str(raw)


class PrimeField:
    """The prime field GF(p); raw elements are ints in ``[0, p)``."""

    name = "GF"

    def __init__(self, p: int):
        if p < 3:
            raise ValueError("prime must be odd")
        self.p = p
        self.characteristic = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def convert(self, x):
        p = self.p
        if isinstance(x, Mod):
            if x.p != p:
                raise DomainError(f"cannot use a GF({x.p}) element over GF({p})")
            return x.value
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, str):
            return self.convert(Fraction(x))
        raise DomainError(f"cannot convert {type(x).__name__} to GF({p})")

    def normalize(self, x):
        return x % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return a * pow(b, -1, self.p) % self.p

    def inv(self, a):
        return self.div(1, a)

    def element(self, raw):
        return Mod(raw, self.p)

    def random_element(self, rng: random.Random, bound: int | None = None):
        return rng.randrange(self.p)

    def format(self, raw) -> str:
        return str(raw)

    def cube_root_of_unity(self) -> int:
        """A primitive cube root of unity; requires p = 1 mod 3."""
        if self.p % 3 != 1:
            raise ValueError(f"GF({self.p}) has no primitive cube root of unity")
        e = (self.p - 1) // 3
        for g in range(2, self.p):
            z = pow(g, e, self.p)
            if z != 1:
                return z
        raise AssertionError("unreachable")


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def is_prime_field(field) -> bool:
    return isinstance(field, PrimeField)


def reduce_rational(x, field: PrimeField) -> int:
    """Explicit QQ -> GF(p) reduction of a raw rational."""
    return field.convert(x)
