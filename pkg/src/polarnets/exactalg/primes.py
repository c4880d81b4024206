"""Seeded choice of word-size primes."""

from __future__ import annotations

import random

from sympy import isprime, nextprime

DEFAULT_PRIME = 2147483629


def random_prime(rng: random.Random, bits: int = 31, residue: tuple[int, int] | None = None) -> int:
    """A random ``bits``-bit prime, optionally with ``p % m == r`` for ``residue=(r, m)``."""
    lo, hi = 1 << (bits - 1), (1 << bits) - 1
    while True:
        p = nextprime(rng.randrange(lo, hi))
        if p > hi:
            continue
        if residue is None or p % residue[1] == residue[0]:
            return p


def check_prime(p: int) -> int:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    return p
