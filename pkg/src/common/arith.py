#
# arith.py
# exact integer number theory: primality, sieving, inverses, crt residues
#
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, NamedTuple

import numpy as np

from common.errors import InvalidModulusError, InvalidTripleError, NotInvertibleError

logger = logging.getLogger(__name__)

# a_k * q * r and friends must stay inside signed 64-bit arithmetic
MAX_PRODUCT = 1 << 40


def mod_inverse(a: int, m: int) -> int:
    """Return x in [1, m) with a*x = 1 (mod m)."""
    if m < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {m}")
    try:
        return pow(a % m, -1, m)
    except ValueError:
        raise NotInvertibleError(f"{a} is not invertible modulo {m} (gcd = {math.gcd(a, m)})")


def is_prime(n: int) -> bool:
    # deterministic trial division by 6j +- 1, enough up to the 2^40 cap
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    limit = math.isqrt(n)
    trial = 5
    while trial <= limit:
        if n % trial == 0 or n % (trial + 2) == 0:
            return False
        trial += 6
    return True


def primes_in(lo: int, hi: int) -> List[int]:
    """Ascending list of the primes in [lo, hi] (sieve of Eratosthenes)."""
    if lo < 0 or hi < lo:
        raise ValueError(f"need 0 <= lo <= hi, got lo={lo}, hi={hi}")
    if hi < 2:
        return []

    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for candidate in range(2, math.isqrt(hi) + 1):
        if sieve[candidate]:
            sieve[candidate * candidate::candidate] = False

    return [int(x) for x in np.flatnonzero(sieve[lo:]) + lo]


@dataclass(frozen=True, order=True)
class TernaryTriple:
    # three distinct odd primes, stored with p < q < r
    p: int
    q: int
    r: int

    def __post_init__(self):
        for name, value in (("p", self.p), ("q", self.q), ("r", self.r)):
            if not is_prime(value):
                raise InvalidTripleError(f"{name}={value} is not prime")
            if value == 2:
                raise InvalidTripleError("p = 2 is outside the ternary model, primes must be odd")
        if not (self.p < self.q < self.r):
            raise InvalidTripleError(
                f"triple must satisfy p < q < r, got ({self.p}, {self.q}, {self.r}); use TernaryTriple.of"
            )
        if self.p * self.q * self.r > MAX_PRODUCT:
            raise InvalidTripleError(f"pqr = {self.p * self.q * self.r} exceeds 2^40")

    @classmethod
    def of(cls, p: int, q: int, r: int) -> "TernaryTriple":
        """Validate and normalize any ordering of three primes."""
        values = [int(p), int(q), int(r)]
        if len(set(values)) != 3:
            raise InvalidTripleError(f"primes must be pairwise distinct, got {tuple(values)}")
        for value in values:
            if not is_prime(value):
                raise InvalidTripleError(f"{value} is not prime")
        low, mid, high = sorted(values)
        return cls(low, mid, high)

    @property
    def n(self) -> int:
        return self.p * self.q * self.r

    @property
    def degree(self) -> int:
        return (self.p - 1) * (self.q - 1) * (self.r - 1)

    def as_tuple(self):
        return (self.p, self.q, self.r)

    def __str__(self) -> str:
        return f"({self.p},{self.q},{self.r})"


class ResidueVector(NamedTuple):
    a_k: int
    b_k: int
    c_k: int


def crt_residues(triple: TernaryTriple, k: int) -> ResidueVector:
    """Unique (a_k, b_k, c_k) with k = a_k qr + b_k rp + c_k pq (mod pqr)."""
    p, q, r = triple.p, triple.q, triple.r
    # python's % is already the non-negative euclidean remainder for negative k
    return ResidueVector(
        a_k=(k * mod_inverse(q * r, p)) % p,
        b_k=(k * mod_inverse(r * p, q)) % q,
        c_k=(k * mod_inverse(p * q, r)) % r,
    )
