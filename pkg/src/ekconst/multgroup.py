"""Arithmetic of the multiplicative group Z_q*: primality, primitive roots,
and the power-of-a-generator index sequence used to reorder character sums
into discrete Fourier transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Deterministic Miller-Rabin witness set, complete for all n < 2^64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

PRIME_LIMIT = 1 << 64


class NotPrimeError(ValueError):
    """Raised when an operation requiring an odd prime gets something else."""


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime q with a primitive root g and the index sequence a_k.

    a_seq[k] = g^k mod q for k = 0..q-2; it is a permutation of 1..q-1 and
    satisfies a_seq[k+m] = q - a_seq[k] with m = (q-1)/2 because g^m = q-1.
    """

    q: int
    g: int
    a_seq: np.ndarray = field(repr=False)
    m: int

    def fractions(self) -> np.ndarray:
        """Return a_k/q as float64, ordered by k."""
        return self.a_seq.astype(np.float64) / self.q


def is_prime(n: int) -> bool:
    """Deterministic primality verdict for 0 <= n < 2^64."""
    if n >= PRIME_LIMIT:
        raise OverflowError(f"{n} is outside the proven 64-bit witness domain")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """One nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed to split {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization; trial division to 10^6, then Pollard rho."""
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 7
    # wheel over 7, 11, 13, ... avoiding multiples of 2, 3, 5
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d < 10**6:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += increments[i]
        i = (i + 1) % 8
    stack = [n] if n > 1 else []
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if is_prime(v):
            factors[v] = factors.get(v, 0) + 1
            continue
        f = _pollard_rho(v)
        stack.extend((f, v // f))
    return factors


def primitive_root(q: int) -> int:
    """Smallest g >= 2 generating Z_q* for odd prime q."""
    if q < 3 or not is_prime(q):
        raise NotPrimeError(f"{q} is not an odd prime")
    cofactors = [(q - 1) // p for p in factorize(q - 1)]
    for g in range(2, q):
        if all(pow(g, e, q) != 1 for e in cofactors):
            return g
    raise ArithmeticError(f"no primitive root found for {q}")  # unreachable


def build_context(q: int) -> PrimeContext:
    """Build the PrimeContext for odd prime q (O(q) time and memory)."""
    g = primitive_root(q)
    a_seq = np.empty(q - 1, dtype=np.int64)
    v = 1
    for k in range(q - 1):
        a_seq[k] = v
        v = v * g % q
    return PrimeContext(q=q, g=g, a_seq=a_seq, m=(q - 1) // 2)
