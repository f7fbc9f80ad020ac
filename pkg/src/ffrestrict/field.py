"""Odd prime field context with character lookup tables.

A :class:`FieldCtx` fixes the additive character e(t) = exp(2*pi*i*t/p) and
precomputes the quadratic-residue character eta (eta(0) = 0), so every hot
loop works off O(1) table lookups.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CharacteristicTwoUnsupported, DivisionByZero, NotPrime

PRIMALITY_LIMIT = 10**6


def is_prime(n: int) -> bool:
    """Deterministic trial division; intended for n <= 10**6."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """An odd prime p together with lookup tables for e(.) and eta(.).

    char_table[t] = exp(2*pi*i*t/p); eta_table[t] is +1 on nonzero squares,
    -1 on nonsquares, 0 at t = 0; inv_table[t] is the multiplicative inverse
    (inv_table[0] is 0 and must never be consumed).
    """

    p: int
    char_table: np.ndarray
    eta_table: np.ndarray
    inv_table: np.ndarray

    def e(self, t: int) -> complex:
        return complex(self.char_table[t % self.p])

    def eta(self, t: int) -> int:
        return int(self.eta_table[t % self.p])

    def inv(self, t: int) -> int:
        t %= self.p
        if t == 0:
            raise DivisionByZero(f"0 has no inverse mod {self.p}")
        return int(self.inv_table[t])

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p})"


@lru_cache(maxsize=None)
def make_field(p: int) -> FieldCtx:
    """Build the context for an odd prime p (p >= 3).

    Raises CharacteristicTwoUnsupported for even p and NotPrime for odd
    composites.  Contexts are cached, so repeated calls share tables.
    """
    if p % 2 == 0:
        raise CharacteristicTwoUnsupported(
            f"p={p}: even characteristic is excluded (closed forms divide by 4)"
        )
    if p > PRIMALITY_LIMIT:
        raise NotPrime(f"p={p} exceeds the primality-check limit {PRIMALITY_LIMIT}")
    if not is_prime(p):
        raise NotPrime(f"p={p} is not prime")

    t = np.arange(p)
    char_table = np.exp(2j * np.pi * t / p)
    eta_table = np.full(p, -1, dtype=np.int64)
    eta_table[(t * t) % p] = 1
    eta_table[0] = 0
    inv_table = np.zeros(p, dtype=np.int64)
    inv_table[1:] = [pow(int(v), p - 2, p) for v in t[1:]]
    return FieldCtx(p=p, char_table=char_table, eta_table=eta_table, inv_table=inv_table)


def additive_char(ctx: FieldCtx, t: int) -> complex:
    """e(t) = exp(2*pi*i*t/p)."""
    return ctx.e(t)


def quadratic_char(ctx: FieldCtx, t: int) -> int:
    """eta(t): +1 on nonzero squares, -1 on nonsquares, 0 at t = 0."""
    return ctx.eta(t)


def inv_scalar(ctx: FieldCtx, t: int) -> int:
    """Multiplicative inverse of t mod p; raises DivisionByZero at t = 0."""
    return ctx.inv(t)
