"""Prime generation over 62-bit ranges.

Primes are produced by an odd-only segmented sieve of Eratosthenes.  Very
narrow windows high up in the range, where collecting the base primes would
cost far more than the window itself, fall back to the deterministic
Miller-Rabin test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Iterator

import numpy as np
from numba import njit

from .errors import CapacityError

CAPACITY = 1 << 62
SEGMENT_ODDS = 1 << 20

# Deterministic for every n < 3.3e24, which covers the whole capacity range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_SIEVE_LIMIT = 1 << 22


@dataclass(frozen=True)
class PrimeRange:
    """Half-open integer range ``[lo, hi)``."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 0 or self.hi < 0:
            raise ValueError(f"negative bound in [{self.lo}, {self.hi})")
        if self.lo >= CAPACITY or self.hi >= CAPACITY:
            raise CapacityError(f"range [{self.lo}, {self.hi}) exceeds 2^62")
        if self.lo > self.hi:
            raise ValueError(f"reversed range: lo={self.lo} > hi={self.hi}")

    def __len__(self) -> int:
        return self.hi - self.lo

    def split(self, size: int) -> list[PrimeRange]:
        """Consecutive subranges of at most ``size`` integers."""
        if size < 1:
            raise ValueError("segment size must be positive")
        return [PrimeRange(s, min(s + size, self.hi)) for s in range(self.lo, self.hi, size)]


@dataclass(frozen=True)
class PrimeStream:
    """Ascending primes of ``range``, optionally restricted to one class mod 4."""

    range: PrimeRange
    residue_filter: int | None
    items: np.ndarray = field(repr=False)

    def __iter__(self) -> Iterator[int]:
        return (int(p) for p in self.items)

    def __len__(self) -> int:
        return int(self.items.size)

    def tolist(self) -> list[int]:
        return self.items.tolist()


def is_prime(n: int) -> bool:
    """Deterministic primality test for ``0 <= n < 2^62``."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n < 41 * 41:
        return True
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def _small_primes(limit: int) -> np.ndarray:
    """All primes < limit from a plain odd-only sieve."""
    if limit <= 2:
        return np.zeros(0, dtype=np.int64)
    # index i stands for 2*i + 1
    flags = np.ones((limit + 1) // 2, dtype=np.bool_)
    flags[0] = False
    for i in range(1, (isqrt(limit - 1) - 1) // 2 + 1):
        if flags[i]:
            q = 2 * i + 1
            flags[q * q // 2 :: q] = False
    odd = 2 * np.flatnonzero(flags).astype(np.int64) + 1
    return np.concatenate([np.array([2], dtype=np.int64), odd])


def _base_primes(limit: int) -> np.ndarray:
    """Odd primes < limit, used to cross off composites in a segment."""
    if limit <= _SMALL_SIEVE_LIMIT:
        ps = _small_primes(limit)
    else:
        ps = primes_in(PrimeRange(2, limit)).items
    return ps[1:]


@njit(cache=True, nogil=True)
def _cross_off(flags, start, base):
    # flags[i] stands for start + 2*i; start odd
    n = flags.size
    top = start + 2 * n
    for q in base:
        qq = q * q
        if qq >= top:
            break
        m = qq if qq >= start else ((start + q - 1) // q) * q
        if m % 2 == 0:
            m += q
        for i in range((m - start) // 2, n, q):
            flags[i] = False


def _sieve_window(lo: int, hi: int, base: np.ndarray, segment_odds: int) -> Iterator[np.ndarray]:
    if lo <= 2 < hi:
        yield np.array([2], dtype=np.int64)
    start = max(lo, 3) | 1
    while start < hi:
        n = min(segment_odds, (hi - start + 1) // 2)
        flags = np.ones(n, dtype=np.bool_)
        _cross_off(flags, start, base)
        yield start + 2 * np.flatnonzero(flags).astype(np.int64)
        start += 2 * n


def _trial_window(lo: int, hi: int) -> Iterator[np.ndarray]:
    found = [n for n in range(lo, hi) if is_prime(n)]
    yield np.array(found, dtype=np.int64)


def iter_prime_segments(
    rng: PrimeRange, segment_odds: int = SEGMENT_ODDS
) -> Iterator[np.ndarray]:
    """Yield ascending int64 arrays whose concatenation is every prime in ``rng``."""
    if segment_odds < 1:
        raise ValueError("segment_odds must be positive")
    lo, hi = rng.lo, rng.hi
    if hi <= max(lo, 2):
        return
    root = isqrt(hi - 1)
    if root > _SMALL_SIEVE_LIMIT and (hi - lo) * 64 < root:
        yield from _trial_window(lo, hi)
        return
    yield from _sieve_window(lo, hi, _base_primes(root + 1), segment_odds)


def primes_in(rng: PrimeRange, segment_odds: int = SEGMENT_ODDS) -> PrimeStream:
    """Every prime p with ``rng.lo <= p < rng.hi``, ascending."""
    parts = list(iter_prime_segments(rng, segment_odds))
    items = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    return PrimeStream(rng, None, items)


def primes_3mod4_in(rng: PrimeRange, segment_odds: int = SEGMENT_ODDS) -> PrimeStream:
    """Primes of ``rng`` congruent to 3 mod 4."""
    items = primes_in(rng, segment_odds).items
    return PrimeStream(rng, 3, items[items % 4 == 3])


def primes_1mod4_in(rng: PrimeRange, segment_odds: int = SEGMENT_ODDS) -> PrimeStream:
    items = primes_in(rng, segment_odds).items
    return PrimeStream(rng, 1, items[items % 4 == 1])
