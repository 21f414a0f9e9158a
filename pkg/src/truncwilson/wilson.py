"""Nontrivial solutions of (p-1)(p-2)...(p-r) = -1 (mod p).

Two counting paths are provided.  The full scan walks r = 2..p-3 with one
modular multiplication per step and is kept as the reference.  The half scan
stops at r = (p-3)/2 and recovers the upper half from the pairing
T_r * T_{p-r-1} = (-1)^(r+1), adding the self-paired middle index separately.

Kernel selection by modulus size:

* p < 2^26: products of two residues are exact in a double, so the half scan
  reduces with a floating reciprocal and interleaves 16 primes to hide latency;
* p < 2^31: products fit in int64 and the hardware remainder is used;
* larger p: Python integers.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import DomainError
from .primes import PrimeRange, is_prime, primes_in
from .stats import Histogram, merge_all

log = logging.getLogger(__name__)

FLOAT_LIMIT = 1 << 26
WORD_LIMIT = 1 << 31
LANES = 16
ENGINES = ("full", "half")


@dataclass(frozen=True)
class SolutionProfile:
    p: int
    count: int
    solutions: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.solutions is not None and len(self.solutions) != self.count:
            raise ValueError("count disagrees with solution list")


# ------------------------------------------------------------------ kernels


@njit(cache=True, nogil=True)
def _products_word(p, upto):
    out = np.empty(upto + 1, dtype=np.int64)
    t = 1
    out[0] = 1
    for r in range(1, upto + 1):
        t = t * (p - r) % p
        out[r] = t
    return out


@njit(cache=True, nogil=True)
def _full_count_word(p):
    t = p - 1
    c = 0
    for r in range(2, p - 2):
        t = t * (p - r) % p
        if t == p - 1:
            c += 1
    return c


@njit(cache=True, nogil=True)
def _full_counts_word(ps, out):
    for i in range(ps.size):
        p = ps[i]
        out[i] = _full_count_word(p) if p >= 5 else 0


@njit(cache=True, nogil=True)
def _half_count_word(p):
    half = (p - 3) // 2
    t = p - 1
    c = 0
    for r in range(2, half + 1):
        t = t * (p - r) % p
        if r & 1:
            if t == p - 1:
                c += 2
        elif t == 1 or t == p - 1:
            c += 1
    t = t * (p - half - 1) % p
    if t == p - 1:
        c += 1
    return c


@njit(cache=True, nogil=True, inline="always")
def _mulmod_f(x, y, p, inv):
    z = x * y
    t = z - np.floor(z * inv) * p
    if t < 0.0:
        t += p
    elif t >= p:
        t -= p
    return t


@njit(cache=True, nogil=True)
def _half_finish_f(p, t, m, r0, c):
    # continue one prime from index r0 with T_{r0-1} = t and next factor m
    half = (int(p) - 3) // 2
    inv = 1.0 / p
    for r in range(r0, half + 1):
        t = _mulmod_f(t, m, p, inv)
        m -= 1.0
        if r & 1:
            if t == p - 1.0:
                c += 2
        elif t == 1.0 or t == p - 1.0:
            c += 1
    t = _mulmod_f(t, m, p, inv)
    if t == p - 1.0:
        c += 1
    return c


@njit(cache=True, nogil=True)
def _half_counts_float(ps, out):
    # ps ascending, 5 <= p < 2^26
    n = ps.size
    T = np.empty(LANES)
    P = np.empty(LANES)
    INV = np.empty(LANES)
    M = np.empty(LANES)
    C = np.zeros(LANES, dtype=np.int64)
    g = 0
    while g + LANES <= n:
        for j in range(LANES):
            P[j] = float(ps[g + j])
            INV[j] = 1.0 / P[j]
            T[j] = P[j] - 1.0
            M[j] = P[j] - 2.0
            C[j] = 0
        shared = (ps[g] - 3) // 2
        for r in range(2, shared + 1):
            for j in range(LANES):
                z = T[j] * M[j]
                t = z - np.floor(z * INV[j]) * P[j]
                t = t + P[j] if t < 0.0 else t
                T[j] = t - P[j] if t >= P[j] else t
                M[j] -= 1.0
            if r & 1:
                for j in range(LANES):
                    C[j] += 2 * (T[j] == P[j] - 1.0)
            else:
                for j in range(LANES):
                    C[j] += (T[j] == 1.0) | (T[j] == P[j] - 1.0)
        for j in range(LANES):
            out[g + j] = _half_finish_f(P[j], T[j], M[j], max(shared + 1, 2), C[j])
        g += LANES
    for i in range(g, n):
        p = float(ps[i])
        out[i] = _half_finish_f(p, p - 1.0, p - 2.0, 2, 0)


# --------------------------------------------------------------- python path


def _full_count_py(p: int) -> int:
    t, c = p - 1, 0
    for r in range(2, p - 2):
        t = t * (p - r) % p
        c += t == p - 1
    return c


def _half_count_py(p: int) -> int:
    half = (p - 3) // 2
    t, c = p - 1, 0
    for r in range(2, half + 1):
        t = t * (p - r) % p
        if r & 1:
            c += 2 * (t == p - 1)
        else:
            c += t == 1 or t == p - 1
    t = t * (p - half - 1) % p
    return c + (t == p - 1)


# ------------------------------------------------------------------ public


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def truncated_products(p: int, upto: int | None = None) -> np.ndarray:
    """Array whose entry r is (p-1)(p-2)...(p-r) mod p, for r = 0..upto (default p-1)."""
    if not 2 <= p < WORD_LIMIT:
        raise DomainError(f"modulus {p} outside [2, 2^31)")
    upto = p - 1 if upto is None else upto
    if not 0 <= upto <= p - 1:
        raise ValueError(f"index {upto} outside [0, {p - 1}]")
    return _products_word(p, upto)


def truncated_product(p: int, r: int) -> int:
    """T_r = (p-1)...(p-r) mod p for a single index, any modulus size."""
    if not 0 <= r <= p - 1:
        raise ValueError(f"index {r} outside [0, {p - 1}]")
    t = 1 % p
    for j in range(1, r + 1):
        t = t * (p - j) % p
    return t


def count_solutions_full(p: int, record: bool = False) -> SolutionProfile:
    """Reference count: scan every r in [2, p-3]."""
    _check_prime(p)
    if p < 5:
        return SolutionProfile(p, 0, () if record else None)
    if record:
        t = truncated_products(p)
        sols = tuple(int(r) for r in np.flatnonzero(t[: p - 2] == p - 1) if r >= 2)
        return SolutionProfile(p, len(sols), sols)
    count = _full_count_word(p) if p < WORD_LIMIT else _full_count_py(p)
    return SolutionProfile(p, int(count))


def _half_solutions(p: int) -> tuple[int, ...]:
    mid = (p - 1) // 2
    t = truncated_products(p, mid)
    sols = []
    for r in range(2, mid):
        if t[r] == p - 1:
            sols.append(r)
            if r & 1:
                sols.append(p - 1 - r)
        elif t[r] == 1 and not r & 1:
            sols.append(p - 1 - r)
    if t[mid] == p - 1:
        sols.append(mid)
    return tuple(sorted(sols))


def count_solutions_half(p: int, record: bool = False) -> SolutionProfile:
    """Production count: scan r < (p-1)/2 and use the r <-> p-r-1 pairing.

    Primes 2 and 3 have no nontrivial indices and are answered directly.
    """
    _check_prime(p)
    if p < 5:
        return SolutionProfile(p, 0, () if record else None)
    if record:
        sols = _half_solutions(p)
        return SolutionProfile(p, len(sols), sols)
    if p < FLOAT_LIMIT:
        out = np.zeros(1, dtype=np.int64)
        _half_counts_float(np.array([p], dtype=np.int64), out)
        count = out[0]
    elif p < WORD_LIMIT:
        count = _half_count_word(p)
    else:
        count = _half_count_py(p)
    return SolutionProfile(p, int(count))


def solution_counts(primes: np.ndarray, engine: str = "half") -> np.ndarray:
    """Solution count for each prime of an ascending int64 array."""
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    out = np.zeros(primes.size, dtype=np.int64)
    small = primes < FLOAT_LIMIT
    word = (primes >= FLOAT_LIMIT) & (primes < WORD_LIMIT)
    big = primes >= WORD_LIMIT
    if engine == "full":
        sel = small | word
        tmp = np.zeros(int(sel.sum()), dtype=np.int64)
        _full_counts_word(primes[sel], tmp)
        out[sel] = tmp
        out[big] = [_full_count_py(int(p)) for p in primes[big]]
        return out
    body = small & (primes >= 5)
    tmp = np.zeros(int(body.sum()), dtype=np.int64)
    _half_counts_float(primes[body], tmp)
    out[body] = tmp
    out[word] = [_half_count_word(int(p)) for p in primes[word]]
    out[big] = [_half_count_py(int(p)) for p in primes[big]]
    return out


def segment_histogram(rng: PrimeRange, engine: str = "half") -> Histogram:
    """Histogram of solution counts over the primes of one range."""
    counts = solution_counts(primes_in(rng).items, engine)
    tally = np.bincount(counts) if counts.size else np.zeros(0, dtype=np.int64)
    return Histogram.from_range(rng, {n: int(c) for n, c in enumerate(tally) if c})


def solutions_histogram(
    rng: PrimeRange,
    engine: str = "half",
    segment_size: int | None = None,
    threads: int = 1,
    on_segment: Callable[[PrimeRange, Histogram], None] | None = None,
) -> Histogram:
    """Histogram of N over every prime of ``rng``, optionally split into segments.

    Segments run on a thread pool (the kernels release the GIL); the merge is
    a pointwise sum, so the result does not depend on the split or thread count.
    """
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    if threads < 1:
        raise ValueError("threads must be positive")
    segments = rng.split(segment_size) if segment_size else [rng]
    if not segments:
        return Histogram.from_range(rng, {})

    def run(seg: PrimeRange) -> Histogram:
        h = segment_histogram(seg, engine)
        if on_segment is not None:
            on_segment(seg, h)
        return h

    if threads == 1:
        parts = [run(s) for s in segments]
    else:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(run, segments))
    return merge_all(parts)
