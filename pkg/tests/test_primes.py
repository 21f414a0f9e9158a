import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from truncwilson.errors import CapacityError
from truncwilson.primes import (
    CAPACITY,
    PrimeRange,
    is_prime,
    iter_prime_segments,
    primes_3mod4_in,
    primes_in,
)

from conftest import trial_division


def test_small_window():
    assert primes_in(PrimeRange(10, 30)).tolist() == [11, 13, 17, 19, 23, 29]


def test_3mod4_small():
    assert primes_3mod4_in(PrimeRange(2, 10)).tolist() == [3, 7]


@pytest.mark.parametrize(
    "bound, count, count3",
    [(10, 4, 2), (100, 25, 13), (1000, 168, 87), (10**4, 1229, 619), (10**5, 9592, 4808)],
)
def test_counts(bound, count, count3):
    assert len(primes_in(PrimeRange(2, bound))) == count
    assert len(primes_3mod4_in(PrimeRange(2, bound))) == count3


def test_table2_count_at_ten_million():
    assert len(primes_3mod4_in(PrimeRange(2, 10**7))) == 332398


@pytest.mark.slow
def test_pi_1e8():
    assert len(primes_in(PrimeRange(2, 10**8))) == 5761455


@pytest.mark.parametrize("n, expected", [(0, False), (1, False), (2, True), (4, False),
                                         (99999989, True), (2**61 - 1, True), (2**61 + 1, False)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_trial_division():
    flags = [is_prime(n) for n in range(10**5)]
    sieve = set(primes_in(PrimeRange(0, 10**5)).tolist())
    for n in range(0, 10**5, 1):
        assert flags[n] == (n in sieve)
    for n in range(0, 5000):
        assert flags[n] == trial_division(n)


def test_strong_pseudoprimes_rejected():
    # strong pseudoprimes to several small bases
    for n in (2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383,
              341550071728321, 3825123056546413051):
        assert not is_prime(n)


def test_capacity():
    with pytest.raises(CapacityError):
        PrimeRange(2, CAPACITY)
    with pytest.raises(CapacityError):
        primes_in(PrimeRange(CAPACITY, CAPACITY + 1))
    with pytest.raises(ValueError):
        PrimeRange(5, 3)


def test_high_narrow_window_agrees_with_miller_rabin():
    lo, hi = CAPACITY - 3000, CAPACITY - 1
    got = primes_in(PrimeRange(lo, hi)).tolist()
    assert got == [n for n in range(lo, hi) if is_prime(n)]
    assert all(p % 4 == 3 for p in primes_3mod4_in(PrimeRange(lo, hi)))


def test_sieve_path_above_small_limit():
    lo = 10**13
    got = primes_in(PrimeRange(lo, lo + 2000), segment_odds=128).tolist()
    assert got == [n for n in range(lo, lo + 2000) if is_prime(n)]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3 * 10**5), st.integers(0, 10**4), st.integers(0, 10**4),
       st.integers(1, 5000))
def test_segmentation_transparency(lo, w1, w2, seg):
    mid, hi = lo + w1, lo + w1 + w2
    whole = primes_in(PrimeRange(lo, hi)).items
    left = primes_in(PrimeRange(lo, mid), segment_odds=seg).items
    right = primes_in(PrimeRange(mid, hi), segment_odds=seg).items
    np.testing.assert_array_equal(whole, np.concatenate([left, right]))
    parts = list(iter_prime_segments(PrimeRange(lo, hi), seg))
    joined = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    np.testing.assert_array_equal(whole, joined)
    assert np.all(np.diff(whole) > 0)


def test_stream_invariants():
    s = primes_3mod4_in(PrimeRange(10**6, 10**6 + 10**5))
    assert s.residue_filter == 3
    assert len(s) == len(list(s))
    assert all(p % 4 == 3 and is_prime(p) for p in s)
