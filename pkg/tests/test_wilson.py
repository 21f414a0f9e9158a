import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from truncwilson.errors import DomainError
from truncwilson.primes import PrimeRange, primes_in
from truncwilson.wilson import (
    FLOAT_LIMIT,
    _full_count_py,
    _full_count_word,
    _half_count_py,
    count_solutions_full,
    count_solutions_half,
    solution_counts,
    solutions_histogram,
    truncated_product,
    truncated_products,
)

from conftest import scan_products

# frozen from a brute-force Python scan over r in [2, p-3]
KNOWN = {5: (), 7: (), 17: (5, 11), 23: (11, 14, 18), 29: (18,), 31: (15,)}


@pytest.mark.parametrize("p, sols", KNOWN.items())
def test_known_solutions(p, sols):
    for fn in (count_solutions_full, count_solutions_half):
        prof = fn(p, record=True)
        assert prof.solutions == sols
        assert prof.count == len(sols) == fn(p).count


def test_single_step_p5():
    assert truncated_product(5, 2) == 2
    assert count_solutions_full(5).count == 0


def test_middle_term_p23():
    assert list(truncated_products(23)[1:12]) == [22, 2, 17, 1, 18, 7, 20, 1, 14, 21, 22]
    assert 11 in count_solutions_half(23, record=True).solutions


@pytest.mark.parametrize("p", [2, 3])
def test_tiny_primes_have_empty_range(p):
    assert count_solutions_full(p).count == 0
    assert count_solutions_half(p).count == 0


@pytest.mark.parametrize("n", [1, 4, 9, 15, 561])
def test_composite_rejected(n):
    with pytest.raises(DomainError):
        count_solutions_full(n)
    with pytest.raises(DomainError):
        count_solutions_half(n)


def test_products_match_python_scan(small_primes):
    for p in small_primes[:80]:
        assert truncated_products(p).tolist() == scan_products(p)


def test_factorial_identity(small_primes):
    for p in [q for q in small_primes if q <= 500]:
        t = truncated_products(p)
        f = 1
        for r in range(p):
            if r:
                f *= r
            assert t[r] == (-1) ** r * f % p
            assert 0 < t[r] < p


def test_pairing_identity(small_primes):
    for p in [q for q in small_primes if 5 <= q <= 500]:
        t = scan_products(p)
        for r in range(2, p - 2):
            assert t[r] * t[p - r - 1] % p == (1 if r % 2 else p - 1)


def test_wilson_endpoint(small_primes):
    for p in [q for q in small_primes if q < 1000]:
        assert truncated_products(p)[p - 1] == p - 1


def test_solution_lists_symmetric_on_odd_r(small_primes):
    for p in small_primes[2:200]:
        sols = set(count_solutions_full(p, record=True).solutions)
        for r in sols:
            if r % 2:
                assert p - r - 1 in sols
        assert not sols & {1, p - 2, p - 1}


def test_half_equals_full_below_1e4():
    ps = primes_in(PrimeRange(5, 10**4)).tolist()
    assert [count_solutions_half(p).count for p in ps] == [count_solutions_full(p).count for p in ps]


def test_vector_paths_match_python(small_primes):
    # 16-lane interleaving: cover group boundaries and ragged tails
    for n in (1, 15, 16, 17, 33, len(small_primes)):
        ps = np.array(small_primes[:n], dtype=np.int64)
        half = solution_counts(ps, "half")
        full = solution_counts(ps, "full")
        ref = [_full_count_py(int(p)) if p >= 5 else 0 for p in ps]
        assert half.tolist() == ref
        assert full.tolist() == ref


@settings(max_examples=25, deadline=None)
@given(st.integers(10**5, 3 * 10**6))
def test_float_kernel_against_integer_full_scan(n):
    ps = primes_in(PrimeRange(n, n + 600)).items[:20]
    got = solution_counts(ps, "half").tolist()
    assert got == [int(_full_count_word(int(p))) for p in ps]


def test_float_kernel_at_top_of_range():
    # largest primes the float kernel accepts; products approach 2^52
    ps = primes_in(PrimeRange(FLOAT_LIMIT - 200, FLOAT_LIMIT)).items[-2:]
    for p in ps:
        assert count_solutions_half(int(p)).count == count_solutions_full(int(p)).count


@pytest.mark.slow
def test_word_and_python_kernels():
    p = int(primes_in(PrimeRange(FLOAT_LIMIT, FLOAT_LIMIT + 200)).items[0])
    assert count_solutions_half(p).count == count_solutions_full(p).count


def test_python_kernels_small():
    for p in (5, 7, 17, 23, 97, 101, 1009):
        assert _half_count_py(p) == _full_count_py(p) == count_solutions_full(p).count


def test_python_path_for_big_moduli(monkeypatch):
    import truncwilson.wilson as w

    ps = np.array([5, 7, 17, 23, 1009], dtype=np.int64)
    expected = [count_solutions_full(int(p)).count for p in ps]
    # route every modulus through the arbitrary-precision fallback
    monkeypatch.setattr(w, "WORD_LIMIT", 0)
    monkeypatch.setattr(w, "FLOAT_LIMIT", 0)
    assert w.solution_counts(ps, "half").tolist() == expected
    assert w.solution_counts(ps, "full").tolist() == expected
    assert w.count_solutions_half(23).count == 3


def test_histogram_small():
    h = solutions_histogram(PrimeRange(2, 5))
    assert h[0] == 2 and h.total == 2


def test_histogram_1e4_reference_count():
    h = solutions_histogram(PrimeRange(2, 10**4))
    assert (h[0], h.total) == (429, 1229)


def test_histogram_against_brute_force():
    # brute-force Python scan over p < 2000
    h = solutions_histogram(PrimeRange(2, 2000), engine="full")
    assert h.counts == {0: 110, 1: 85, 2: 60, 3: 30, 4: 13, 5: 5}
    assert solutions_histogram(PrimeRange(2, 2000)) == h


@pytest.mark.parametrize("seg, threads", [(1000, 1), (777, 3), (10**4, 4), (None, 2)])
def test_histogram_partition_and_thread_independent(seg, threads):
    ref = solutions_histogram(PrimeRange(2, 30000))
    assert solutions_histogram(PrimeRange(2, 30000), segment_size=seg, threads=threads) == ref


def test_histogram_invalid_engine():
    with pytest.raises(ValueError):
        solutions_histogram(PrimeRange(2, 100), engine="quarter")
