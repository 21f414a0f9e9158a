import time
from math import isqrt

import pytest

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
TIMINGS: dict[str, float] = {}


def trial_division(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def scan_products(p: int) -> list[int]:
    """T_0..T_{p-1} by plain Python multiplication, independent of the kernels."""
    out, t = [1], 1
    for r in range(1, p):
        t = t * (p - r) % p
        out.append(t)
    return out


@pytest.fixture(scope="session")
def small_primes() -> list[int]:
    return [n for n in range(2, 2000) if trial_division(n)]


@pytest.fixture(scope="session")
def histogram_1e6():
    from truncwilson.primes import PrimeRange
    from truncwilson.wilson import solutions_histogram

    t0 = time.perf_counter()
    hist = solutions_histogram(PrimeRange(2, 10**6), engine="half", threads=1)
    TIMINGS["histogram_1e6"] = time.perf_counter() - t0
    return hist


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
