"""Conjectured distribution of the number of nontrivial solutions.

The model treats odd indices below p/2 as Poisson(1/4) events (each counted
twice through the pairing r <-> p-r-1) and even indices as Poisson(1/2)
events.  For a quarter of all primes, those p = 3 mod 4 whose middle factorial
is 1, the middle index is an automatic extra solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import exp, factorial

ODD_RATE = 0.25
EVEN_RATE = 0.5


def _inverse_factorial_pairs(n: int) -> Fraction:
    # sum over k of 1 / (k! (n-2k)!), exact
    if n < 0:
        return Fraction(0)
    return sum(
        (Fraction(1, factorial(k) * factorial(n - 2 * k)) for k in range(n // 2 + 1)),
        Fraction(0),
    )


def p_odd(k: int) -> float:
    """Limiting probability of exactly ``k`` odd solutions below (p-1)/2."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return exp(-ODD_RATE) / (4**k * factorial(k))


def q_even(l: int) -> float:
    """Limiting probability of exactly ``l`` even indices below (p-1)/2 with T_r = +-1."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    return exp(-EVEN_RATE) / (2**l * factorial(l))


def base_distribution(n: int) -> float:
    """Probability of ``n`` solutions when the middle index contributes nothing."""
    if n < 0:
        return 0.0
    return exp(-ODD_RATE - EVEN_RATE) * float(_inverse_factorial_pairs(n)) / 2**n


def base_distribution_convolution(n: int) -> float:
    """Same quantity as ``base_distribution``, summed as p_odd(k) * q_even(n - 2k)."""
    if n < 0:
        return 0.0
    return sum(p_odd(k) * q_even(n - 2 * k) for k in range(n // 2 + 1))


def conjecture_probability(n: int) -> float:
    """Conjectured proportion of primes with exactly ``n`` nontrivial solutions."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return 0.75 * base_distribution(n) + 0.25 * base_distribution(n - 1)


def conjecture_probability_closed(n: int) -> float:
    """Single-expression form of ``conjecture_probability``.

    e^{-3/4} / 2^{n+1} * (3/2 * S(n) + S(n-1)) where S(m) = sum_k 1/(k!(m-2k)!).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    bracket = Fraction(3, 2) * _inverse_factorial_pairs(n) + _inverse_factorial_pairs(n - 1)
    return exp(-0.75) * float(bracket) / 2 ** (n + 1)


@dataclass(frozen=True)
class ConjectureDistribution:
    terms: dict[int, float]
    precision: int = 15

    def cumulative(self) -> list[float]:
        out, acc = [], 0.0
        for n in sorted(self.terms):
            acc += self.terms[n]
            out.append(acc)
        return out


def conjecture_distribution(max_n: int = 40) -> ConjectureDistribution:
    return ConjectureDistribution({n: conjecture_probability(n) for n in range(max_n + 1)})


@dataclass(frozen=True)
class NaiveConstants:
    """Limits of the successive heuristics: independent, paired, and final."""

    e_inv: float
    e_34: float
    main: float


def naive_constants() -> NaiveConstants:
    return NaiveConstants(e_inv=exp(-1.0), e_34=exp(-0.75), main=0.75 * exp(-0.75))
