"""Truncated Wilson products: solution statistics, half factorials, and heuristics."""

from .errors import CapacityError, DomainError, IntegrityError, MergeError
from .heuristics import (
    base_distribution,
    conjecture_distribution,
    conjecture_probability,
    naive_constants,
    p_odd,
    q_even,
)
from .primes import PrimeRange, PrimeStream, is_prime, primes_3mod4_in, primes_in
from .remainder_tree import (
    HalfFactResult,
    Interval,
    build_tree,
    descend,
    factorial_mod,
    half_factorial_batch,
    half_factorial_direct,
    nu_parity_oracle,
)
from .stats import Histogram, merge, table1_report, table2_report
from .wilson import (
    SolutionProfile,
    count_solutions_full,
    count_solutions_half,
    solutions_histogram,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "DomainError",
    "HalfFactResult",
    "Histogram",
    "IntegrityError",
    "Interval",
    "MergeError",
    "PrimeRange",
    "PrimeStream",
    "SolutionProfile",
    "base_distribution",
    "build_tree",
    "conjecture_distribution",
    "conjecture_probability",
    "count_solutions_full",
    "count_solutions_half",
    "descend",
    "factorial_mod",
    "half_factorial_batch",
    "half_factorial_direct",
    "is_prime",
    "merge",
    "naive_constants",
    "nu_parity_oracle",
    "p_odd",
    "primes_3mod4_in",
    "primes_in",
    "q_even",
    "solutions_histogram",
    "table1_report",
    "table2_report",
]
