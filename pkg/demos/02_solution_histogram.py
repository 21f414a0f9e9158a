"""Observed distribution of the solution count N against the conjecture.

Runs the half-scan engine over all primes below a bound (default 10^5; pass a
larger bound on the command line, e.g. 1000000, for a sharper comparison).
"""

import sys
import time

from truncwilson.primes import PrimeRange
from truncwilson.stats import render_table1, table1_report
from truncwilson.wilson import solutions_histogram

bound = int(sys.argv[1]) if len(sys.argv) > 1 else 10**5

t0 = time.perf_counter()
hist = solutions_histogram(PrimeRange(2, bound), segment_size=10**5)
print(f"{hist.total} primes below {bound} in {time.perf_counter() - t0:.1f}s\n")

print(render_table1(table1_report(hist), "table"))

# 429 of the 1229 primes below 10^4 have no solution at all.
small = solutions_histogram(PrimeRange(2, 10**4))
print(f"below 10^4: {small[0]} of {small.total} primes have N = 0")
