"""The three successive heuristics and the final conjectured distribution."""

from truncwilson.heuristics import (
    base_distribution,
    base_distribution_convolution,
    conjecture_probability,
    naive_constants,
    p_odd,
    q_even,
)

c = naive_constants()
print(f"independent events, no solutions:   e^-1        = {c.e_inv:.5f}")
print(f"with the r <-> p-r-1 pairing:       e^-3/4      = {c.e_34:.5f}")
print(f"with the middle-index correction:   3/4 e^-3/4  = {c.main:.7f}")

print("\nodd-index and even-index counts are Poisson(1/4) and Poisson(1/2):")
for k in range(5):
    print(f"  k={k}  p_odd={p_odd(k):.7f}  q_even={q_even(k):.7f}")

print("\n N   base(N)     convolution  conjecture(N)")
for n in range(14):
    print(f"{n:2d}  {base_distribution(n):.7f}   {base_distribution_convolution(n):.7f}"
          f"    {conjecture_probability(n):.7f}")

tail = 1 - sum(conjecture_probability(n) for n in range(41))
print(f"\nmass beyond N = 40: {tail:.1e}")
