"""Truncated Wilson products for a single prime.

For p = 23 we list T_r = (p-1)(p-2)...(p-r) mod p, find the nontrivial
indices with T_r = -1, and watch the pairing r <-> p-r-1 at work.
"""

from truncwilson.wilson import count_solutions_full, count_solutions_half, truncated_products

p = 23
t = truncated_products(p)
print(f"T_r mod {p} for r = 0..{p - 1}:")
print(" ".join(str(int(v)) for v in t))

# Wilson's theorem sits at the far end: T_{p-1} = (p-1)! = -1.
print(f"T_{p - 1} = {t[p - 1]}  (p - 1 = {p - 1})")

# Pairs multiply to (-1)^(r+1).
for r in range(2, 7):
    s = p - r - 1
    print(f"r={r:2d} s={s:2d}  T_r*T_s mod p = {t[r] * t[s] % p}")

full = count_solutions_full(p, record=True)
half = count_solutions_half(p, record=True)
print("full scan:", full)
print("half scan:", half)

# The middle index (p-1)/2 = 11 is a solution because 11! = 1 mod 23.
print("middle index in solutions:", (p - 1) // 2 in full.solutions)

# A few more primes.
for q in (5, 7, 17, 29, 31, 101, 1009):
    prof = count_solutions_full(q, record=True)
    print(f"p={q:5d}  N={prof.count}  r={list(prof.solutions)}")
