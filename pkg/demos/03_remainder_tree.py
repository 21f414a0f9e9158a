"""Half factorials ((p-1)/2)! mod p via an accumulating remainder tree.

First a tiny tree over the odd numbers 11..29 is printed node by node, then the
batch driver tallies how often the half factorial is +1 below 10^6.
"""

import time

from truncwilson.remainder_tree import (
    Interval,
    build_tree,
    descend,
    half_factorial_bound,
    half_factorial_direct,
)
from truncwilson.stats import decade_checkpoints, render_table2, table2_report

tree = descend(build_tree(Interval(5, 15)))
for node in tree.walk():
    print(f"({node.a:2d},{node.b:2d})  modulus={int(node.modulus):5d}  "
          f"span={int(node.span):12d}  residue={int(node.residue)}")

print()
for leaf in tree.leaves():
    if leaf.modulus > 1:
        p = int(leaf.modulus)
        print(f"p={p}: tree gives {int(leaf.residue)}, direct loop gives "
              f"{half_factorial_direct(p).residue}")

bound = 10**6
t0 = time.perf_counter()
results = list(half_factorial_bound(bound))
print(f"\n{len(results)} primes p = 3 mod 4 below {bound} in {time.perf_counter() - t0:.1f}s")
print(render_table2(table2_report(results, decade_checkpoints(bound)), "table"))
