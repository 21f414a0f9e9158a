"""Self-checks run by ``twl verify``: pairing identities, oracle agreement, tree identities."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from gmpy2 import fac

from .primes import PrimeRange, primes_3mod4_in, primes_in
from .remainder_tree import (
    Interval,
    build_tree,
    descend,
    half_factorial_bound,
    half_factorial_direct,
    nu_parity_oracle,
)
from .wilson import solution_counts, truncated_products

FACTORIAL_CHECK_LIMIT = 2000
TREE_SPAN = 64


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: int | None = None

    def line(self) -> str:
        if self.passed:
            return f"PASS {self.name}: {self.detail}"
        return f"FAIL {self.name}: witness p={self.witness} {self.detail}"


@dataclass(frozen=True)
class Fault:
    """Deliberate corruption of one truncated product, for negative controls."""

    p: int
    r: int = 2

    def apply(self, p: int, products: np.ndarray) -> np.ndarray:
        if p == self.p and self.r < products.size:
            products = products.copy()
            products[self.r] = (products[self.r] + 1) % p
        return products


def _products(p: int, fault: Fault | None) -> np.ndarray:
    t = truncated_products(p)
    return fault.apply(p, t) if fault else t


def check_lemma1(bound: int, fault: Fault | None = None) -> CheckResult:
    """T_r * T_{p-r-1} = (-1)^(r+1) mod p for every 2 <= r <= p-3."""
    ps = primes_in(PrimeRange(5, max(bound, 5))).tolist()
    for p in ps:
        t = _products(p, fault)
        r = np.arange(2, p - 2)
        lhs = t[r] * t[p - 1 - r] % p
        rhs = np.where(r % 2 == 1, 1, p - 1)
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            return CheckResult("lemma1_pairing", False, f"r={int(r[bad[0]])}", p)
    return CheckResult("lemma1_pairing", True, f"{len(ps)} primes")


def check_wilson_endpoint(bound: int, fault: Fault | None = None) -> CheckResult:
    ps = primes_in(PrimeRange(2, max(bound, 2))).tolist()
    for p in ps:
        if _products(p, fault)[p - 1] != p - 1:
            return CheckResult("wilson_endpoint", False, "", p)
    return CheckResult("wilson_endpoint", True, f"{len(ps)} primes")


def check_factorial_identity(bound: int, fault: Fault | None = None) -> CheckResult:
    """T_r = (-1)^r r! mod p, with r! built by increasing multiplication."""
    top = min(bound, FACTORIAL_CHECK_LIMIT)
    ps = primes_in(PrimeRange(2, max(top, 2))).tolist()
    for p in ps:
        t = _products(p, fault)
        f = 1
        for r in range(p):
            if r:
                f = f * r % p
            if t[r] != (-1) ** r * f % p:
                return CheckResult("factorial_identity", False, f"r={r}", p)
    return CheckResult("factorial_identity", True, f"{len(ps)} primes below {top}")


def check_half_full(bound: int) -> CheckResult:
    ps = primes_in(PrimeRange(2, max(bound, 2))).items
    full = solution_counts(ps, "full")
    half = solution_counts(ps, "half")
    bad = np.flatnonzero(full != half)
    if bad.size:
        i = int(bad[0])
        return CheckResult("half_full_equivalence", False,
                           f"full={int(full[i])} half={int(half[i])}", int(ps[i]))
    return CheckResult("half_full_equivalence", True, f"{ps.size} primes")


def check_lemma2(bound: int) -> CheckResult:
    """Half factorials are +-1 and equal 1 exactly when the non-residue count is even."""
    ps = primes_3mod4_in(PrimeRange(2, max(bound, 2))).tolist()
    for p in ps:
        res = half_factorial_direct(p)
        if res.residue not in (1, p - 1):
            return CheckResult("lemma2_parity", False, f"r_p={res.residue}", p)
        if (res.residue == 1) != (nu_parity_oracle(p) == 0):
            return CheckResult("lemma2_parity", False, "parity mismatch", p)
    return CheckResult("lemma2_parity", True, f"{len(ps)} primes")


def check_batch_direct(bound: int) -> CheckResult:
    n = 0
    for res in half_factorial_bound(max(bound, 2)):
        n += 1
        direct = half_factorial_direct(res.p).residue
        if res.residue != direct:
            return CheckResult("batch_direct_equivalence", False,
                               f"tree={res.residue} direct={direct}", res.p)
    return CheckResult("batch_direct_equivalence", True, f"{n} primes")


def check_tree_identities(bound: int) -> CheckResult:
    """Node products and residues on small single-element-leaf trees."""
    top = max(bound // 2, 2)
    starts = sorted({1, max(1, top - TREE_SPAN)})
    nodes = 0
    for lo in starts:
        iv = Interval(lo, max(lo + 1, min(lo + TREE_SPAN, top)))
        tree = descend(build_tree(iv))
        for node in tree.walk():
            nodes += 1
            fa = fac(node.a)
            if node.span * fa != fac(node.b):
                return CheckResult("tree_identities", False, f"span at ({node.a},{node.b})")
            if node.modulus > 1 and node.residue != fa % node.modulus:
                return CheckResult("tree_identities", False, f"residue at ({node.a},{node.b})")
            if not node.is_leaf:
                if node.modulus != node.left.modulus * node.right.modulus:
                    return CheckResult("tree_identities", False, f"modulus at ({node.a},{node.b})")
                if node.span != node.left.span * node.right.span:
                    return CheckResult("tree_identities", False, f"span at ({node.a},{node.b})")
            elif node.modulus > 1:
                p = int(node.modulus)
                if node.residue != half_factorial_direct(p).residue:
                    return CheckResult("tree_identities", False, "leaf residue", p)
    return CheckResult("tree_identities", True, f"{nodes} nodes")


def run_suite(bound: int, fault: Fault | None = None,
              report: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    checks = [
        lambda: check_lemma1(bound, fault),
        lambda: check_wilson_endpoint(bound, fault),
        lambda: check_factorial_identity(bound, fault),
        lambda: check_half_full(bound),
        lambda: check_lemma2(bound),
        lambda: check_batch_direct(bound),
        lambda: check_tree_identities(bound),
    ]
    results = []
    for check in checks:
        res = check()
        results.append(res)
        if report is not None:
            report(res)
    return results
