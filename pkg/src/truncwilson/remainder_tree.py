"""Batch evaluation of ((p-1)/2)! mod p with an accumulating remainder tree.

A node (a, b) stands for the odd integers k with 2a < k < 2b.  Going up the
tree we multiply together the primes p = 3 (mod 4) of each node (the node
``modulus``) and the consecutive integers a+1..b (the node ``span``, equal to
b!/a!).  Coming down we carry ``residue = a! mod modulus``: the left child
keeps it, the right child multiplies it by the left child's span.  A node
holding the single odd k = p = 2a+1 ends with residue ((p-1)/2)! mod p.

Large products go through GMP (gmpy2) for its subquadratic multiplication
and division.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from math import ceil, log2

import numpy as np
from gmpy2 import mpz
from numba import njit

from .errors import CapacityError, DomainError
from .primes import CAPACITY, PrimeRange, is_prime, primes_3mod4_in

LEAF_SIZE = 64
_BLOCK = 32


@dataclass(frozen=True)
class Interval:
    """Tree root (M, N): the odd k with 2M < k < 2N."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 1 or self.hi <= self.lo:
            raise ValueError(f"invalid interval ({self.lo}, {self.hi})")
        if 2 * self.hi >= CAPACITY:
            raise CapacityError(f"interval top 2*{self.hi} exceeds 2^62")

    @property
    def depth(self) -> int:
        """Depth of the deepest node when leaves hold one odd number each."""
        return ceil(log2(self.hi - self.lo)) if self.hi - self.lo > 1 else 0

    def odd_range(self) -> PrimeRange:
        return PrimeRange(2 * self.lo + 1, 2 * self.hi)

    def split(self, size: int) -> list[Interval]:
        return [Interval(s, min(s + size, self.hi)) for s in range(self.lo, self.hi, size)]


@dataclass
class TreeNode:
    a: int
    b: int
    modulus: mpz
    span: mpz
    primes: tuple[int, ...] = ()
    left: TreeNode | None = field(default=None, repr=False)
    right: TreeNode | None = field(default=None, repr=False)
    residue: mpz | None = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def walk(self) -> Iterator[TreeNode]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            if node.right is not None:
                stack.append(node.right)
                stack.append(node.left)

    def leaves(self) -> Iterator[TreeNode]:
        return (n for n in self.walk() if n.is_leaf)


@dataclass(frozen=True)
class HalfFactResult:
    """((p-1)/2)! mod p for a prime p = 3 (mod 4); always 1 or p-1."""

    p: int
    residue: int

    @property
    def nu_parity(self) -> int:
        """Parity of the count of non-residues in (1, p/2): 0 exactly when residue is 1."""
        return 0 if self.residue == 1 else 1


def range_product(lo: int, hi: int) -> mpz:
    """(lo+1)(lo+2)...hi, by balanced splitting; 1 when hi <= lo."""
    if hi - lo <= _BLOCK:
        acc = 1
        for j in range(lo + 1, hi + 1):
            acc *= j
        return mpz(acc)
    mid = (lo + hi) // 2
    return range_product(lo, mid) * range_product(mid, hi)


def factorial_mod(m: int, modulus: int) -> mpz:
    """m! mod modulus by binary splitting, reducing oversized partial products.

    A partial product is reduced as soon as its bit length passes twice that of
    the modulus, so every multiplication stays balanced and bounded.
    """
    if modulus < 1:
        raise DomainError("modulus must be positive")
    if m < 0:
        raise DomainError("factorial of a negative number")
    modulus = mpz(modulus)
    if modulus == 1:
        return mpz(0)
    limit = 2 * modulus.bit_length()

    def prod(lo: int, hi: int) -> mpz:
        if hi - lo <= _BLOCK:
            acc = 1
            for j in range(lo + 1, hi + 1):
                acc *= j
            x = mpz(acc)
        else:
            mid = (lo + hi) // 2
            x = prod(lo, mid) * prod(mid, hi)
        if x.bit_length() > limit:
            x %= modulus
        return x

    return prod(0, m) % modulus


def _prime_array(interval: Interval) -> np.ndarray:
    return primes_3mod4_in(interval.odd_range()).items


def build_tree(interval: Interval, leaf_size: int = 1, primes: np.ndarray | None = None) -> TreeNode:
    """Product tree over ``interval`` with modulus and span filled at every node.

    With ``leaf_size=1`` each leaf holds exactly one odd number, as in the
    textbook construction; larger values stop splitting once b - a <= leaf_size.
    """
    if leaf_size < 1:
        raise ValueError("leaf_size must be positive")
    if primes is None:
        primes = _prime_array(interval)
    plist = primes.tolist()

    def build(a: int, b: int, i: int, j: int) -> TreeNode:
        # plist[i:j] are the primes in (2a, 2b)
        if b - a <= leaf_size:
            ps = tuple(plist[i:j])
            mod = mpz(1)
            for p in ps:
                mod *= p
            return TreeNode(a, b, mod, range_product(a, b), ps)
        c = (a + b) // 2
        k = int(np.searchsorted(primes[i:j], 2 * c)) + i
        left = build(a, c, i, k)
        right = build(c, b, k, j)
        return TreeNode(a, b, left.modulus * right.modulus, left.span * right.span,
                        left=left, right=right)

    return build(interval.lo, interval.hi, 0, len(plist))


def descend(tree: TreeNode, root_residue: mpz | None = None) -> TreeNode:
    """Fill ``residue = a! mod modulus`` at every node, top-down.

    Nodes whose modulus is 1 carry residue 0 by convention.
    """
    if root_residue is None:
        root_residue = factorial_mod(tree.a, tree.modulus)
    tree.residue = mpz(root_residue) % tree.modulus
    stack = [tree]
    while stack:
        node = stack.pop()
        if node.is_leaf:
            continue
        left, right = node.left, node.right
        if node.modulus == 1:
            left.residue = right.residue = mpz(0)
        else:
            left.residue = node.residue % left.modulus
            right.residue = node.residue * left.span % right.modulus
        stack.append(right)
        stack.append(left)
    return tree


def _finish_leaf(node: TreeNode) -> Iterator[HalfFactResult]:
    for p in node.primes:
        r = int(node.residue % p)
        for j in range(node.a + 1, (p - 1) // 2 + 1):
            r = r * j % p
        yield HalfFactResult(p, r)


def collect(tree: TreeNode) -> list[HalfFactResult]:
    """Per-prime results from the leaves of a descended tree, ascending by p."""
    out: list[HalfFactResult] = []
    for leaf in tree.leaves():
        out.extend(_finish_leaf(leaf))
    return out


def half_factorial_batch(interval: Interval, leaf_size: int = LEAF_SIZE) -> list[HalfFactResult]:
    """((p-1)/2)! mod p for every prime p = 3 (mod 4) with 2M < p < 2N."""
    primes = _prime_array(interval)
    if primes.size == 0:
        return []
    tree = build_tree(interval, leaf_size, primes)
    return collect(descend(tree))


def half_factorial_bound(
    bound: int, interval_size: int = 10**6, leaf_size: int = LEAF_SIZE
) -> Iterator[HalfFactResult]:
    """Results for every p = 3 (mod 4) below ``bound``, one interval at a time."""
    if bound >= CAPACITY:
        raise CapacityError(f"bound {bound} exceeds 2^62")
    top = (bound + 1) // 2
    if top <= 1:
        return
    for iv in Interval(1, top).split(interval_size):
        for res in half_factorial_batch(iv, leaf_size):
            if res.p < bound:
                yield res


def _check_3mod4(p: int) -> None:
    if p % 4 != 3 or not is_prime(p):
        raise DomainError(f"{p} is not a prime congruent to 3 mod 4")


@njit(cache=True, nogil=True)
def _half_factorial_word(p):
    r = 1
    for j in range(2, (p - 1) // 2 + 1):
        r = r * j % p
    return r


def half_factorial_direct(p: int) -> HalfFactResult:
    """((p-1)/2)! mod p by (p-1)/2 successive multiplications."""
    _check_3mod4(p)
    if p < 1 << 31:
        return HalfFactResult(p, int(_half_factorial_word(p)))
    r = 1
    for j in range(2, (p - 1) // 2 + 1):
        r = r * j % p
    return HalfFactResult(p, r)


def nu_parity_oracle(p: int) -> int:
    """Parity of the number of quadratic non-residues x with 1 < x < p/2.

    Each x is classified with Euler's criterion x^((p-1)/2) mod p.
    """
    _check_3mod4(p)
    e = (p - 1) // 2
    nu = sum(1 for x in range(2, e + 1) if pow(x, e, p) == p - 1)
    return nu & 1

