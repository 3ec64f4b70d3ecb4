"""Bit-pattern encoding of r-subsets of {1..n}, colex ranking and set algebra."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DomainError

#: Largest ground-set size accepted. Override with ``set_width_cap``.
WIDTH_CAP = 128


def set_width_cap(cap: int) -> None:
    global WIDTH_CAP
    if cap <= 0:
        raise DomainError(f"width cap must be positive, got {cap}")
    WIDTH_CAP = cap


def binomial(n: int, k: int) -> int:
    """C(n, k), exact; 0 when k > n."""
    if n < 0 or k < 0:
        raise DomainError(f"binomial needs non-negative arguments, got ({n}, {k})")
    return math.comb(n, k)


def is_prime_power(m: int) -> bool:
    if m < 2:
        return False
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            return m == 1
        p += 1
    return True


@dataclass(frozen=True)
class GraphParams:
    """The triple (n, r, s) defining G(n, r, s)."""

    n: int
    r: int
    s: int

    def __post_init__(self) -> None:
        if not (0 <= self.s < self.r <= self.n):
            raise DomainError(
                f"need 0 <= s < r <= n, got n={self.n}, r={self.r}, s={self.s}"
            )
        if self.n > WIDTH_CAP:
            raise DomainError(f"n={self.n} exceeds the width cap {WIDTH_CAP}")

    @property
    def vertex_count(self) -> int:
        return binomial(self.n, self.r)

    @property
    def theorem4_regime(self) -> bool:
        """r = 2s+1 and r-s a prime power. Flag only, never enforced."""
        return self.r == 2 * self.s + 1 and is_prime_power(self.r - self.s)

    def vertices(self) -> Iterator[Vertex]:
        """All vertices in colex order (equivalently, increasing bit pattern)."""
        for k in range(self.vertex_count):
            yield unrank(k, self)

    def __str__(self) -> str:
        return f"G({self.n},{self.r},{self.s})"


@dataclass(frozen=True, order=True)
class Vertex:
    """An r-subset of {1..n}; bit i set iff element i+1 is in the support.

    Ordering compares bit patterns, which coincides with colex order.
    """

    bits: int
    n: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.n:
            raise DomainError(f"bit pattern {self.bits:#x} does not fit in width {self.n}")

    @classmethod
    def from_elements(cls, elements: Iterable[int], n: int) -> Vertex:
        """Build from 1-based elements."""
        bits = 0
        for e in elements:
            if not 1 <= e <= n:
                raise DomainError(f"element {e} outside 1..{n}")
            if bits >> (e - 1) & 1:
                raise DomainError(f"repeated element {e}")
            bits |= 1 << (e - 1)
        return cls(bits, n)

    @property
    def r(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        """Sorted 1-based elements."""
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length())
            b ^= low
        return tuple(out)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.support())) + "}"


def rank(v: Vertex) -> int:
    """0-based colex position among all r-subsets of {1..n}."""
    total = 0
    for i, e in enumerate(v.support(), start=1):
        total += math.comb(e - 1, i)
    return total


def unrank(k: int, p: GraphParams) -> Vertex:
    """Inverse of ``rank`` for r-subsets of {1..n}."""
    if not 0 <= k < p.vertex_count:
        raise DomainError(f"rank {k} outside 0..{p.vertex_count - 1} for {p}")
    bits = 0
    c = p.n - 1
    for i in range(p.r, 0, -1):
        while math.comb(c, i) > k:
            c -= 1
        k -= math.comb(c, i)
        bits |= 1 << c
        c -= 1
    return Vertex(bits, p.n)


def intersection_size(u: Vertex, v: Vertex) -> int:
    if u.n != v.n:
        raise DomainError(f"ground sets differ: n={u.n} vs n={v.n}")
    return (u.bits & v.bits).bit_count()
