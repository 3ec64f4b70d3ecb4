"""Maximum and maximal independent sets on induced subgraphs of G(n, r, s).

The exact solver works on local bitsets: vertex i of the (colex-sorted) input
is bit i. It runs in two phases. First a branch-and-bound on the
max-degree vertex finds the independence number, pruned by a greedy clique
cover. Then a lexicographic include-first search recovers the least witness
(by sorted rank sequence) of that size, so witnesses never depend on search
order.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .combinatorics import GraphParams
from .errors import DomainError, SizingError
from .graph import VertexSet

#: Default vertex cap for the exact solver.
EXACT_CAP = 40


class RegimeWarning(UserWarning):
    """Parameters fall outside r = 2s+1 with r-s a prime power."""


@dataclass(frozen=True)
class IndependenceResult:
    witness: VertexSet
    exact: bool

    def __post_init__(self) -> None:
        adj = self.witness.adjacency
        if any(adj):
            raise DomainError("witness is not an independent set")

    @property
    def cardinality(self) -> int:
        return len(self.witness)


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _clique_cover(P: int, adj: list[int]) -> int:
    """Number of cliques in a greedy cover of P; bounds alpha(G[P]) from above."""
    commons: list[int] = []
    while P:
        v = _lowest(P)
        P ^= 1 << v
        for k, c in enumerate(commons):
            if c >> v & 1:
                commons[k] = c & adj[v]
                break
        else:
            commons.append(adj[v])
    return len(commons)


def _greedy_size(P: int, adj: list[int]) -> int:
    size = 0
    while P:
        v = min(_iter_bits(P), key=lambda x: (adj[x] & P).bit_count())
        P &= ~(adj[v] | 1 << v)
        size += 1
    return size


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def independence_number(adj: list[int], P: int | None = None) -> int:
    """alpha of the subgraph induced by bitmask P (all vertices by default)."""
    if P is None:
        P = (1 << len(adj)) - 1
    best = _greedy_size(P, adj)

    def search(P: int, size: int) -> None:
        nonlocal best
        while True:
            if not P:
                if size > best:
                    best = size
                return
            # a vertex of degree <= 1 lies in some maximum independent set
            low_v, low_d, high_v, high_d = -1, 1 << 30, -1, -1
            for v in _iter_bits(P):
                d = (adj[v] & P).bit_count()
                if d < low_d:
                    low_v, low_d = v, d
                if d > high_d:
                    high_v, high_d = v, d
            if low_d > 1:
                break
            P &= ~(adj[low_v] | 1 << low_v)
            size += 1
        if size + _clique_cover(P, adj) <= best:
            return
        v = high_v
        search(P & ~(adj[v] | 1 << v), size + 1)
        search(P & ~(1 << v), size)

    search(P, 0)
    return best


def _lex_least(adj: list[int], target: int) -> list[int]:
    """Lexicographically least sorted index list of an independent set of size target."""

    def search(P: int, need: int) -> list[int] | None:
        if need == 0:
            return []
        if P.bit_count() < need or _clique_cover(P, adj) < need:
            return None
        v = _lowest(P)
        rest = search(P & ~(adj[v] | 1 << v), need - 1)
        if rest is not None:
            return [v] + rest
        return search(P & ~(1 << v), need)

    found = search((1 << len(adj)) - 1, target)
    assert found is not None
    return found


def max_independent_set(w: VertexSet, cap: int | None = None) -> IndependenceResult:
    """Exact maximum independent set of the subgraph induced by ``w``.

    Among all optima the witness with the lexicographically least sorted rank
    sequence is returned.
    """
    cap = EXACT_CAP if cap is None else cap
    if len(w) > cap:
        raise SizingError(
            f"exact solver cap is {cap} vertices, got {len(w)}; raise the cap or use greedy mode",
            limit=cap,
            requested=len(w),
        )
    ws = w.sorted()
    adj = ws.adjacency
    alpha = independence_number(adj)
    picked = _lex_least(adj, alpha)
    return IndependenceResult(VertexSet(tuple(ws.members[i] for i in picked), w.params), exact=True)


def alpha_exact(p: GraphParams, cap: int | None = None) -> IndependenceResult:
    cap = EXACT_CAP if cap is None else cap
    if p.vertex_count > cap:
        raise SizingError(
            f"{p} has {p.vertex_count} vertices, above the exact cap {cap}",
            limit=cap,
            requested=p.vertex_count,
        )
    result = max_independent_set(VertexSet.full(p), cap=cap)
    if (p.r, p.s) == (3, 1):
        assert p.n - 2 <= result.cardinality <= p.n, (p, result.cardinality)
    return result


def greedy_maximal_independent_set(w: VertexSet, seed: int | None = None) -> IndependenceResult:
    """Maximal (not necessarily maximum) independent set.

    With ``seed=None`` vertices are taken by minimum residual degree, ties by
    rank. An integer seed instead scans a seeded shuffle of ``w`` first-fit.
    """
    ws = w.sorted()
    adj = ws.adjacency
    P = (1 << len(ws)) - 1
    picked = []
    if seed is None:
        while P:
            v = min(_iter_bits(P), key=lambda x: (adj[x] & P).bit_count())
            picked.append(v)
            P &= ~(adj[v] | 1 << v)
    else:
        order = list(range(len(ws)))
        random.Random(seed).shuffle(order)
        for v in order:
            if P >> v & 1:
                picked.append(v)
                P &= ~(adj[v] | 1 << v)
    picked.sort()
    return IndependenceResult(VertexSet(tuple(ws.members[i] for i in picked), w.params), exact=False)


def frankl_asymptotic(p: GraphParams) -> Fraction:
    """n^s (2r-2s-1)! / (r! (r-s-1)!), the asymptotic size of alpha(G(n,r,s)).

    Outside the regime r = 2s+1, r-s a prime power, the value is still returned
    but a ``RegimeWarning`` is issued.
    """
    if not p.theorem4_regime:
        warnings.warn(f"{p}: asymptotic formula regime not satisfied", RegimeWarning, stacklevel=2)
    n, r, s = p.n, p.r, p.s
    return Fraction(n**s * factorial(2 * r - 2 * s - 1), factorial(r) * factorial(r - s - 1))
