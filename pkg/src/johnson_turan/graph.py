"""The Johnson graph G(n, r, s): adjacency, neighbourhoods and induced edge counts."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

from .combinatorics import GraphParams, Vertex, binomial, rank, unrank
from .errors import DomainError, SizingError

#: Graphs with at most this many vertices get a full bitset adjacency table.
MATERIALIZE_CAP = 50_000


def adjacent(u: Vertex, v: Vertex, p: GraphParams) -> bool:
    if u.n != p.n or v.n != p.n:
        raise DomainError(f"vertex width does not match {p}")
    return u.bits != v.bits and (u.bits & v.bits).bit_count() == p.s


@dataclass(frozen=True)
class VertexSet:
    """Distinct vertices of one G(n, r, s), in a fixed order."""

    members: tuple[Vertex, ...]
    params: GraphParams

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(self.members))
        p = self.params
        seen = set()
        for v in self.members:
            if v.n != p.n or v.r != p.r:
                raise DomainError(f"{v!r} is not a vertex of {p}")
            if v.bits in seen:
                raise DomainError(f"duplicate vertex {v!r}")
            seen.add(v.bits)

    @classmethod
    def of(cls, p: GraphParams, supports: Iterable[Iterable[int]]) -> VertexSet:
        return cls(tuple(Vertex.from_elements(s, p.n) for s in supports), p)

    @classmethod
    def full(cls, p: GraphParams) -> VertexSet:
        return cls(tuple(p.vertices()), p)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self.members)

    def __contains__(self, v: object) -> bool:
        return v in self._member_set

    @cached_property
    def _member_set(self) -> frozenset[Vertex]:
        return frozenset(self.members)

    def sorted(self) -> VertexSet:
        """Same members in colex (rank) order."""
        return VertexSet(tuple(sorted(self.members)), self.params)

    def without(self, drop: Iterable[Vertex]) -> VertexSet:
        gone = set(drop)
        return VertexSet(tuple(v for v in self.members if v not in gone), self.params)

    @cached_property
    def adjacency(self) -> list[int]:
        """Local adjacency: bit j of entry i is set iff members i and j are adjacent."""
        s = self.params.s
        bits = [v.bits for v in self.members]
        adj = [0] * len(bits)
        for i, a in enumerate(bits):
            for j in range(i + 1, len(bits)):
                if (a & bits[j]).bit_count() == s:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        return adj

    def to_json(self) -> list[list[int]]:
        return [list(v.support()) for v in self.members]

    @classmethod
    def from_json(cls, p: GraphParams, data: Sequence[Sequence[int]]) -> VertexSet:
        return cls.of(p, data)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def neighbors(u: Vertex, p: GraphParams) -> VertexSet:
    """All v with |supp(u) & supp(v)| = s, in colex order."""
    if u.n != p.n or u.r != p.r:
        raise DomainError(f"{u!r} is not a vertex of {p}")
    inside = [1 << (e - 1) for e in u.support()]
    outside = [1 << i for i in range(p.n) if not u.bits >> i & 1]
    out = []
    for keep in combinations(inside, p.s):
        kb = sum(keep)
        for add in combinations(outside, p.r - p.s):
            out.append(Vertex(kb | sum(add), p.n))
    out.sort()
    return VertexSet(tuple(out), p)


class GraphCounts(NamedTuple):
    vertices: int
    degree: int
    edges: int


def total_counts(p: GraphParams) -> GraphCounts:
    v = binomial(p.n, p.r)
    d = binomial(p.r, p.s) * binomial(p.n - p.r, p.r - p.s)
    return GraphCounts(v, d, v * d // 2)


class MaterializedGraph:
    """Whole G(n, r, s) with adjacency bitsets indexed by colex rank."""

    def __init__(self, p: GraphParams):
        count = p.vertex_count
        if count > MATERIALIZE_CAP:
            raise SizingError(
                f"{p} has {count} vertices, above the materialization cap {MATERIALIZE_CAP}",
                limit=MATERIALIZE_CAP,
                requested=count,
            )
        self.params = p
        self.vertices = [unrank(k, p) for k in range(count)]
        self.index = {v.bits: k for k, v in enumerate(self.vertices)}
        self.adj = [0] * count
        for k, v in enumerate(self.vertices):
            mask = 0
            for w in neighbors(v, p):
                mask |= 1 << self.index[w.bits]
            self.adj[k] = mask

    def mask_of(self, w: Iterable[Vertex]) -> int:
        m = 0
        for v in w:
            m |= 1 << self.index[v.bits]
        return m


@lru_cache(maxsize=16)
def materialize(p: GraphParams) -> MaterializedGraph:
    return MaterializedGraph(p)


def induced_edge_count(w: VertexSet) -> int:
    """Number of unordered adjacent pairs inside ``w``."""
    p = w.params
    if p.vertex_count <= MATERIALIZE_CAP and len(w) > 64:
        g = materialize(p)
        mask = g.mask_of(w)
        return sum((g.adj[g.index[v.bits]] & mask).bit_count() for v in w) // 2
    return pairwise_edge_count(w)


def pairwise_edge_count(w: VertexSet) -> int:
    s = w.params.s
    bits = [v.bits for v in w]
    total = 0
    for i, a in enumerate(bits):
        for b in bits[i + 1:]:
            if (a & b).bit_count() == s:
                total += 1
    return total


def random_vertex_set(p: GraphParams, size: int, rng: random.Random) -> VertexSet:
    """Uniform ``size``-subset of V(G), members in colex order."""
    count = p.vertex_count
    if not 0 <= size <= count:
        raise DomainError(f"cannot draw {size} of {count} vertices")
    ranks = sorted(rng.sample(range(count), size))
    return VertexSet(tuple(unrank(k, p) for k in ranks), p)


def ranks_of(w: VertexSet) -> list[int]:
    return [rank(v) for v in w]
