"""How W \\ Gamma attaches to an independent set Gamma.

For every outside vertex w, n(Gamma, w) is its number of neighbours in Gamma.
U1 and U2 collect the vertices with exactly one or two such neighbours. A
checkmark is a triple (u1, u2, w) where u1, u2 are the two Gamma-neighbours
of a vertex w in U2. The exchange audit checks the two swap arguments that
bound |U1| and |U2| when Gamma is a maximum independent set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any

from .combinatorics import Vertex
from .errors import DomainError
from .graph import VertexSet, adjacent
from .independence import IndependenceResult


class Case(enum.Enum):
    CASE1 = "case1"
    CASE2 = "case2"


@dataclass(frozen=True)
class Checkmark:
    side1: Vertex
    side2: Vertex
    center: Vertex
    case: Case
    overlap: int

    def to_json(self) -> dict[str, Any]:
        return {
            "side1": list(self.side1.support()),
            "side2": list(self.side2.support()),
            "center": list(self.center.support()),
            "case": self.case.value,
            "overlap": self.overlap,
        }


@dataclass
class CensusReport:
    u1_size: int
    u2_size: int
    per_anchor: dict[Vertex, int]
    checkmarks_case1: int
    checkmarks_case2: int
    envelope_ratio: Fraction
    diagnostic: bool = False
    u1: list[Vertex] = field(default_factory=list, repr=False)
    u2: list[Vertex] = field(default_factory=list, repr=False)

    def to_json(self) -> dict[str, Any]:
        return {
            "u1_size": self.u1_size,
            "u2_size": self.u2_size,
            "per_anchor": [
                {"anchor": list(u.support()), "u1_count": c} for u, c in self.per_anchor.items()
            ],
            "checkmarks_case1": self.checkmarks_case1,
            "checkmarks_case2": self.checkmarks_case2,
            "envelope_ratio": str(self.envelope_ratio),
            "envelope_ratio_float": float(self.envelope_ratio),
            "diagnostic": self.diagnostic,
        }


@dataclass
class AuditReport:
    passed: bool
    kind: str | None = None
    anchors: tuple[Vertex, ...] = ()
    swap_in: tuple[Vertex, ...] = ()

    def describe(self) -> str:
        if self.passed:
            return "pass"
        out = ", ".join(map(repr, self.anchors))
        into = ", ".join(map(repr, self.swap_in))
        return f"fail ({self.kind}): removing {out} and adding {into} gives a larger independent set"

    def to_json(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "kind": self.kind,
            "remove": [list(v.support()) for v in self.anchors],
            "add": [list(v.support()) for v in self.swap_in],
        }


def neighbor_count_in(gamma: VertexSet, w: Vertex) -> int:
    """n(Gamma, w): the number of vertices of gamma adjacent to w."""
    if w in gamma:
        raise DomainError(f"{w!r} belongs to gamma")
    s = gamma.params.s
    return sum(1 for u in gamma if (u.bits & w.bits).bit_count() == s)


def _check_subset(w: VertexSet, gamma: IndependenceResult) -> None:
    if gamma.witness.params != w.params:
        raise DomainError("gamma and W live in different graphs")
    missing = [v for v in gamma.witness if v not in w]
    if missing:
        raise DomainError(f"gamma is not a subset of W: {missing[0]!r} missing")


def _gamma_neighbors(w: VertexSet, gamma: VertexSet) -> dict[Vertex, list[Vertex]]:
    s = w.params.s
    out = {}
    for v in w:
        if v in gamma:
            continue
        out[v] = [u for u in gamma if (u.bits & v.bits).bit_count() == s]
    return out


def census(w: VertexSet, gamma: IndependenceResult) -> CensusReport:
    _check_subset(w, gamma)
    p = w.params
    g = gamma.witness.sorted()
    per_anchor = {u: 0 for u in g}
    u1, u2 = [], []
    for v, nbrs in _gamma_neighbors(w, g).items():
        if len(nbrs) == 1:
            u1.append(v)
            per_anchor[nbrs[0]] += 1
        elif len(nbrs) == 2:
            u2.append(v)
    marks = enumerate_checkmarks(w, gamma)
    case1 = sum(1 for m in marks if m.case is Case.CASE1)
    return CensusReport(
        u1_size=len(u1),
        u2_size=len(u2),
        per_anchor=per_anchor,
        checkmarks_case1=case1,
        checkmarks_case2=len(marks) - case1,
        envelope_ratio=Fraction(len(u1) + len(u2), p.n ** (2 * p.s)),
        diagnostic=not gamma.exact,
        u1=u1,
        u2=u2,
    )


def enumerate_checkmarks(w: VertexSet, gamma: IndependenceResult) -> list[Checkmark]:
    """One checkmark per vertex of U2, sides ordered by rank, centers in W's order."""
    _check_subset(w, gamma)
    s = w.params.s
    g = gamma.witness.sorted()
    marks = []
    for v, nbrs in _gamma_neighbors(w, g).items():
        if len(nbrs) != 2:
            continue
        a, b = nbrs
        overlap = ((a.bits | b.bits) & v.bits).bit_count()
        case = Case.CASE2 if overlap == s else Case.CASE1
        marks.append(Checkmark(a, b, v, case, overlap))
    return marks


def exchange_audit(w: VertexSet, gamma: IndependenceResult) -> AuditReport:
    """Check that no swap of one or two Gamma vertices yields a larger independent set.

    (a) within each U1_u every two vertices are adjacent;
    (b) among the centers of checkmarks sharing a side pair, no three are
        pairwise non-adjacent.

    A failure carries the swap that enlarges Gamma, which means Gamma was not
    a maximum independent set.
    """
    if not gamma.exact:
        raise DomainError("exchange audit needs an exact maximum independent set")
    _check_subset(w, gamma)
    p = w.params
    g = gamma.witness.sorted()
    by_anchor: dict[Vertex, list[Vertex]] = {}
    by_pair: dict[tuple[Vertex, Vertex], list[Vertex]] = {}
    for v, nbrs in _gamma_neighbors(w, g).items():
        if len(nbrs) == 1:
            by_anchor.setdefault(nbrs[0], []).append(v)
        elif len(nbrs) == 2:
            by_pair.setdefault((nbrs[0], nbrs[1]), []).append(v)

    for u in sorted(by_anchor):
        for x, y in combinations(by_anchor[u], 2):
            if not adjacent(x, y, p):
                return AuditReport(False, "single-anchor", (u,), (x, y))
    for pair in sorted(by_pair):
        for x, y, z in combinations(by_pair[pair], 3):
            if not (adjacent(x, y, p) or adjacent(x, z, p) or adjacent(y, z, p)):
                return AuditReport(False, "checkmark-centers", pair, (x, y, z))
    return AuditReport(True)

