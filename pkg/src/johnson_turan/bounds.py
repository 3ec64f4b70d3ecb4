"""Turan-type lower bounds for r(l) and the independent-set peeling certificate.

Closed forms (all exact rationals):

    turan      l^2/(2a) - l/2          valid for every graph once l > a
    distance   l^2/a                   leading term for distance graphs
    t4         3 l^2/(2a)              leading term for G(n, 2s+1, s)
    peeling    sum_{i=1}^{floor(l/a)} (3(l - i a) - 2 c1 n^(2s))

Only ``turan`` (with an exact independence number) and ``peel_certify`` give
certified statements about a finite instance; ``distance`` and ``t4`` drop
their (1 + o(1)) factors and are reported as leading terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal, Union

from .combinatorics import GraphParams
from .errors import DomainError, SizingError
from .graph import VertexSet
from .independence import (
    IndependenceResult,
    alpha_exact,
    frankl_asymptotic,
    greedy_maximal_independent_set,
    max_independent_set,
)

Number = Union[int, Fraction]
AlphaSource = Literal["exact", "midpoint", "frankl"]

CSV_COLUMNS = ["n", "r", "s", "l", "alpha", "alpha_source", "turan", "distance", "t4", "peeling", "exact_rl"]
# trailing columns, appended after the fixed block
CSV_EXTRA = ["method", "rl_value", "error"]


def _check_alpha(alpha: Number) -> None:
    if alpha <= 0:
        raise DomainError(f"independence number must be positive, got {alpha}")


def turan_applies(l: int, alpha: Number) -> bool:
    return l > alpha


def turan_bound(l: int, alpha: Number) -> Fraction:
    """l^2/(2 alpha) - l/2, or 0 when l <= alpha (check ``turan_applies``)."""
    _check_alpha(alpha)
    if not turan_applies(l, alpha):
        return Fraction(0)
    return Fraction(l * l) / (2 * alpha) - Fraction(l, 2)


def distance_bound_leading(l: int, alpha: Number) -> Fraction:
    _check_alpha(alpha)
    return Fraction(l * l) / alpha


def t4_bound_leading(l: int, alpha: Number) -> Fraction:
    _check_alpha(alpha)
    return Fraction(3 * l * l) / (2 * alpha)


def peeling_sum(l: int, alpha: Number, n: int, s: int, c1: Number, clamp: bool = True) -> Fraction:
    """Finite peeling sum over i = 1..floor(l/alpha).

    With ``clamp`` each term is floored at 0; without it the raw sum is returned
    and may be negative when l is small relative to n^(2s).
    """
    _check_alpha(alpha)
    if c1 < 0:
        raise DomainError(f"c1 must be non-negative, got {c1}")
    penalty = 2 * Fraction(c1) * n ** (2 * s)
    total = Fraction(0)
    for i in range(1, math.floor(Fraction(l) / Fraction(alpha)) + 1):
        term = 3 * (l - i * Fraction(alpha)) - penalty
        total += max(term, Fraction(0)) if clamp else term
    return total


@dataclass
class PeelRound:
    index: int
    beta: int
    f: int
    heavy: int
    edges: int
    residual: VertexSet = field(repr=False)
    gamma: IndependenceResult = field(repr=False)

    def to_json(self) -> dict[str, Any]:
        return {"round": self.index, "beta": self.beta, "f": self.f, "heavy": self.heavy, "edges": self.edges}


@dataclass
class PeelingTrace:
    rounds: list[PeelRound]
    mode: str
    tight: bool

    @property
    def total_certified(self) -> int:
        return sum(r.edges for r in self.rounds)

    def to_json(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "tight": self.tight,
            "rounds": [r.to_json() for r in self.rounds],
            "total_certified": self.total_certified,
        }


def peel_certify(
    w: VertexSet,
    mode: Literal["exact", "greedy"] = "exact",
    tight: bool = False,
    cap: int | None = None,
) -> PeelingTrace:
    """Repeatedly strip an independent set Gamma_i and count edges into it.

    Each residual vertex v outside Gamma_i has k = n(Gamma_i, v) >= 1 edges to
    Gamma_i. The default accounting credits 3 when k >= 3 and 1 when k is 1 or
    2; ``tight`` credits min(k, 3). Edges credited in different rounds go into
    different Gamma_i, so the total never exceeds r(W).
    """
    if mode not in ("exact", "greedy"):
        raise DomainError(f"unknown peeling mode {mode!r}")
    s = w.params.s
    rounds = []
    residual = w.sorted()
    i = 0
    while len(residual):
        i += 1
        if mode == "exact":
            try:
                gamma = max_independent_set(residual, cap=cap)
            except SizingError as exc:
                raise SizingError(f"{exc}; try greedy mode", limit=exc.limit, requested=exc.requested) from exc
        else:
            gamma = greedy_maximal_independent_set(residual)
        gbits = [u.bits for u in gamma.witness]
        f = heavy = edges = 0
        for v in residual:
            if v in gamma.witness:
                continue
            k = sum(1 for b in gbits if (b & v.bits).bit_count() == s)
            assert k >= 1, "independent set is not maximal"
            if k >= 3:
                heavy += 1
                edges += 3
            else:
                f += 1
                edges += k if tight else 1
        rounds.append(PeelRound(i, gamma.cardinality, f, heavy, edges, residual, gamma))
        residual = residual.without(gamma.witness)
    return PeelingTrace(rounds, mode, tight)


def alpha_estimate(p: GraphParams, source: AlphaSource, cap: int | None = None) -> Number:
    """Independence number from the exact solver, the r=3,s=1 range midpoint, or the asymptotic formula."""
    if source == "exact":
        return alpha_exact(p, cap=cap).cardinality
    if source == "midpoint":
        if (p.r, p.s) != (3, 1):
            raise DomainError("the range midpoint n-1 is only defined for r=3, s=1")
        return p.n - 1
    if source == "frankl":
        return frankl_asymptotic(p)
    raise DomainError(f"unknown alpha source {source!r}")


def _fmt(x: Number | None) -> str:
    return "" if x is None else str(x)


@dataclass
class BoundReport:
    """One row of bound values against the best known r(l) for a given l."""

    params: GraphParams
    l: int
    alpha: Number
    alpha_source: str
    turan: Fraction
    turan_applicable: bool
    distance: Fraction
    t4: Fraction
    peeling_certified: int | None = None
    exact_rl: int | None = None
    rl_value: int | None = None
    method: str = ""
    error: str = ""

    @classmethod
    def build(cls, p: GraphParams, l: int, alpha: Number, alpha_source: str, **extra: Any) -> BoundReport:
        return cls(
            params=p,
            l=l,
            alpha=alpha,
            alpha_source=alpha_source,
            turan=turan_bound(l, alpha),
            turan_applicable=turan_applies(l, alpha),
            distance=distance_bound_leading(l, alpha),
            t4=t4_bound_leading(l, alpha),
            **extra,
        )

    def violations(self) -> list[str]:
        """Certified lower bounds exceeding a certified r(l)."""
        out = []
        if self.exact_rl is None:
            return out
        if self.alpha_source == "exact" and self.turan_applicable and self.exact_rl < math.ceil(self.turan):
            out.append(f"r({self.l})={self.exact_rl} < ceil(turan)={math.ceil(self.turan)}")
        if self.peeling_certified is not None and self.exact_rl < self.peeling_certified:
            out.append(f"r({self.l})={self.exact_rl} < peeling={self.peeling_certified}")
        return out

    def to_json(self) -> dict[str, Any]:
        p = self.params
        return {
            "n": p.n,
            "r": p.r,
            "s": p.s,
            "l": self.l,
            "alpha": str(self.alpha),
            "alpha_source": self.alpha_source,
            "turan": str(self.turan),
            "turan_applicable": self.turan_applicable,
            "distance": str(self.distance),
            "t4": str(self.t4),
            "asymptotic_certified": False,
            "peeling_certified": self.peeling_certified,
            "exact_rl": self.exact_rl,
            "rl_value": self.rl_value,
            "method": self.method,
            "error": self.error,
            "theorem4_regime": p.theorem4_regime,
        }

    def to_csv_row(self) -> dict[str, str]:
        p = self.params
        return {
            "n": str(p.n),
            "r": str(p.r),
            "s": str(p.s),
            "l": str(self.l),
            "alpha": str(self.alpha),
            "alpha_source": self.alpha_source,
            "turan": str(self.turan),
            "distance": str(self.distance),
            "t4": str(self.t4),
            "peeling": _fmt(self.peeling_certified),
            "exact_rl": _fmt(self.exact_rl),
            "method": self.method,
            "rl_value": _fmt(self.rl_value),
            "error": self.error,
        }

    @classmethod
    def from_csv_row(cls, row: dict[str, str]) -> BoundReport:
        def opt(key: str) -> int | None:
            return int(row[key]) if row.get(key) else None

        alpha = Fraction(row["alpha"])
        l = int(row["l"])
        return cls(
            params=GraphParams(int(row["n"]), int(row["r"]), int(row["s"])),
            l=l,
            alpha=int(alpha) if alpha.denominator == 1 else alpha,
            alpha_source=row["alpha_source"],
            turan=Fraction(row["turan"]),
            turan_applicable=turan_applies(l, alpha),
            distance=Fraction(row["distance"]),
            t4=Fraction(row["t4"]),
            peeling_certified=opt("peeling"),
            exact_rl=opt("exact_rl"),
            rl_value=opt("rl_value"),
            method=row.get("method", ""),
            error=row.get("error", ""),
        )
