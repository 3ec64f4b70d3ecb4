"""r(l): the fewest edges induced by any l vertices of G(n, r, s).

Exact methods walk l-subsets of vertex ranks in colex order (largest element
first, smallest choice first), so the first optimum met is the colex-least
one and becomes the witness. Local search gives uncertified upper bounds.
"""

from __future__ import annotations

import csv
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Literal, Sequence

from .bounds import CSV_COLUMNS, CSV_EXTRA, BoundReport, alpha_estimate, peel_certify
from .combinatorics import GraphParams, binomial
from .errors import DomainError, JohnsonTuranError, SizingError
from .graph import VertexSet
from .independence import EXACT_CAP

#: Largest number of l-subsets the exhaustive method will enumerate.
EXHAUSTIVE_BUDGET = 10**8
#: Largest vertex count accepted by branch-and-bound.
BRANCH_BOUND_CAP = 40

Method = Literal["exhaustive", "branch_bound", "local_search"]
METHODS = ("exhaustive", "branch_bound", "local_search")


@dataclass
class ExtremalResult:
    l: int
    value: int
    witness: VertexSet
    certified: bool
    method: str
    nodes_explored: int
    wall_time: float

    def to_json(self) -> dict:
        p = self.witness.params
        return {
            "n": p.n,
            "r": p.r,
            "s": p.s,
            "l": self.l,
            "value": self.value,
            "certified": self.certified,
            "method": self.method,
            "nodes_explored": self.nodes_explored,
            "wall_time": self.wall_time,
            "witness": self.witness.to_json(),
        }


def _graph(p: GraphParams) -> tuple[VertexSet, list[int]]:
    full = VertexSet.full(p)
    return full, full.adjacency


def _witness(full: VertexSet, mask: int) -> VertexSet:
    return VertexSet(tuple(v for i, v in enumerate(full.members) if mask >> i & 1), full.params)


def _colex_search(adj: list[int], l: int, prune: bool, upper: int | None, node_budget: int | None):
    """Minimum (edges, mask) over l-subsets, visiting subsets in colex order."""
    best = upper + 1 if upper is not None else 1 << 62
    best_mask = None
    nodes = 0

    def extend(top: int, need: int, chosen: int, edges: int) -> None:
        nonlocal best, best_mask, nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SizingError(f"branch-and-bound exceeded its node budget {node_budget}", limit=node_budget)
        if need == 0:
            if edges < best:
                best, best_mask = edges, chosen
            return
        if prune:
            if edges >= best:
                return
            gains = sorted((adj[v] & chosen).bit_count() for v in range(top))
            if edges + sum(gains[:need]) >= best:
                return
        for v in range(need - 1, top):
            extend(v, need - 1, chosen | 1 << v, edges + (adj[v] & chosen).bit_count())

    extend(len(adj), l, 0, 0)
    return best, best_mask, nodes


def r_of_l_exact(
    p: GraphParams,
    l: int,
    method: Method = "branch_bound",
    budget: int | None = None,
    cap: int | None = None,
    node_budget: int | None = None,
    upper: int | None = None,
) -> ExtremalResult:
    """Certified r(l) with the colex-least minimizing witness.

    ``upper`` is an optional known upper bound on r(l) (e.g. from local
    search); it only speeds up pruning.
    """
    count = p.vertex_count
    if not 0 <= l <= count:
        raise DomainError(f"l={l} outside 0..{count}")
    if method == "exhaustive":
        budget = EXHAUSTIVE_BUDGET if budget is None else budget
        subsets = binomial(count, l)
        if subsets > budget:
            raise SizingError(
                f"exhaustive search needs C({count},{l}) = {subsets} subsets, budget is {budget}",
                limit=budget,
                requested=subsets,
            )
        prune = False
        upper = None
    elif method == "branch_bound":
        cap = BRANCH_BOUND_CAP if cap is None else cap
        if count > cap:
            raise SizingError(f"{p} has {count} vertices, branch-and-bound cap is {cap}", limit=cap, requested=count)
        prune = True
    else:
        raise DomainError(f"{method!r} is not an exact method")
    start = time.perf_counter()
    full, adj = _graph(p)
    value, mask, nodes = _colex_search(adj, l, prune, upper, node_budget)
    if mask is None:
        raise DomainError(f"upper bound {upper} is below r({l})")
    return ExtremalResult(l, value, _witness(full, mask), True, method, nodes, time.perf_counter() - start)


def _restart_seeds(seed: int, restarts: int) -> list[int]:
    master = random.Random(seed)
    return [master.getrandbits(64) for _ in range(restarts)]


def _one_restart(args: tuple[list[int], int, int, int]) -> tuple[int, int, int]:
    """Swap search from one random start; returns (value, mask, iterations used)."""
    adj, l, seed, iterations = args
    rng = random.Random(seed)
    size = len(adj)
    nbrs = [[j for j in range(size) if a >> j & 1] for a in adj]
    inside = rng.sample(range(size), l)
    mask = 0
    for v in inside:
        mask |= 1 << v
    outside = [v for v in range(size) if not mask >> v & 1]
    deg_in = [(a & mask).bit_count() for a in adj]
    value = sum(deg_in[v] for v in inside) // 2
    best, best_mask = value, mask
    used = 0
    if not inside or not outside:
        return best, best_mask, used
    rand = rng.random
    n_out = size - l
    for used in range(1, iterations + 1):
        if value == 0:
            break
        a = int(rand() * l)
        b = int(rand() * n_out)
        u, v = inside[a], outside[b]
        delta = deg_in[v] - deg_in[u] - (adj[u] >> v & 1)
        if delta > 0:
            continue
        for x in nbrs[u]:
            deg_in[x] -= 1
        for x in nbrs[v]:
            deg_in[x] += 1
        inside[a], outside[b] = v, u
        mask ^= (1 << u) | (1 << v)
        value += delta
        if value < best or (value == best and mask < best_mask):
            best, best_mask = value, mask
    return best, best_mask, used


def default_threads() -> int:
    env = os.environ.get("JOHNSON_TURAN_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def r_of_l_local_search(
    p: GraphParams,
    l: int,
    seed: int = 0,
    restarts: int = 20,
    iterations: int = 10_000,
    threads: int = 1,
) -> ExtremalResult:
    """Upper bound on r(l) by single-swap descent with random restarts.

    A swap (one vertex in, one out) is accepted when it does not increase the
    induced edge count. Restart seeds derive from ``seed`` alone, and the best
    restart is chosen by (value, colex mask), so the result is independent of
    ``threads``.
    """
    count = p.vertex_count
    if not 0 <= l <= count:
        raise DomainError(f"l={l} outside 0..{count}")
    if restarts < 1 or iterations < 0:
        raise DomainError("restarts must be >= 1 and iterations >= 0")
    start = time.perf_counter()
    full, adj = _graph(p)
    jobs = [(adj, l, s, iterations) for s in _restart_seeds(seed, restarts)]
    if threads > 1 and restarts > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(_one_restart, jobs))
        # keep exactly the restarts the sequential path would have run
        for i, o in enumerate(outcomes):
            if o[0] == 0:
                del outcomes[i + 1:]
                break
    else:
        outcomes = []
        for job in jobs:
            outcomes.append(_one_restart(job))
            if outcomes[-1][0] == 0:
                break
    value, mask, _ = min(outcomes, key=lambda o: (o[0], o[1]))
    nodes = sum(o[2] for o in outcomes)
    return ExtremalResult(l, value, _witness(full, mask), False, "local_search", nodes, time.perf_counter() - start)


def solve(p: GraphParams, l: int, method: Method, **opts) -> ExtremalResult:
    if method == "local_search":
        keys = ("seed", "restarts", "iterations", "threads")
        return r_of_l_local_search(p, l, **{k: opts[k] for k in keys if k in opts})
    keys = ("budget", "cap", "node_budget")
    return r_of_l_exact(p, l, method, **{k: opts[k] for k in keys if k in opts})


def _alpha_for_sweep(p: GraphParams, alpha_source: str, cap: int | None):
    if alpha_source == "auto":
        alpha_source = "exact" if p.vertex_count <= (cap or EXACT_CAP) else "frankl"
    return alpha_estimate(p, alpha_source, cap=cap), alpha_source


def sweep(
    p: GraphParams,
    l_values: Iterable[int],
    methods: Sequence[str] = ("exhaustive",),
    alpha_source: str = "auto",
    skip: set[tuple[int, int, int, int, str]] | None = None,
    cap: int | None = None,
    **opts,
) -> Iterator[BoundReport]:
    """One BoundReport per (l, method), skipping keys already in ``skip``.

    Errors for a single l are stored in the row's ``error`` field and the
    sweep carries on.
    """
    skip = skip or set()
    l_values = list(l_values)
    if not l_values:
        return
    alpha, source = _alpha_for_sweep(p, alpha_source, cap)
    for l in l_values:
        for method in methods:
            if (p.n, p.r, p.s, l, method) in skip:
                continue
            report = BoundReport.build(p, l, alpha, source, method=method)
            try:
                res = solve(p, l, method, **opts)
            except JohnsonTuranError as exc:
                report.error = str(exc)
                yield report
                continue
            report.rl_value = res.value
            if res.certified:
                report.exact_rl = res.value
                mode = "exact" if len(res.witness) <= (cap or EXACT_CAP) else "greedy"
                report.peeling_certified = peel_certify(res.witness, mode=mode, cap=cap).total_certified
            yield report


class ResultsFile:
    """Append-only CSV or JSON Lines results with (n, r, s, l, method) resume keys."""

    def __init__(self, path: str | Path, fmt: Literal["csv", "json"] = "csv"):
        self.path = Path(path)
        self.fmt = fmt

    def done_keys(self) -> set[tuple[int, int, int, int, str]]:
        return {(r.params.n, r.params.r, r.params.s, r.l, r.method) for r in self.read()}

    def read(self) -> list[BoundReport]:
        if not self.path.exists():
            return []
        with self.path.open(newline="") as fh:
            if self.fmt == "csv":
                return [BoundReport.from_csv_row(row) for row in csv.DictReader(fh)]
            rows = []
            for line in fh:
                if line.strip():
                    d = json.loads(line)
                    d["peeling"] = d.pop("peeling_certified")
                    rows.append(BoundReport.from_csv_row({k: "" if v is None else str(v) for k, v in d.items()}))
            return rows

    def append(self, reports: Iterable[BoundReport]) -> int:
        fresh = not self.path.exists() or self.path.stat().st_size == 0
        written = 0
        with self.path.open("a", newline="") as fh:
            if self.fmt == "csv":
                writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS + CSV_EXTRA)
                if fresh:
                    writer.writeheader()
                for rep in reports:
                    writer.writerow(rep.to_csv_row())
                    fh.flush()
                    written += 1
            else:
                for rep in reports:
                    fh.write(json.dumps(rep.to_json()) + "\n")
                    fh.flush()
                    written += 1
        return written
