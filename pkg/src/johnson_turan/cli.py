"""Command-line entry point: ``johnson-turan <command> --n N --r R --s S ...``.

Exit codes: 0 success, 1 operational error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from pathlib import Path
from typing import Any, Sequence

from .bounds import CSV_COLUMNS, CSV_EXTRA, BoundReport, alpha_estimate, peel_certify
from .census import census, enumerate_checkmarks, exchange_audit
from .combinatorics import GraphParams
from .errors import DomainError, JohnsonTuranError, SizingError
from .extremal import (
    BRANCH_BOUND_CAP,
    EXHAUSTIVE_BUDGET,
    ResultsFile,
    default_threads,
    r_of_l_exact,
    r_of_l_local_search,
    solve,
    sweep,
)
from .graph import VertexSet, random_vertex_set, total_counts
from .independence import EXACT_CAP, alpha_exact, greedy_maximal_independent_set, max_independent_set

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

DEFAULT_SEED = 0
AUTO_NODE_BUDGET = 2_000_000

SWEEP_DEFAULTS: dict[str, Any] = {
    "l_min": 1,
    "l_max": None,
    "methods": ["branch_bound"],
    "alpha_source": "auto",
    "seed": DEFAULT_SEED,
    "restarts": 20,
    "iterations": 10_000,
    "format": "csv",
    "out": None,
    "budget": EXHAUSTIVE_BUDGET,
    "cap": EXACT_CAP,
}


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _params(args: argparse.Namespace) -> GraphParams:
    if args.n is None or args.r is None or args.s is None:
        raise UsageError("--n, --r and --s are required")
    try:
        return GraphParams(args.n, args.r, args.s)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _load_w(args: argparse.Namespace, p: GraphParams) -> VertexSet:
    if args.w is not None:
        data = json.loads(Path(args.w).read_text())
        return VertexSet.from_json(p, data)
    if args.random is not None:
        return random_vertex_set(p, args.random, random.Random(args.seed))
    return VertexSet.full(p)


def _table(payload: Any) -> str:
    if isinstance(payload, list):
        if not payload:
            return ""
        cols = list(payload[0])
        cells = [[str(row.get(c, "")) for c in cols] for row in payload]
        widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
        lines += ["  ".join(x.ljust(w) for x, w in zip(r, widths)) for r in cells]
        return "\n".join(lines)
    width = max(len(k) for k in payload)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in payload.items())


def _render(payload: Any, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
        return buf.getvalue().rstrip("\n")
    return _table(payload)


def _emit(payload: Any, args: argparse.Namespace) -> None:
    text = _render(payload, args.format) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_info(args: argparse.Namespace) -> None:
    p = _params(args)
    counts = total_counts(p)
    _emit(
        {
            "n": p.n,
            "r": p.r,
            "s": p.s,
            "vertices": counts.vertices,
            "degree": counts.degree,
            "edges": counts.edges,
            "theorem4_regime": p.theorem4_regime,
            "degenerate": counts.degree == 0,
        },
        args,
    )


def cmd_alpha(args: argparse.Namespace) -> None:
    p = _params(args)
    if args.greedy:
        res = greedy_maximal_independent_set(VertexSet.full(p))
    else:
        res = alpha_exact(p, cap=args.cap)
    _emit(
        {"n": p.n, "r": p.r, "s": p.s, "alpha": res.cardinality, "exact": res.exact, "witness": res.witness.to_json()},
        args,
    )


def _auto_rl(p: GraphParams, l: int, args: argparse.Namespace):
    heuristic = r_of_l_local_search(
        p, l, seed=args.seed, restarts=args.restarts, iterations=args.iterations, threads=args.threads
    )
    if p.vertex_count > BRANCH_BOUND_CAP:
        return heuristic
    try:
        return r_of_l_exact(p, l, "branch_bound", node_budget=AUTO_NODE_BUDGET, upper=heuristic.value)
    except SizingError:
        return heuristic


def cmd_rl(args: argparse.Namespace) -> None:
    p = _params(args)
    if args.method == "auto":
        res = _auto_rl(p, args.l, args)
    else:
        res = solve(
            p,
            args.l,
            args.method,
            seed=args.seed,
            restarts=args.restarts,
            iterations=args.iterations,
            threads=args.threads,
            budget=args.budget,
            cap=args.bb_cap,
        )
    _emit(res.to_json(), args)


def cmd_peel(args: argparse.Namespace) -> None:
    p = _params(args)
    w = _load_w(args, p)
    trace = peel_certify(w, mode=args.mode, tight=args.tight, cap=args.cap)
    if args.format == "json":
        _emit(trace.to_json(), args)
    else:
        rows = [r.to_json() for r in trace.rounds]
        rows.append({"round": "total", "beta": "", "f": "", "heavy": "", "edges": trace.total_certified})
        _emit(rows, args)


def cmd_census(args: argparse.Namespace) -> None:
    p = _params(args)
    w = _load_w(args, p)
    if args.mode == "exact":
        gamma = max_independent_set(w, cap=args.cap)
    else:
        gamma = greedy_maximal_independent_set(w)
    payload = census(w, gamma).to_json()
    payload["gamma"] = gamma.witness.to_json()
    payload["audit"] = exchange_audit(w, gamma).to_json() if gamma.exact else None
    if args.checkmarks:
        payload["checkmarks"] = [m.to_json() for m in enumerate_checkmarks(w, gamma)]
    if args.format != "json":
        payload = {k: v for k, v in payload.items() if k not in ("per_anchor", "gamma", "checkmarks")}
        payload["audit"] = "n/a" if payload["audit"] is None else payload["audit"]["passed"]
    _emit(payload, args)


def cmd_bounds(args: argparse.Namespace) -> None:
    p = _params(args)
    source = args.alpha_source
    if source == "auto":
        source = "exact" if p.vertex_count <= args.cap else "frankl"
    alpha = alpha_estimate(p, source, cap=args.cap)
    res = _auto_rl(p, args.l, args)
    report = BoundReport.build(p, args.l, alpha, source, method=res.method, rl_value=res.value)
    if res.certified:
        report.exact_rl = res.value
        mode = "exact" if len(res.witness) <= args.cap else "greedy"
        report.peeling_certified = peel_certify(res.witness, mode=mode, cap=args.cap).total_certified
    if args.format == "csv":
        _emit([report.to_csv_row()], args)
    else:
        _emit(report.to_json(), args)


def _sweep_settings(args: argparse.Namespace) -> dict[str, Any]:
    settings = dict(SWEEP_DEFAULTS)
    if args.config:
        data = tomllib.loads(Path(args.config).read_text())
        data = data.get("sweep", data)
        unknown = set(data) - set(settings) - {"n", "r", "s"}
        if unknown:
            raise UsageError(f"unknown keys in {args.config}: {sorted(unknown)}")
        settings.update(data)
    for key in ("n", "r", "s"):
        if getattr(args, key) is None and key in settings:
            setattr(args, key, settings[key])
    for key in SWEEP_DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    if settings["format"] not in ("csv", "json"):
        raise UsageError("sweep output format must be csv or json")
    return settings


def cmd_sweep(args: argparse.Namespace) -> None:
    cfg = _sweep_settings(args)
    p = _params(args)
    l_max = cfg["l_max"] if cfg["l_max"] is not None else p.vertex_count
    l_values = range(cfg["l_min"], l_max + 1)
    for m in cfg["methods"]:
        if m not in ("exhaustive", "branch_bound", "local_search"):
            raise UsageError(f"unknown method {m!r}")
    opts = dict(
        seed=cfg["seed"],
        restarts=cfg["restarts"],
        iterations=cfg["iterations"],
        budget=cfg["budget"],
        threads=args.threads,
    )
    if cfg["out"]:
        sink = ResultsFile(cfg["out"], cfg["format"])
        skip = sink.done_keys() if args.resume else set()
        if not args.resume and sink.path.exists():
            sink.path.unlink()
        sink.append(sweep(p, l_values, cfg["methods"], cfg["alpha_source"], skip=skip, cap=cfg["cap"], **opts))
        return
    if args.resume:
        raise UsageError("--resume needs --out")
    reports = sweep(p, l_values, cfg["methods"], cfg["alpha_source"], cap=cfg["cap"], **opts)
    if cfg["format"] == "csv":
        args.format = "csv"
        rows = [r.to_csv_row() for r in reports]
        sys.stdout.write(_render(rows, "csv") if rows else ",".join(CSV_COLUMNS + CSV_EXTRA))
        sys.stdout.write("\n")
    else:
        for r in reports:
            sys.stdout.write(json.dumps(r.to_json()) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="johnson-turan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--s", type=int)
    common.add_argument("--format", choices=["json", "csv", "table"], default=None)
    common.add_argument("--out", default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--threads", type=_positive, default=None, help="worker processes (env JOHNSON_TURAN_THREADS)")
    common.add_argument("--cap", type=_positive, default=None, help=f"exact independent-set cap (default {EXACT_CAP})")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--restarts", type=_positive, default=None)
    search.add_argument("--iterations", type=int, default=None)
    search.add_argument("--budget", type=_positive, default=None, help="exhaustive subset budget")

    wsrc = argparse.ArgumentParser(add_help=False)
    group = wsrc.add_mutually_exclusive_group()
    group.add_argument("--w", help="JSON file with a vertex set, e.g. [[1,2,3],[1,4,5]]")
    group.add_argument("--random", type=int, help="draw a random W of this size (uses --seed)")
    wsrc.add_argument("--mode", choices=["exact", "greedy"], default="exact")

    p = sub.add_parser("info", parents=[common], help="vertex, degree and edge counts")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("alpha", parents=[common], help="independence number of the whole graph")
    p.add_argument("--greedy", action="store_true")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("rl", parents=[common, search], help="minimum induced edges over l-subsets")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--method", choices=["auto", "exhaustive", "branch_bound", "local_search"], default="auto")
    p.add_argument("--bb-cap", type=_positive, default=None, help=f"branch-and-bound vertex cap (default {BRANCH_BOUND_CAP})")
    p.set_defaults(func=cmd_rl)

    p = sub.add_parser("peel", parents=[common, wsrc], help="peeling certificate for a vertex set")
    p.add_argument("--tight", action="store_true", help="credit min(k, 3) edges per residual vertex")
    p.set_defaults(func=cmd_peel)

    p = sub.add_parser("census", parents=[common, wsrc], help="U1/U2 census, checkmarks and exchange audit")
    p.add_argument("--checkmarks", action="store_true", help="include the checkmark list (json)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("bounds", parents=[common, search], help="one bound report row for a given l")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--alpha-source", choices=["auto", "exact", "midpoint", "frankl"], default="auto")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sweep", parents=[common, search], help="bound reports over a range of l")
    p.add_argument("--l-min", type=int, default=None)
    p.add_argument("--l-max", type=int, default=None)
    p.add_argument("--methods", nargs="+", default=None)
    p.add_argument("--alpha-source", choices=["auto", "exact", "midpoint", "frankl"], default=None)
    p.add_argument("--config", help="TOML experiment file; flags override its values")
    p.add_argument("--resume", action="store_true", help="skip (n,r,s,l,method) rows already in --out")
    p.set_defaults(func=cmd_sweep)
    return parser


def _fill_defaults(args: argparse.Namespace) -> None:
    if args.command == "sweep":
        if args.threads is None:
            args.threads = default_threads()
        return
    defaults = {
        "format": "table",
        "seed": DEFAULT_SEED,
        "threads": default_threads(),
        "cap": EXACT_CAP,
        "restarts": 20,
        "iterations": 10_000,
        "budget": EXHAUSTIVE_BUDGET,
    }
    for key, value in defaults.items():
        if getattr(args, key, None) is None and hasattr(args, key):
            setattr(args, key, value)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    _fill_defaults(args)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"johnson-turan: error: {exc}", file=sys.stderr)
        return 2
    except (JohnsonTuranError, OSError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
