"""Command-line front end.  Prints one JSON object per run.

Exit status: 0 on success, 1 when a detect command with ``--fail-on-absent``
finds nothing, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import apps, oracle
from .graphcore import Graph, GraphFormatError, bipartition, parse_graph

COMMANDS = (
    "count-ham",
    "detect-ham-bip",
    "detect-ham-indep",
    "count-pm",
    "count-kmatch",
    "count-maxmatch",
    "count-kstar",
)


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--graph", required=True, help="graph file (edge-list format)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--threads", type=int, default=0, help="worker threads (0 = all cores)")
    p.add_argument("--json", action="store_true", default=True, help="JSON output (always on)")
    p.add_argument("--timing", action="store_true", help="add elapsed_ms to the output")
    p.add_argument("--source", type=int)
    p.add_argument("--target", type=int)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--indep", help="comma-separated independent set")
    p.add_argument("--k", type=int)
    p.add_argument("--fail-on-absent", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treesieve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    orc = sub.add_parser("oracle", help="brute-force reference for the same commands")
    osub = orc.add_subparsers(dest="oracle_command", required=True)
    for name in COMMANDS:
        osub.add_parser(name, parents=[common])
    return parser


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required")


def _indep(args) -> list[int]:
    _need(args, "indep")
    if not args.indep.strip():
        return []
    try:
        return [int(x) for x in args.indep.split(",")]
    except ValueError:
        raise UsageError(f"bad --indep list: {args.indep!r}") from None


def _check_direction(G: Graph, args) -> None:
    if args.directed != G.directed:
        kind = "directed" if G.directed else "undirected"
        raise UsageError(f"graph file is {kind}; pass --directed exactly for directed graphs")


def _run(cmd: str, G: Graph, args, workers: int) -> dict:
    seed = args.seed
    if cmd == "count-ham":
        _need(args, "source", "target")
        _check_direction(G, args)
        fn = apps.count_ham_paths_directed if G.directed else apps.count_ham_paths_undirected
        return {"count": fn(G, args.source, args.target, seed, workers)}
    if cmd == "detect-ham-bip":
        _need(args, "source", "target")
        _check_direction(G, args)
        fn = apps.detect_ham_path_bip_directed if G.directed else apps.detect_ham_path_bip_undirected
        res = fn(G, args.source, args.target, args.trials, seed, workers)
        return {"detected": res.detected, "trials": res.trials}
    if cmd == "detect-ham-indep":
        _need(args, "source", "target")
        _check_direction(G, args)
        fn = apps.detect_ham_path_indep_directed if G.directed else apps.detect_ham_path_indep_undirected
        res = fn(G, _indep(args), args.source, args.target, args.trials, seed, workers)
        return {"detected": res.detected, "trials": res.trials}
    if cmd == "count-pm":
        return {"count": apps.count_pm_bipartite(G, seed, workers)}
    if cmd == "count-kmatch":
        _need(args, "k")
        return {"count": apps.count_k_matchings_bipartite(G, args.k, seed, workers)}
    if cmd == "count-maxmatch":
        return {"count": apps.count_maximum_matchings(G, seed, workers)}
    if cmd == "count-kstar":
        _need(args, "k")
        return {"count": apps.count_kstar_covers(G, args.k, seed, workers)}
    raise UsageError(f"unknown command {cmd}")


def _run_oracle(cmd: str, G: Graph, args) -> dict:
    if cmd in ("count-ham", "detect-ham-bip", "detect-ham-indep"):
        _need(args, "source", "target")
        _check_direction(G, args)
        if cmd == "detect-ham-bip":
            V1, V2 = bipartition(G)
            if args.source not in V1 or args.target not in V2:
                raise UsageError("source must lie in part 1 and target in part 2")
        n = oracle.count_ham_paths_bf(G, args.source, args.target)
        return {"count": n} if cmd == "count-ham" else {"detected": n > 0}
    if cmd == "count-pm":
        return {"count": oracle.count_matchings_bf(G, "perfect")}
    if cmd == "count-kmatch":
        _need(args, "k")
        return {"count": oracle.count_matchings_bf(G, args.k)}
    if cmd == "count-maxmatch":
        return {"count": oracle.count_matchings_bf(G, "maximum")}
    if cmd == "count-kstar":
        _need(args, "k")
        return {"count": oracle.count_kstar_covers_bf(G, args.k)}
    raise UsageError(f"unknown command {cmd}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    t0 = time.perf_counter()
    try:
        try:
            with open(args.graph, encoding="utf-8") as fh:
                G = parse_graph(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {args.graph}: {exc.strerror}") from None
        if args.command == "oracle":
            out = _run_oracle(args.oracle_command, G, args)
        else:
            workers = args.threads or os.cpu_count() or 1
            out = _run(args.command, G, args, workers)
    except (UsageError, GraphFormatError, ValueError, AssertionError) as exc:
        print(json.dumps({"error": str(exc)}))
        return 2
    if "count" in out:
        out["count"] = str(out["count"])
    out["seed"] = args.seed
    if args.timing:
        out["elapsed_ms"] = int((time.perf_counter() - t0) * 1000)
    print(json.dumps(out, separators=(",", ":")))
    if args.command != "oracle" and "detected" in out and args.fail_on_absent and not out["detected"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
