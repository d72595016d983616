"""Command-line front end.

Subcommands: `decompose` (cubic bridgeless graph -> verified cycle double
cover), `verify` (check a cover file), `oracle` (brute-force search),
`gen` (random cubic bridgeless graphs), and `crosscheck` (generate, solve
both ways, and compare).

Exit codes: 0 success / definitive answer, 1 input or usage error,
2 case failure or verification mismatch, 3 indeterminate oracle search.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .coloring import EdgeColoredGraph
from .decomposer import decompose, decompose_goddyn
from .graphs import (
    Cycle,
    Graph,
    GraphError,
    find_bridges,
    is_connected,
    is_cubic,
    parse_edge_list,
    parse_graph6,
    serialize_graph6,
)
from .linegraph import LineGraphError, build_line_graph, cover_from_decomposition
from .oracle import (
    GeneratorConfig,
    brute_force_cdc,
    brute_force_rainbow_decomposition,
    random_cubic_bridgeless,
)
from .verify import verify_cdc

BUDGET_ENV = "CDCOVER_FALLBACK_BUDGET"


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(path).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _load_graph(path: str, fmt: str) -> Graph:
    text = _read_text(path)
    if fmt == "graph6":
        line = next((ln for ln in text.splitlines() if ln.strip()), "")
        return parse_graph6(line)
    return parse_edge_list(text)


def _check_cubic_bridgeless(g: Graph) -> str | None:
    for v in range(g.n):
        if g.degree(v) != 3:
            return f"graph is not cubic: vertex {v} has degree {g.degree(v)}"
    if not is_connected(g):
        return "graph is not connected"
    bridges = find_bridges(g)
    if bridges:
        return f"graph has a bridge: {sorted(bridges)[0]}"
    return None


def _fallback_budget(args) -> int | None:
    if args.fallback_budget is not None:
        return args.fallback_budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else None


def cmd_decompose(args) -> int:
    try:
        g = _load_graph(args.input, args.format)
    except (GraphError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    problem = _check_cubic_bridgeless(g)
    if problem:
        print(f"error: {problem}", file=sys.stderr)
        return 1
    clg = build_line_graph(g)

    budget = _fallback_budget(args)
    if args.goddyn_cycle:
        try:
            vs = tuple(int(t) for t in args.goddyn_cycle.replace(",", " ").split())
            first = Cycle(vs)
        except (ValueError, GraphError) as err:
            print(f"error: bad --goddyn-cycle: {err}", file=sys.stderr)
            return 1
        if not first.is_cycle_of(g):
            print(f"error: --goddyn-cycle {vs} is not a cycle of the input graph",
                  file=sys.stderr)
            return 1
        trace = decompose_goddyn(clg, first, fallback_max_len=budget)
    else:
        trace = decompose(clg.lg, fallback_max_len=budget)

    if args.trace:
        _write_text(args.trace, _dump(trace.to_json()))
    if not trace.success:
        print(f"case failure in {trace.failure.case}: {trace.failure.message}",
              file=sys.stderr)
        if not args.trace:
            _write_text(None, _dump(trace.to_json()))
        return 2
    try:
        cover = cover_from_decomposition(clg, trace.cycles)
    except LineGraphError as err:
        print(f"error: produced decomposition failed verification: {err}",
              file=sys.stderr)
        return 2
    verdict = verify_cdc(g, cover)
    if not verdict.accepted:
        print("error: cover rejected by the independent verifier", file=sys.stderr)
        _write_text(None, _dump(verdict.to_json()))
        return 2
    _write_text(args.output, _dump(cover.to_json(g)))
    return 0


def cmd_verify(args) -> int:
    try:
        g = _load_graph(args.graph, args.format)
        payload = json.loads(_read_text(args.cover))
    except (GraphError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    cycles = payload["cycles"] if isinstance(payload, dict) else payload
    verdict = verify_cdc(g, cycles)
    _write_text(None, _dump(verdict.to_json()))
    return 0 if verdict.accepted else 1


def cmd_oracle(args) -> int:
    try:
        g = _load_graph(args.input, args.format)
    except (GraphError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    if args.mode == "cdc":
        result = brute_force_cdc(g, time_budget=args.budget)
    else:
        problem = _check_cubic_bridgeless(g)
        if problem:
            print(f"error: {problem}", file=sys.stderr)
            return 1
        clg = build_line_graph(g)
        result = brute_force_rainbow_decomposition(clg.lg, time_budget=args.budget)
    print(result.status)
    return 0 if result.status in ("found", "absent") else 3


def cmd_gen(args) -> int:
    try:
        lines = []
        for i in range(args.count):
            cfg = GeneratorConfig(args.n, args.seed + i)
            lines.append(serialize_graph6(random_cubic_bridgeless(cfg)))
    except GraphError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    _write_text(args.output, "\n".join(lines) + ("\n" if lines else ""))
    return 0


def cmd_crosscheck(args) -> int:
    import random

    if args.n_max < 4 or args.n_max % 2:
        print(f"error: --n-max must be an even integer >= 4, got {args.n_max}",
              file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    sizes = list(range(4, args.n_max + 1, 2))
    art_dir = Path("crosscheck-artifacts")
    rows = []
    bad = 0
    for idx in range(args.count):
        n = sizes[rng.randrange(len(sizes))]
        gseed = rng.getrandbits(32)
        g = random_cubic_bridgeless(GeneratorConfig(n, gseed))
        clg = build_line_graph(g)
        trace = decompose(clg.lg)
        if trace.success:
            cover = cover_from_decomposition(clg, trace.cycles)
            dec = "success" if verify_cdc(g, cover).accepted else "unverified"
        else:
            dec = "case_failure"
        oracle = brute_force_cdc(g, time_budget=args.budget)
        ora = oracle.status
        agree = dec == "success" and ora in ("found", "indeterminate")
        if not agree:
            bad += 1
            art_dir.mkdir(exist_ok=True)
            art = {"index": idx, "n": n, "seed": gseed,
                   "graph6": serialize_graph6(g), "decompose": dec,
                   "oracle": ora, "trace": trace.to_json()}
            (art_dir / f"crosscheck_{idx:04d}.json").write_text(_dump(art))
        rows.append((idx, n, gseed, dec, ora, "ok" if agree else "MISMATCH"))
    print(f"{'idx':>4} {'n':>3} {'seed':>10} {'decompose':>12} {'oracle':>13} verdict")
    for row in rows:
        print(f"{row[0]:>4} {row[1]:>3} {row[2]:>10} {row[3]:>12} {row[4]:>13} {row[5]}")
    print(f"{args.count} instances, {bad} mismatches")
    return 2 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cdcover",
        description="Cycle double covers of cubic bridgeless graphs via "
                    "rainbow cycle decompositions of colored line graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="compute a verified cycle double cover")
    p.add_argument("--input", required=True, help="graph file, or - for stdin")
    p.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")
    p.add_argument("--goddyn-cycle", default=None, metavar="V0,V1,...",
                   help="cycle of the input graph the cover must contain")
    p.add_argument("--output", default=None, help="cover JSON (default stdout)")
    p.add_argument("--trace", default=None, help="write the decomposition trace JSON")
    p.add_argument("--fallback-budget", type=int, default=None,
                   help=f"cycle-length budget for the fallback search "
                        f"(env {BUDGET_ENV})")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="verify a cover file against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--cover", required=True)
    p.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force search for covers")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")
    p.add_argument("--mode", choices=["cdc", "rainbow"], default="cdc",
                   help="cdc on the graph, or rainbow on its line graph")
    p.add_argument("--budget", type=float, default=60.0, help="seconds")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate random cubic bridgeless graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("crosscheck", help="generate, decompose, and cross-check")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--budget", type=float, default=30.0,
                   help="oracle seconds per instance")
    p.set_defaults(func=cmd_crosscheck)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
