"""Ground-truth generators and brute-force solvers.

These certify the main algorithm on small instances: exhaustive simple-cycle
enumeration, exact-cover backtracking for cycle double covers (per-edge
demand 2) and rainbow decompositions (demand 1), and a pairing-model sampler
for random cubic bridgeless graphs.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Literal

from .coloring import EdgeColoredGraph, check_goodness, is_almost_rainbow_at
from .graphs import Cycle, Edge, Graph, GraphError, edge, find_bridges, is_connected


@dataclass(frozen=True)
class GeneratorConfig:
    vertex_count: int
    seed: int
    max_rejections: int = 20000

    def __post_init__(self) -> None:
        if self.vertex_count < 4 or self.vertex_count % 2:
            raise GraphError(
                f"cubic graphs need an even vertex count >= 4, got {self.vertex_count}")
        if self.max_rejections < 1:
            raise GraphError("max_rejections must be positive")


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a budgeted exhaustive search.

    `indeterminate` means the budget ran out: distinct from `absent`, so a
    timeout is never mistaken for a proof of nonexistence.
    """

    status: Literal["found", "absent", "indeterminate"]
    cycles: tuple[Cycle, ...] | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def enumerate_cycles(g: Graph, max_len: int | None = None) -> list[Cycle]:
    """All simple cycles of g, canonical and sorted by (length, vertices).

    Each cycle is discovered once: paths start at their minimum vertex and
    the second vertex is kept smaller than the last.
    """
    out: list[Cycle] = []
    cap = max_len if max_len is not None else g.n
    for s in range(g.n):
        # iterative DFS over simple paths s, v1, v2, ... with vi > s
        stack: list[tuple[list[int], set[int]]] = [([s], {s})]
        while stack:
            path, on_path = stack.pop()
            v = path[-1]
            for w in g.adj[v]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(Cycle(tuple(path)))
                elif w > s and w not in on_path and len(path) < cap:
                    stack.append((path + [w], on_path | {w}))
    return sorted(out, key=lambda c: (len(c), c.vertices))


def _exact_multicover(edges: list[Edge], cycles: list[Cycle], demand: int,
                      almost_ok: set[int] | None = None,
                      branch: str = "constrained",
                      deadline: float | None = None,
                      max_nodes: int | None = None) -> SearchResult:
    """Backtracking cover of every edge exactly `demand` times by cycles.

    `almost_ok` marks cycle indices that may be used at most once in total
    (the almost-rainbow members of an almost-good decomposition). `branch`
    picks the next unsatisfied edge: "constrained" takes the edge with the
    fewest usable cycles, "lowest" the lowest-indexed edge.
    """
    remaining = {e: demand for e in edges}
    containing: dict[Edge, list[int]] = {e: [] for e in edges}
    for i, c in enumerate(cycles):
        for e in c.edges:
            if e not in containing:
                return SearchResult("absent")
            containing[e].append(i)

    chosen: list[int] = []
    almost_used = [False]
    nodes = [0]

    def usable(i: int) -> bool:
        if almost_ok is not None and i in almost_ok and almost_used[0]:
            return False
        return all(remaining[e] > 0 for e in cycles[i].edges)

    def pick_edge() -> Edge | None:
        open_edges = [e for e in edges if remaining[e] > 0]
        if not open_edges:
            return None
        if branch == "lowest":
            return open_edges[0]
        return min(open_edges,
                   key=lambda e: (sum(1 for i in containing[e] if usable(i)), e))

    def search() -> bool:
        nodes[0] += 1
        if max_nodes is not None and nodes[0] > max_nodes:
            raise TimeoutError
        if deadline is not None and nodes[0] % 64 == 0 and time.monotonic() > deadline:
            raise TimeoutError
        e = pick_edge()
        if e is None:
            return True
        for i in containing[e]:
            if not usable(i):
                continue
            for f in cycles[i].edges:
                remaining[f] -= 1
            was_almost = almost_ok is not None and i in almost_ok
            if was_almost:
                almost_used[0] = True
            chosen.append(i)
            if search():
                return True
            chosen.pop()
            if was_almost:
                almost_used[0] = False
            for f in cycles[i].edges:
                remaining[f] += 1
        return False

    try:
        ok = search()
    except TimeoutError:
        return SearchResult("indeterminate")
    if not ok:
        return SearchResult("absent")
    return SearchResult("found", tuple(cycles[i] for i in chosen))


def brute_force_cdc(g: Graph, time_budget: float | None = None,
                    branch: str = "constrained",
                    max_nodes: int | None = 2_000_000) -> SearchResult:
    """Exhaustive search for a cycle double cover (cycles may repeat).

    Intended for small graphs; returns `indeterminate` when the node or time
    budget runs out.
    """
    if not g.edges:
        return SearchResult("found", ())
    if find_bridges(g):
        return SearchResult("absent")  # a bridge lies on no cycle
    cycles = enumerate_cycles(g)
    # demand 2 with repetition: list every cycle twice so the exact-cover
    # engine can use one cycle for both slots of its edges
    doubled = [c for c in cycles for _ in range(2)]
    deadline = time.monotonic() + time_budget if time_budget else None
    return _exact_multicover(sorted(g.edges), doubled, 2, branch=branch,
                             deadline=deadline, max_nodes=max_nodes)


def brute_force_rainbow_decomposition(g: EdgeColoredGraph,
                                      time_budget: float | None = None,
                                      branch: str = "constrained",
                                      max_nodes: int | None = 2_000_000) -> SearchResult:
    """Exhaustive search for a partition of E into rainbow cycles.

    On an almost-good input, exactly one member is allowed to be the
    almost-rainbow cycle through the bad vertex.
    """
    if not g.edges:
        return SearchResult("found", ())
    report = check_goodness(g)
    bad = report.bad_vertex
    candidates: list[Cycle] = []
    almost_idx: set[int] = set()
    for c in enumerate_cycles(g.graph):
        cols = [g.coloring[e] for e in c.edges]
        if len(set(cols)) == len(cols):
            candidates.append(c)
        elif bad is not None and bad in c and is_almost_rainbow_at(g, c, bad):
            almost_idx.add(len(candidates))
            candidates.append(c)
    deadline = time.monotonic() + time_budget if time_budget else None
    return _exact_multicover(sorted(g.edges), candidates, 1,
                             almost_ok=almost_idx or None, branch=branch,
                             deadline=deadline, max_nodes=max_nodes)


def random_cubic_bridgeless(cfg: GeneratorConfig) -> Graph:
    """Sample a random cubic bridgeless graph by the pairing model.

    Three stubs per vertex are matched by a Fisher-Yates shuffle of the stub
    list (consecutive pairs form edges); samples with self-loops, parallel
    edges, disconnection, or bridges are rejected. Deterministic for a given
    seed: the only randomness is `Random.randrange` on the stated shuffle.
    """
    rng = random.Random(cfg.seed)
    n = cfg.vertex_count
    for _ in range(cfg.max_rejections):
        stubs = [v for v in range(n) for _ in range(3)]
        for i in range(len(stubs) - 1, 0, -1):
            j = rng.randrange(i + 1)
            stubs[i], stubs[j] = stubs[j], stubs[i]
        pairs = [(stubs[k], stubs[k + 1]) for k in range(0, len(stubs), 2)]
        if any(u == v for u, v in pairs):
            continue
        edges = {edge(u, v) for u, v in pairs}
        if len(edges) != len(pairs):
            continue
        g = Graph(n, frozenset(edges))
        if not is_connected(g):
            continue
        if find_bridges(g):
            continue
        return g
    raise GraphError(
        f"pairing sampler exhausted {cfg.max_rejections} rejections at n={n}")
