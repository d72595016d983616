"""Inductive rainbow cycle decomposition of good / almost-good colored graphs.

The engine peels one batch of cycles at a time from each connected component,
dispatching on local structure:

  * a component that is a single cycle is emitted directly;
  * a rainbow triangle is always safe to remove;
  * an almost-good component reduces through its bad vertex (Case1_1 when
    the bad vertex's neighbors are adjacent, Case1_2 otherwise);
  * an all-Type-II component yields a greedy color-avoiding cycle;
  * a singular path of length >= 3 contracts one Type I edge (Case2_1);
  * otherwise a Type I vertex flanked by Type II vertices drives the
    Case2_2 family, splitting on how the flanking neighborhoods overlap.

Reductions transform the component into a strictly smaller good colored
graph, decompose it recursively, and lift the child's cycles back through
the recorded transform. Every transform is inverted and compared against its
parent before use, every removal is re-verified (rainbow typing plus the
full goodness check of the remainder), and any failed verification falls
back to an exhaustive search; if that also fails, the run ends in a
serializable, replayable CaseFailure instead of an unverified answer.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .coloring import (
    EdgeColoredGraph,
    GoodnessReport,
    GoodnessVerdict,
    check_goodness,
    color_classes,
    connected_nonisolated_components,
    find_rainbow_triangle,
    find_type_x_vertices,
    is_almost_rainbow_at,
    longest_singular_path,
    parse_colored_edge_list,
    serialize_colored_edge_list,
    split_components,
    x_block_decomposition,
)
from .graphs import Cycle, Edge, edge
from .linegraph import ColoredLineGraph, project_cycle
from .oracle import enumerate_cycles

BASE_CYCLE = "BaseCycle"
RAINBOW_TRIANGLE = "RainbowTriangle"
ALL_TYPE_II = "AllTypeII"
CASE_1_1 = "Case1_1"
CASE_1_2 = "Case1_2"
CASE_2_1 = "Case2_1"
CASE_2_2_1A = "Case2_2_1a"
CASE_2_2_1B = "Case2_2_1b"
CASE_2_2_2A = "Case2_2_2a"
CASE_2_2_2B = "Case2_2_2b"
CASE_2_2_2C = "Case2_2_2c"
CASE_2_2_2D = "Case2_2_2d"
FALLBACK = "Fallback"

CASE_TAGS = frozenset({
    BASE_CYCLE, RAINBOW_TRIANGLE, ALL_TYPE_II, CASE_1_1, CASE_1_2, CASE_2_1,
    CASE_2_2_1A, CASE_2_2_1B, CASE_2_2_2A, CASE_2_2_2B, CASE_2_2_2C,
    CASE_2_2_2D, FALLBACK,
})


class DecomposeError(ValueError):
    """Precondition violation on a decomposition entry point."""


class CaseVerificationError(DecomposeError):
    """A case's pattern or postcondition failed its runtime verification."""

    def __init__(self, case: str, message: str, cycle: Cycle | None = None):
        self.case = case
        self.cycle = cycle
        super().__init__(f"{case}: {message}")


class _EngineFailure(Exception):
    """Internal: no case and no fallback made progress; carries diagnostics."""

    def __init__(self, case: str, graph: EdgeColoredGraph, message: str,
                 cycle: Cycle | None, report: GoodnessReport | None):
        self.case = case
        self.graph = graph
        self.message = message
        self.cycle = cycle
        self.report = report
        super().__init__(message)


# ---------------------------------------------------------------------------
# transforms


@dataclass(frozen=True)
class Transform:
    """One invertible graph reduction step.

    `to_child` maps surviving parent vertices to child ids (merged vertices
    share a child id; deleted ones are absent). `edge_map` pairs every
    non-added child edge with its parent edge; `removed` lists parent edges
    with no child counterpart; `recolored` gives the parent color of child
    edges whose color changed. Applying `invert` to the child reproduces the
    parent colored graph exactly.
    """

    kind: str
    parent_n: int
    child_n: int
    to_child: tuple[tuple[int, int], ...]
    edge_map: tuple[tuple[Edge, Edge], ...]
    added: tuple[tuple[Edge, int], ...]
    removed: tuple[tuple[Edge, int], ...]
    recolored: tuple[tuple[Edge, int], ...]

    def child_of(self) -> dict[int, int]:
        return dict(self.to_child)

    def to_parent(self) -> dict[int, int]:
        """Child id -> parent id, for child vertices with a unique preimage."""
        counts: dict[int, int] = {}
        for _, c in self.to_child:
            counts[c] = counts.get(c, 0) + 1
        return {c: p for p, c in self.to_child if counts[c] == 1}

    def invert(self, child: EdgeColoredGraph) -> EdgeColoredGraph:
        emap = dict(self.edge_map)
        added = {e for e, _ in self.added}
        recol = dict(self.recolored)
        triples = []
        for e in child.edges:
            if e in added:
                continue
            pu, pv = emap[e]
            triples.append((pu, pv, recol.get(e, child.coloring[e])))
        triples.extend((u, v, c) for (u, v), c in self.removed)
        return EdgeColoredGraph.from_triples(self.parent_n, triples)


def _build_transform(parent: EdgeColoredGraph, kind: str, *,
                     drop: Iterable[Edge] = (),
                     merge: Iterable[Sequence[int]] = (),
                     delete: Iterable[int] = (),
                     add: Iterable[tuple[int, int, int]] = (),
                     recolor: Iterable[tuple[Edge, int]] = (),
                     ) -> tuple[EdgeColoredGraph, Transform]:
    """Build the child graph for a reduction and its invertible record.

    `drop`/`add`/`recolor` are in parent coordinates; `add` endpoints may
    name any member of a merge group. The child must stay simple; a clash is
    reported as a verification error, never merged silently.
    """
    dropset = {edge(*e) for e in drop}
    absent = dropset - parent.edges
    if absent:
        raise CaseVerificationError(kind, f"dropping absent edges {sorted(absent)}")
    gone: set[int] = set(delete)
    rep_of: dict[int, int] = {}
    for grp in merge:
        rep = min(grp)
        for v in grp:
            rep_of[v] = rep
            if v != rep:
                gone.add(v)
    survivors = sorted(v for v in range(parent.n) if v not in gone)
    slot = {v: i for i, v in enumerate(survivors)}
    to_child: dict[int, int] = {}
    for v in range(parent.n):
        if v in delete:
            continue
        to_child[v] = slot[rep_of.get(v, v)]

    recolor_map = {edge(*e): c for e, c in recolor}
    child_cols: dict[Edge, int] = {}
    edge_map: dict[Edge, Edge] = {}
    for e in sorted(parent.edges):
        if e in dropset:
            continue
        u, v = e
        if u not in to_child or v not in to_child:
            raise CaseVerificationError(
                kind, f"surviving edge {e} touches a deleted vertex")
        cu, cv = to_child[u], to_child[v]
        if cu == cv:
            raise CaseVerificationError(kind, f"edge {e} collapses into a loop")
        ce = edge(cu, cv)
        if ce in child_cols:
            raise CaseVerificationError(kind, f"edge {e} would become parallel")
        child_cols[ce] = recolor_map.get(e, parent.coloring[e])
        edge_map[ce] = e
    added: list[tuple[Edge, int]] = []
    for u, v, c in add:
        ce = edge(to_child[u], to_child[v])
        if ce in child_cols:
            raise CaseVerificationError(kind, f"added edge {(u, v)} would be parallel")
        child_cols[ce] = c
        added.append((ce, c))

    child = EdgeColoredGraph.from_triples(len(survivors),
                                          [(u, v, c) for (u, v), c in child_cols.items()])
    recolored = tuple(sorted(
        (ce, parent.coloring[pe]) for ce, pe in edge_map.items()
        if child_cols[ce] != parent.coloring[pe]))
    tf = Transform(kind, parent.n, child.n,
                   tuple(sorted(to_child.items())),
                   tuple(sorted(edge_map.items())),
                   tuple(sorted(added)),
                   tuple(sorted((e, parent.coloring[e]) for e in dropset)),
                   recolored)
    back = tf.invert(child)
    if back.graph != parent.graph or dict(back.coloring) != dict(parent.coloring):
        raise CaseVerificationError(kind, "transform failed its inversion round-trip")
    return child, tf


# ---------------------------------------------------------------------------
# trace types


@dataclass(frozen=True)
class TraceStep:
    case: str
    cycle: Cycle
    goodness: GoodnessReport

    def to_json(self) -> dict:
        return {"case": self.case, "cycle": list(self.cycle.vertices),
                "goodness": self.goodness.to_json()}


@dataclass(frozen=True)
class CaseFailure:
    """Replayable evidence that some case (and the fallback) failed."""

    case: str
    graph_text: str
    message: str
    cycle: Cycle | None = None
    goodness: GoodnessReport | None = None

    def to_json(self) -> dict:
        return {"status": "case_failure", "case": self.case,
                "graph": self.graph_text, "message": self.message,
                "cycle": list(self.cycle.vertices) if self.cycle else None,
                "goodness": self.goodness.to_json() if self.goodness else None}


@dataclass(frozen=True)
class DecompositionTrace:
    steps: tuple[TraceStep, ...]
    cycles: tuple[Cycle, ...] | None   # set on success, almost-rainbow first
    failure: CaseFailure | None = None

    @property
    def success(self) -> bool:
        return self.failure is None

    def to_json(self) -> dict:
        out: dict = {"steps": [s.to_json() for s in self.steps]}
        if self.success:
            out["outcome"] = {"status": "success",
                              "cycles": [list(c.vertices) for c in self.cycles]}
        else:
            out["outcome"] = self.failure.to_json()
        return out


@dataclass(frozen=True)
class CasePattern:
    """Bound local labels for the Case2_2 family.

    v is Type I with neighbors x1, x2 (both Type II); alpha/beta are the
    colors at v, doubled at x1/x2 toward y1/y2; gamma/delta are the second
    colors at x1/x2, toward {w1, z1} and {w2, z2}.
    """

    v: int
    x1: int
    x2: int
    alpha: int
    beta: int
    y1: int
    y2: int
    w1: int
    w2: int
    z1: int
    z2: int
    gamma: int
    delta: int


@dataclass(frozen=True)
class CaseReduction:
    """A case's transform to a smaller graph plus its lift rule.

    `lift` maps a full tagged decomposition of the child back to tagged
    cycles of the parent (possibly consuming only part of the child's
    decomposition, in which case the engine keeps peeling the remainder).
    Cases that drive their own inner recursion (the Type X branch, which
    decomposes an x-block rather than the transform's child) supply `run`
    instead, and the engine calls it directly.
    """

    case: str
    child: EdgeColoredGraph
    transform: Transform
    lift: Callable[[list[tuple[str, Cycle]]], list[tuple[str, Cycle]]] | None
    run: Callable[[], list[tuple[str, Cycle]]] | None = None


@dataclass
class _Ctx:
    fallback_max_len: int | None = None


# ---------------------------------------------------------------------------
# small helpers


def _require(cond: bool, case: str, message: str) -> None:
    if not cond:
        raise CaseVerificationError(case, message)


def _map_cycle(c: Cycle, to_parent: dict[int, int]) -> Cycle:
    return Cycle(tuple(to_parent[v] for v in c.vertices))


def _rotate_to(seq: Sequence[int], v: int) -> list[int]:
    i = list(seq).index(v)
    return list(seq[i:]) + list(seq[:i])


def _lift_through(c: Cycle, m: int, to_parent: dict[int, int],
                  expansion: Callable[[int, int], list[int]]) -> Cycle:
    """Lift a child cycle through special vertex m.

    Rotates the cycle to [m, a, ..., b], maps everything else via to_parent,
    and replaces m by expansion(a', b'), a parent path whose last vertex is
    adjacent to a' and whose first is adjacent to b'.
    """
    rot = _rotate_to(c.vertices, m)
    rest = [to_parent[u] for u in rot[1:]]
    exp = expansion(rest[0], rest[-1])
    return Cycle(tuple(exp + rest))


def _single_cycle(g: EdgeColoredGraph) -> Cycle | None:
    """The component's unique cycle, when its edges form exactly one."""
    vs = g.nonisolated
    if not vs or any(g.graph.degree(v) != 2 for v in vs):
        return None
    if len(g.edges) != len(vs):
        return None
    start = vs[0]
    seq = [start]
    prev, cur = None, start
    while True:
        a, b = g.graph.adj[cur]
        nxt = b if a == prev else a
        if nxt == start:
            break
        seq.append(nxt)
        prev, cur = cur, nxt
    if len(seq) != len(vs):
        return None  # more than one cycle; caller splits components first
    return Cycle(tuple(seq))


def _all_type2(g: EdgeColoredGraph) -> bool:
    for v in g.nonisolated:
        cols = g.colors_at(v)
        if not (len(cols) == 4 and len(set(cols)) == 2
                and all(cols.count(c) == 2 for c in set(cols))):
            return False
    return bool(g.nonisolated)


def _check_removal(h: EdgeColoredGraph, rep: GoodnessReport, cyc: Cycle,
                   ) -> tuple[str | None, EdgeColoredGraph | None, GoodnessReport | None]:
    """Validate one peel: cycle present, rainbow typing, goodness preserved."""
    if not cyc.is_cycle_of(h.graph):
        return f"cycle {cyc.vertices} is not a cycle of the current graph", None, None
    cols = [h.coloring[e] for e in cyc.edges]
    rainbow = len(set(cols)) == len(cols)
    almost = False
    if not rainbow:
        if (rep.bad_vertex is None or rep.bad_vertex not in cyc
                or not is_almost_rainbow_at(h, cyc, rep.bad_vertex)):
            return (f"cycle {cyc.vertices} is neither rainbow nor "
                    f"almost-rainbow at the bad vertex"), None, None
        almost = True
    h2 = h.remove_cycle(cyc)
    rep2 = check_goodness(h2)
    expected = (GoodnessVerdict.GOOD
                if rep.verdict is GoodnessVerdict.GOOD or almost
                else GoodnessVerdict.ALMOST_GOOD)
    if rep2.verdict is not expected:
        return (f"removing {cyc.vertices} leaves a {rep2.verdict.value} graph, "
                f"expected {expected.value}"), None, rep2
    return None, h2, rep2


# ---------------------------------------------------------------------------
# greedy cycle in an all-Type-II graph


def find_cycle_all_type2(g: EdgeColoredGraph) -> Cycle:
    """Rainbow cycle from the greedy color-avoiding walk.

    Starts at the minimum nonisolated vertex and always extends along the
    minimum-id neighbor whose edge color is unused; when stuck, the repeated
    color's class is a triangle and closes the cycle. Verifies that removal
    preserves goodness.
    """
    rep = check_goodness(g)
    if rep.verdict is not GoodnessVerdict.GOOD:
        raise DecomposeError("greedy walk requires a good colored graph")
    if len(connected_nonisolated_components(g)) != 1:
        raise DecomposeError("greedy walk requires a connected graph")
    if not _all_type2(g):
        raise DecomposeError("greedy walk requires every nonisolated vertex Type II")

    start = g.nonisolated[0]
    path = [start]
    used: set[int] = set()
    cycle: Cycle | None = None
    while cycle is None:
        cur = path[-1]
        step = None
        for w in sorted(g.graph.adj[cur]):
            col = g.color(cur, w)
            if col in used:
                continue
            if w == start:
                if len(path) >= 3:
                    cycle = Cycle(tuple(path))
                    break
                continue
            step = (w, col)
            break
        if cycle is not None:
            break
        if step is None:
            # stuck: the unused color at cur closes a monochromatic triangle
            arrive = g.color(path[-2], cur)
            alpha = next(c for c in g.colors_at(cur) if c != arrive)
            ends = sorted(w for w in g.graph.adj[cur] if g.color(cur, w) == alpha)
            _require(len(ends) == 2, ALL_TYPE_II,
                     f"expected two edges of color {alpha} at {cur}")
            j = None
            for i in range(len(path) - 1):
                if {path[i], path[i + 1]} == set(ends):
                    j = i
                    break
            _require(j is not None, ALL_TYPE_II,
                     f"repeated color {alpha} not found along the walk")
            _require(len(path) - (j + 1) >= 2, ALL_TYPE_II,
                     "degenerate closure; walk too short")
            cycle = Cycle(tuple(path[j + 1:]))
            break
        path.append(step[0])
        used.add(step[1])

    problem, _, _ = _check_removal(g, rep, cycle)
    if problem:
        raise CaseVerificationError(ALL_TYPE_II, problem, cycle)
    return cycle


# ---------------------------------------------------------------------------
# Case 1: almost-good


def case1_1(g: EdgeColoredGraph, v: int) -> CaseReduction:
    """Bad vertex with adjacent neighbors: contract the monochromatic triangle.

    The two child cycles through the merged vertex lift by inserting the
    path x1-v-x2 (giving the one almost-rainbow cycle) and the edge x1-x2.
    """
    tag = CASE_1_1
    _require(g.graph.degree(v) == 2, tag, f"bad vertex {v} must have degree 2")
    x1, x2 = sorted(g.graph.adj[v])
    alpha = g.color(v, x1)
    _require(g.color(v, x2) == alpha, tag, "bad vertex colors disagree")
    _require(g.graph.has_edge(x1, x2), tag, "neighbors not adjacent")
    _require(g.color(x1, x2) == alpha, tag,
             "triangle at the bad vertex is not monochromatic")
    side1 = [w for w in g.graph.adj[x1] if w not in (v, x2)]
    side2 = [w for w in g.graph.adj[x2] if w not in (v, x1)]
    _require(len(side1) == 2 and len(side2) == 2, tag,
             "bad vertex neighbors are not Type II")
    beta = {g.color(x1, w) for w in side1}
    gamma = {g.color(x2, w) for w in side2}
    _require(len(beta) == 1 and len(gamma) == 1 and beta != gamma, tag,
             "flanking color pairs are malformed")
    _require(not (set(side1) & set(side2)), tag,
             "flanking neighborhoods overlap (rainbow triangle missed)")

    child, tf = _build_transform(
        g, "ContractTriangle",
        drop=[edge(v, x1), edge(v, x2), edge(x1, x2)],
        merge=[(v, x1, x2)])
    x_child = tf.child_of()[x1]
    crep = check_goodness(child)
    _require(crep.verdict is GoodnessVerdict.GOOD, tag,
             f"contracted graph is {crep.verdict.value}")
    to_parent = tf.to_parent()
    beta_side = set(side1)

    def lift(sub: list[tuple[str, Cycle]]) -> list[tuple[str, Cycle]]:
        through = [c for _, c in sub if x_child in c]
        _require(len(through) == 2, tag,
                 f"expected 2 child cycles through the merged vertex, got {len(through)}")

        def expand_path(a: int, b: int) -> list[int]:
            return [x2, v, x1] if a in beta_side else [x1, v, x2]

        def expand_edge(a: int, b: int) -> list[int]:
            return [x2, x1] if a in beta_side else [x1, x2]

        first = _lift_through(through[0], x_child, to_parent, expand_path)
        second = _lift_through(through[1], x_child, to_parent, expand_edge)
        out = [(tag, first), (tag, second)]
        out.extend((t, _map_cycle(c, to_parent)) for t, c in sub
                   if x_child not in c)
        return out

    return CaseReduction(tag, child, tf, lift)


def case1_2(g: EdgeColoredGraph, v: int) -> CaseReduction:
    """Bad vertex with non-adjacent Type I neighbors: contract one bad edge.

    The child cycle through the merged vertex subdivides back into the
    almost-rainbow cycle through v; everything else lifts unchanged.
    """
    tag = CASE_1_2
    _require(g.graph.degree(v) == 2, tag, f"bad vertex {v} must have degree 2")
    x1, x2 = sorted(g.graph.adj[v])
    alpha = g.color(v, x1)
    _require(g.color(v, x2) == alpha, tag, "bad vertex colors disagree")
    _require(not g.graph.has_edge(x1, x2), tag, "neighbors adjacent; wrong case")
    for x in (x1, x2):
        _require(g.graph.degree(x) == 2, tag,
                 f"neighbor {x} of the bad vertex is not Type I")
    y1 = next(w for w in g.graph.adj[x1] if w != v)
    y2 = next(w for w in g.graph.adj[x2] if w != v)
    _require(y1 != x2 and y2 != x1, tag, "degenerate flank")

    child, tf = _build_transform(
        g, "ContractEdge",
        drop=[edge(v, x1)],
        merge=[(v, x1)])
    m_child = tf.child_of()[v]
    crep = check_goodness(child)
    _require(crep.verdict is GoodnessVerdict.GOOD, tag,
             f"contracted graph is {crep.verdict.value}")
    to_parent = tf.to_parent()

    def lift(sub: list[tuple[str, Cycle]]) -> list[tuple[str, Cycle]]:
        through = [c for _, c in sub if m_child in c]
        _require(len(through) == 1, tag,
                 f"expected 1 child cycle through the merged vertex, got {len(through)}")

        def expand(a: int, b: int) -> list[int]:
            # merged vertex splits back into x1-v; x1 attaches toward y1
            return [v, x1] if a == y1 else [x1, v]

        first = _lift_through(through[0], m_child, to_parent, expand)
        out = [(tag, first)]
        out.extend((t, _map_cycle(c, to_parent)) for t, c in sub
                   if m_child not in c)
        return out

    return CaseReduction(tag, child, tf, lift)


# ---------------------------------------------------------------------------
# Case 2.1: a singular path of length >= 3


def case2_1(g: EdgeColoredGraph, path: Sequence[int]) -> CaseReduction:
    """Contract the middle edge of a singular path v0 v1 v2 v3.

    The interior color appears nowhere else, so the child cycle through the
    merged vertex subdivides back; all other cycles lift unchanged.
    """
    tag = CASE_2_1
    _require(len(path) >= 4, tag, "singular path too short")
    v0, v1, v2, v3 = path[0], path[1], path[2], path[3]
    _require(len({v0, v1, v2, v3}) == 4, tag, "singular path vertices repeat")
    for t in (v1, v2):
        _require(g.graph.degree(t) == 2 and g.color_degree(t) == 2, tag,
                 f"interior vertex {t} is not Type I")
    alpha = g.color(v1, v2)
    cls = color_classes(g)[alpha]
    _require(cls.edges == frozenset({edge(v1, v2)}), tag,
             "interior color appears elsewhere")

    child, tf = _build_transform(
        g, "ContractEdge",
        drop=[edge(v1, v2)],
        merge=[(v1, v2)])
    m_child = tf.child_of()[v1]
    crep = check_goodness(child)
    _require(crep.verdict is GoodnessVerdict.GOOD, tag,
             f"contracted graph is {crep.verdict.value}")
    to_parent = tf.to_parent()

    def lift(sub: list[tuple[str, Cycle]]) -> list[tuple[str, Cycle]]:
        through = [c for _, c in sub if m_child in c]
        _require(len(through) == 1, tag,
                 f"expected 1 child cycle through the merged vertex, got {len(through)}")

        def expand(a: int, b: int) -> list[int]:
            return [v2, v1] if a == v0 else [v1, v2]

        first = _lift_through(through[0], m_child, to_parent, expand)
        out = [(tag, first)]
        out.extend((t, _map_cycle(c, to_parent)) for t, c in sub
                   if m_child not in c)
        return out

    return CaseReduction(tag, child, tf, lift)


# ---------------------------------------------------------------------------
# Case 2.2: Type I vertex flanked by Type II vertices


def extract_case2_2_pattern(g: EdgeColoredGraph) -> CasePattern:
    """Bind the local labels around the minimum Type I vertex."""
    tag = "Case2_2"
    type1 = [v for v in g.nonisolated
             if g.graph.degree(v) == 2 and g.color_degree(v) == 2]
    _require(bool(type1), tag, "no Type I vertex")
    v = min(type1)
    x1, x2 = sorted(g.graph.adj[v])
    alpha, beta = g.color(v, x1), g.color(v, x2)
    sides = []
    for x, a in ((x1, alpha), (x2, beta)):
        _require(g.graph.degree(x) == 4, tag, f"flank {x} is not Type II")
        others = [w for w in g.graph.adj[x] if w != v]
        ys = [w for w in others if g.color(x, w) == a]
        _require(len(ys) == 1, tag, f"flank {x} lacks a second edge of the v color")
        rest = [w for w in others if g.color(x, w) != a]
        cols = {g.color(x, w) for w in rest}
        _require(len(rest) == 2 and len(cols) == 1, tag,
                 f"flank {x} second color pair malformed")
        sides.append((ys[0], sorted(rest), cols.pop()))
    (y1, (w1, z1), gamma), (y2, (w2, z2), delta) = sides
    _require(y1 not in (v, x2) and y2 not in (v, x1), tag, "degenerate pattern")
    _require(x2 not in (y1, w1, z1) and x1 not in (y2, w2, z2), tag,
             "flanks adjacent; rainbow triangle missed")
    _require(gamma != delta and alpha != beta, tag, "color degeneracy")
    return CasePattern(v, x1, x2, alpha, beta, y1, y2, w1, w2, z1, z2,
                       gamma, delta)


def _swap_sides(p: CasePattern) -> CasePattern:
    return CasePattern(p.v, p.x2, p.x1, p.beta, p.alpha, p.y2, p.y1,
                       p.w2, p.w1, p.z2, p.z1, p.delta, p.gamma)


def _with(p: CasePattern, **kw) -> CasePattern:
    d = p.__dict__ | kw
    return CasePattern(**d)


def normalize_case2_2(p: CasePattern) -> tuple[str, CasePattern]:
    """Resolve the overlap shape, renaming labels so each subcase sees its
    canonical form: (a) w1 == w2, (b) y1 == y2, (c) y1 == w2 with the rest
    disjoint, (d) y1 == w2 and y2 == w1, else the disjoint case."""
    s1, s2 = {p.w1, p.z1}, {p.w2, p.z2}
    shared = sorted(s1 & s2)
    if shared:
        s = shared[0]
        if p.w1 != s:
            p = _with(p, w1=p.z1, z1=p.w1)
        if p.w2 != s:
            p = _with(p, w2=p.z2, z2=p.w2)
        return "a", p
    if p.y1 == p.y2:
        return "b", p
    y1_in = p.y1 in s2
    y2_in = p.y2 in s1
    if y1_in and y2_in:
        if p.w2 != p.y1:
            p = _with(p, w2=p.z2, z2=p.w2)
        if p.w1 != p.y2:
            p = _with(p, w1=p.z1, z1=p.w1)
        return "d", p
    if y2_in and not y1_in:
        p = _swap_sides(p)
        y1_in = True
    if y1_in:
        if p.w2 != p.y1:
            p = _with(p, w2=p.z2, z2=p.w2)
        return "c", p
    return "disjoint", p


def case2_2_1(g: EdgeColoredGraph, p: CasePattern,
              decompose_child: Callable[[EdgeColoredGraph], list[tuple[str, Cycle]]],
              ) -> CaseReduction:
    """Disjoint flanking neighborhoods: reroute v and merge the flanks.

    Child construction: drop the four alpha/beta edges, connect v directly
    to y1 and y2, and merge x1 with x2. If the child is good, child cycles
    avoiding both v and the merged vertex lift unchanged and the leftover
    one-or-two meeting cycles recombine explicitly; if the child's only
    defect is a Type X cut vertex, the end x-block decomposes as an
    almost-good graph and one of its cycles through the merged vertex
    detours through v (subcase b).
    """
    tag = CASE_2_2_1A
    child, tf = _build_transform(
        g, "MergeVertices",
        drop=[edge(p.y1, p.x1), edge(p.x1, p.v), edge(p.v, p.x2), edge(p.x2, p.y2)],
        add=[(p.y1, p.v, p.alpha), (p.v, p.y2, p.beta)],
        merge=[(p.x1, p.x2)])
    cmap = tf.child_of()
    x_c, v_c = cmap[p.x1], cmap[p.v]
    y1_c, y2_c = cmap[p.y1], cmap[p.y2]
    to_parent = tf.to_parent()
    crep = check_goodness(child)

    if crep.verdict is GoodnessVerdict.GOOD:
        lift = _case2_2_1a_lift(g, p, child, to_parent, x_c, v_c, y1_c, y2_c)
        return CaseReduction(CASE_2_2_1A, child, tf, lift)

    only_type_x = (crep.verdict is GoodnessVerdict.NOT_GOOD
                   and all(viol.condition == 6 for viol in crep.violations))
    _require(only_type_x, tag,
             f"merged graph broken beyond Type X: {crep.to_json()['violations']}")
    run = _case2_2_1b_run(g, p, child, tf, to_parent, x_c, v_c,
                          decompose_child)
    return CaseReduction(CASE_2_2_1B, child, tf, None, run)


def _case2_2_1a_lift(g, p, child, to_parent, x_c, v_c, y1_c, y2_c):
    tag = CASE_2_2_1A

    def lift(sub: list[tuple[str, Cycle]]) -> list[tuple[str, Cycle]]:
        out: list[tuple[str, Cycle]] = []
        meeters: list[Cycle] = []
        for t, c in sub:
            if x_c in c or v_c in c:
                meeters.append(c)
            else:
                out.append((t, _map_cycle(c, to_parent)))

        with_v = [c for c in meeters if v_c in c]
        _require(len(with_v) == 1, tag,
                 f"expected exactly one child cycle through v, got {len(with_v)}")
        d1 = with_v[0]

        if len(meeters) == 3:
            # v's cycle avoids the merged vertex: lift one x-cycle through v
            _require(x_c not in d1, tag, "three meeting cycles but v-cycle uses x")
            xcycles = [c for c in meeters if c is not d1]
            _require(all(x_c in c for c in xcycles), tag, "meeting cycle misses x")
            h = g
            for _, c in out:
                h = h.remove_cycle(c)
            rep_h = check_goodness(h)
            last = None
            for cand in xcycles:
                cyc = _lift_x_cycle_via_v(g, p, cand, x_c, to_parent)
                problem, _, _ = _check_removal(h, rep_h, cyc)
                if problem is None:
                    out.append((tag, cyc))
                    return out
                last = problem
            raise CaseVerificationError(tag, f"both x-cycle detours failed: {last}")

        _require(len(meeters) == 2, tag,
                 f"unexpected meeting-cycle count {len(meeters)}")
        _require(x_c in d1, tag, "two meeting cycles but v-cycle avoids x")
        d2 = next(c for c in meeters if c is not d1)
        _require(x_c in d2 and v_c not in d2, tag, "second meeting cycle malformed")
        out.extend((tag, c) for c in _recombine_two_meeters(
            g, p, d1, d2, x_c, v_c, y1_c, y2_c, to_parent, child))
        return out

    return lift


def _lift_x_cycle_via_v(g, p, cand: Cycle, x_c: int, to_parent) -> Cycle:
    """Lift a child cycle through the merged vertex by detouring x2-v-x1."""
    def expand(a: int, b: int) -> list[int]:
        # path ends adjacent to a (gamma side joins x1, delta side x2)
        if a in (p.w1, p.z1):
            return [p.x2, p.v, p.x1]
        return [p.x1, p.v, p.x2]
    return _lift_through(cand, x_c, to_parent, expand)


def _recombine_two_meeters(g, p, d1: Cycle, d2: Cycle, x_c: int, v_c: int,
                           y1_c: int, y2_c: int, to_parent, child) -> list[Cycle]:
    """Split the two cycles that sweep the whole pattern into explicit
    rainbow cycles of the parent covering the same edges."""
    tag = CASE_2_2_1A
    seq = _rotate_to(d1.vertices, v_c)
    _require({seq[1], seq[-1]} == {y1_c, y2_c}, tag, "v-cycle misses y1/y2")
    if seq[1] != y2_c:
        seq = [seq[0]] + list(reversed(seq[1:]))
    xi = seq.index(x_c)
    _require(2 <= xi <= len(seq) - 3, tag, "merged vertex adjacent to a y")
    s, t = seq[xi - 1], seq[xi + 1]
    q2 = [to_parent[u] for u in seq[1:xi]]          # y2 ... s
    q1 = [to_parent[u] for u in seq[xi + 1:]]       # t ... y1
    col_s = child.coloring[edge(x_c, s)]
    col_t = child.coloring[edge(x_c, t)]
    _require({col_s, col_t} == {p.gamma, p.delta}, tag, "x-cycle colors broken")

    rot2 = _rotate_to(d2.vertices, x_c)
    a, b = rot2[1], rot2[-1]
    p3 = [to_parent[u] for u in rot2[1:]]           # a ... b

    if col_t == p.gamma:
        w1p, w2p = to_parent[t], to_parent[s]
        z1p = p.z1 if w1p == p.w1 else p.w1
        z2p = p.z2 if w2p == p.w2 else p.w2
        _require({to_parent[a], to_parent[b]} == {z1p, z2p}, tag,
                 "second cycle does not use the leftover flank edges")
        cyc1 = Cycle(tuple([p.x1] + q1))
        cyc2 = Cycle(tuple([p.x2] + list(reversed(q2))))
        p3_seq = p3 if to_parent[a] == z2p else list(reversed(p3))
        cyc3 = Cycle(tuple([p.x1, p.v, p.x2] + p3_seq))
        return [cyc1, cyc2, cyc3]

    # t on the delta side: one large cycle plus the v detour
    w2p, w1p = to_parent[t], to_parent[s]
    z1p = p.z1 if w1p == p.w1 else p.w1
    z2p = p.z2 if w2p == p.w2 else p.w2
    _require({to_parent[a], to_parent[b]} == {z1p, z2p}, tag,
             "second cycle does not use the leftover flank edges")
    big = Cycle(tuple([p.x1] + list(reversed(q2)) + [p.x2] + q1))
    p3_seq = p3 if to_parent[a] == z2p else list(reversed(p3))
    small = Cycle(tuple([p.x1, p.v, p.x2] + p3_seq))
    return [big, small]


def _case2_2_1b_run(g, p, child, tf, to_parent, x_c, v_c, decompose_child):
    tag = CASE_2_2_1B

    def run() -> list[tuple[str, Cycle]]:
        txv = find_type_x_vertices(child)
        _require(x_c not in txv, tag, "merged vertex became Type X")
        xb = x_block_decomposition(child)
        _require(xb.is_path(), tag, "x-block forest is not a path")
        order = xb.path_order()
        bx = xb.block_of(x_c)
        _require(order[0] == bx or order[-1] == bx, tag,
                 "merged vertex not in an end x-block")
        if order[0] != bx:
            order = list(reversed(order))
        bv = xb.block_of(v_c)
        _require(order[-1] == bv and bv != bx, tag,
                 "v not in the opposite end x-block")
        cmap = tf.child_of()
        for u in (p.w1, p.z1, p.w2, p.z2):
            _require(cmap[u] in xb.x_blocks[bx], tag, f"flank {u} outside end block")
        for u in (p.y1, p.y2):
            _require(cmap[u] in xb.x_blocks[bv], tag, f"{u} outside the v block")
        t_c = next(c for i, j, c in xb.forest
                   if {i, j} == {order[0], order[1]})

        g1set = xb.x_blocks[bx]
        keep = [e for e in child.edges if e[0] in g1set and e[1] in g1set]
        sub_ecg, sub_tf = _build_transform(
            child, "Subgraph",
            drop=[e for e in child.edges if e not in set(keep)],
            delete=[u for u in range(child.n) if u not in g1set])
        sub_map = sub_tf.child_of()
        sub_back = sub_tf.to_parent()
        g1rep = check_goodness(sub_ecg)
        _require(g1rep.verdict is GoodnessVerdict.ALMOST_GOOD
                 and g1rep.bad_vertex == sub_map[t_c], tag,
                 "end x-block is not almost-good at the joining vertex")

        sub = decompose_child(sub_ecg)
        x_s, t_s = sub_map[x_c], sub_map[t_c]
        xcycles = [c for _, c in sub if x_s in c]
        _require(len(xcycles) == 2, tag,
                 f"expected 2 cycles through the merged vertex, got {len(xcycles)}")
        candidates = [c for c in xcycles if t_s not in c]
        _require(candidates, tag, "both x-cycles pass through the joining vertex")
        rep_g = check_goodness(g)
        last = None
        for cand in candidates:
            rot = _rotate_to(cand.vertices, x_s)
            path_c = [sub_back[u] for u in rot[1:]]
            a, b = path_c[0], path_c[-1]
            if child.coloring[edge(x_c, a)] != p.gamma:
                path_c = list(reversed(path_c))
                a, b = b, a
            if child.coloring[edge(x_c, a)] != p.gamma \
                    or child.coloring[edge(x_c, b)] != p.delta:
                last = "cycle through x does not pair gamma with delta"
                continue
            path_p = [to_parent[u] for u in path_c]
            cyc = Cycle(tuple([p.v, p.x1] + path_p + [p.x2]))
            problem, _, _ = _check_removal(g, rep_g, cyc)
            if problem is None:
                return [(tag, cyc)]
            last = problem
        raise CaseVerificationError(tag, f"detour cycle failed verification: {last}")

    return run


def case2_2_2(g: EdgeColoredGraph, shape: str, p: CasePattern,
              ) -> list[tuple[str, Cycle]] | CaseReduction:
    """Overlapping flanking neighborhoods; dispatch on the overlap shape."""
    if shape == "a":
        return _case2_2_2a(g, p)
    if shape == "b":
        return _case2_2_2b(g, p)
    if shape == "c":
        return _case2_2_2c(g, p)
    if shape == "d":
        return _case2_2_2d(g, p)
    raise CaseVerificationError(CASE_2_2_2A, f"unknown overlap shape {shape!r}")


def _case2_2_2a(g: EdgeColoredGraph, p: CasePattern):
    """Shared gamma/delta neighbor w: try the direct rectangle through w,
    else rewire both flanks away and recurse."""
    tag = CASE_2_2_2A
    w = p.w1
    _require(w == p.w2, tag, "shape a needs w1 == w2")
    direct = Cycle((p.x1, p.v, p.x2, w))
    rep = check_goodness(g)
    problem, _, _ = _check_removal(g, rep, direct)
    if problem is None:
        return [(tag, direct)]

    # the direct cycle creates a Type X vertex; the derived structure must
    # then have w and all of y1, y2, z1, z2 of Type I with disjoint sides
    for u in (w, p.y1, p.y2, p.z1, p.z2):
        _require(g.graph.degree(u) == 2 and g.color_degree(u) == 2, tag,
                 f"rewire precondition: vertex {u} is not Type I ({problem})")
    _require(not ({p.y1, p.z1} & {p.y2, p.z2}), tag,
             f"rewire precondition: sides overlap ({problem})")

    drop = [edge(p.x1, q) for q in g.graph.adj[p.x1]]
    drop += [edge(p.x2, q) for q in g.graph.adj[p.x2]]
    child, tf = _build_transform(
        g, "RewireDetour",
        drop=sorted(set(drop)),
        delete=[p.x1, p.x2],
        add=[(p.y1, w, p.alpha), (p.y2, w, p.beta),
             (p.z1, p.v, p.gamma), (p.z2, p.v, p.delta)])
    cmap = tf.child_of()
    to_parent = tf.to_parent()
    crep = check_goodness(child)
    _require(crep.verdict is GoodnessVerdict.GOOD, tag,
             f"rewired graph is {crep.verdict.value}")
    w_c, v_c, y1_c = cmap[w], cmap[p.v], cmap[p.y1]

    def lift(sub: list[tuple[str, Cycle]]) -> list[tuple[str, Cycle]]:
        cy = [c for _, c in sub if y1_c in c]
        _require(len(cy) == 1, tag, "expected one child cycle through y1")
        cy = cy[0]
        _require(w_c in cy, tag, "y1 cycle misses w")
        _require(v_c not in cy, tag, "y1 cycle passes through v; rewire lift invalid")
        cz = [c for _, c in sub if v_c in c]
        _require(len(cz) == 1, tag, "expected one child cycle through v")
        cz = cz[0]

        def expand_w(a: int, b: int) -> list[int]:
            return [p.x1, w, p.x2] if a == p.y2 else [p.x2, w, p.x1]

        def expand_v(a: int, b: int) -> list[int]:
            return [p.x1, p.v, p.x2] if a == p.z2 else [p.x2, p.v, p.x1]

        out = [(tag, _lift_through(cy, w_c, to_parent, expand_w)),
               (tag, _lift_through(cz, v_c, to_parent, expand_v))]
        out.extend((t, _map_cycle(c, to_parent)) for t, c in sub
                   if y1_c not in c and v_c not in c)
        return out

    return CaseReduction(tag, child, tf, lift)


def _case2_2_2b(g: EdgeColoredGraph, p: CasePattern) -> CaseReduction:
    """Shared alpha/beta neighbor y: contract the rectangle x1-y-x2-v."""
    tag = CASE_2_2_2B
    y = p.y1
    _require(y == p.y2, tag, "shape b needs y1 == y2")
    _require(g.graph.degree(y) == 2, tag, "shared y must be Type I")
    rect = [edge(p.v, p.x1), edge(p.x1, y), edge(y, p.x2), edge(p.x2, p.v)]
    child, tf = _build_transform(
        g, "ContractRectangle",
        drop=rect,
        merge=[(p.v, p.x1, y, p.x2)])
    x_c = tf.child_of()[p.v]
    to_parent = tf.to_parent()
    crep = check_goodness(child)
    _require(crep.verdict is GoodnessVerdict.GOOD, tag,
             f"contracted graph is {crep.verdict.value}")
    gamma_side = {p.w1, p.z1}

    def lift(sub: list[tuple[str, Cycle]]) -> list[tuple[str, Cycle]]:
        through = [c for _, c in sub if x_c in c]
        _require(len(through) == 2, tag,
                 f"expected 2 child cycles through the rectangle, got {len(through)}")
        inserts = ([p.x2, p.v, p.x1], [p.x2, y, p.x1])
        out = []
        for mid, c in zip(inserts, through):
            def expand(a: int, b: int, mid=mid) -> list[int]:
                return mid if a in gamma_side else list(reversed(mid))
            out.append((tag, _lift_through(c, x_c, to_parent, expand)))
        out.extend((t, _map_cycle(c, to_parent)) for t, c in sub
                   if x_c not in c)
        return out

    return CaseReduction(tag, child, tf, lift)


def _case2_2_2c(g: EdgeColoredGraph, p: CasePattern) -> CaseReduction:
    """y1 == w2: contract the rectangle x1-y1-x2-v, folding delta into beta.

    A child cycle through the merged vertex must use one of its two beta
    edges; the one toward y2 expands through y1, the one toward z2 through v.
    """
    tag = CASE_2_2_2C
    _require(p.y1 == p.w2, tag, "shape c needs y1 == w2")
    _require(g.graph.degree(p.y1) == 2, tag, "shared vertex must be Type I")
    _require(not ({p.w1, p.z1} & {p.y2, p.z2}), tag, "shape c sides overlap")
    rect = [edge(p.v, p.x1), edge(p.x1, p.y1), edge(p.y1, p.x2), edge(p.x2, p.v)]
    child, tf = _build_transform(
        g, "ContractRectangle",
        drop=rect,
        merge=[(p.v, p.x1, p.y1, p.x2)],
        recolor=[(edge(p.x2, p.z2), p.beta)])
    x_c = tf.child_of()[p.v]
    to_parent = tf.to_parent()
    crep = check_goodness(child)
    _require(crep.verdict is GoodnessVerdict.GOOD, tag,
             f"contracted graph is {crep.verdict.value}")
    gamma_side = {p.w1, p.z1}

    def lift(sub: list[tuple[str, Cycle]]) -> list[tuple[str, Cycle]]:
        through = [c for _, c in sub if x_c in c]
        _require(len(through) == 2, tag,
                 f"expected 2 child cycles through the rectangle, got {len(through)}")
        out = []
        seen_beta: set[int] = set()
        for c in through:
            rot = _rotate_to(c.vertices, x_c)
            a, b = to_parent[rot[1]], to_parent[rot[-1]]
            beta_end = b if a in gamma_side else a
            _require(beta_end in (p.y2, p.z2), tag,
                     "rectangle cycle lacks a beta-side edge")
            _require(beta_end not in seen_beta, tag,
                     "both rectangle cycles use the same beta edge")
            seen_beta.add(beta_end)
            mid = [p.x2, p.y1, p.x1] if beta_end == p.y2 else [p.x2, p.v, p.x1]

            def expand(a2: int, b2: int, mid=mid) -> list[int]:
                return mid if a2 in gamma_side else list(reversed(mid))
            out.append((tag, _lift_through(c, x_c, to_parent, expand)))
        out.extend((t, _map_cycle(c, to_parent)) for t, c in sub
                   if x_c not in c)
        return out

    return CaseReduction(tag, child, tf, lift)


def _case2_2_2d(g: EdgeColoredGraph, p: CasePattern) -> list[tuple[str, Cycle]]:
    """Doubly-shared neighbors: the rectangle x1-y1-x2-y2 itself is rainbow."""
    tag = CASE_2_2_2D
    _require(p.y1 == p.w2 and p.y2 == p.w1, tag, "shape d labels wrong")
    cyc = Cycle((p.x1, p.y1, p.x2, p.y2))
    cols = [g.coloring[e] for e in cyc.edges]
    _require(len(set(cols)) == 4, tag, "rectangle is not rainbow")
    return [(tag, cyc)]


# ---------------------------------------------------------------------------
# fallback search


@dataclass(frozen=True)
class FallbackResult:
    status: str  # "found" | "absent" | "indeterminate"
    cycle: Cycle | None = None


def fallback_search(g: EdgeColoredGraph,
                    max_len: int | None = None) -> FallbackResult:
    """Exhaustive hunt for one safely removable cycle, shortest first.

    On a good graph: a rainbow cycle whose removal stays good. On an
    almost-good graph: additionally an almost-rainbow cycle through the bad
    vertex whose removal is good. Unbounded below 64 edges; above that a
    length budget applies and exhausting it yields "indeterminate" rather
    than "absent".
    """
    rep = check_goodness(g)
    if not rep.ok:
        raise DecomposeError("fallback requires a good or almost-good graph")
    if not g.edges:
        return FallbackResult("absent")
    longest = max(len(c) for c in connected_nonisolated_components(g))
    cap = max_len if max_len is not None else (longest if len(g.edges) < 64 else 24)
    truncated = cap < longest
    for cyc in enumerate_cycles(g.graph, max_len=cap):
        problem, _, _ = _check_removal(g, rep, cyc)
        if problem is None:
            return FallbackResult("found", cyc)
    return FallbackResult("indeterminate" if truncated else "absent")


# ---------------------------------------------------------------------------
# the engine


def _dispatch(comp: EdgeColoredGraph, rep: GoodnessReport, ctx: _Ctx):
    """Pick the applicable case; returns a direct batch or a CaseReduction."""
    base = _single_cycle(comp)
    if base is not None:
        return [(BASE_CYCLE, base)]
    tri = find_rainbow_triangle(comp)
    if tri is not None:
        return [(RAINBOW_TRIANGLE, tri)]
    if rep.verdict is GoodnessVerdict.ALMOST_GOOD:
        v = rep.bad_vertex
        x1, x2 = sorted(comp.graph.adj[v])
        if comp.graph.has_edge(x1, x2):
            return case1_1(comp, v)
        return case1_2(comp, v)
    if _all_type2(comp):
        return [(ALL_TYPE_II, find_cycle_all_type2(comp))]
    length, path = longest_singular_path(comp)
    if length >= 3:
        return case2_1(comp, path)
    pat = extract_case2_2_pattern(comp)
    shape, pat = normalize_case2_2(pat)
    if shape == "disjoint":
        return case2_2_1(comp, pat,
                         lambda child: _decompose_graph(child, ctx))
    return case2_2_2(comp, shape, pat)


def _run_step(comp: EdgeColoredGraph, step, ctx: _Ctx) -> list[tuple[str, Cycle]]:
    if isinstance(step, CaseReduction):
        if step.run is not None:
            return step.run()
        sub = _decompose_graph(step.child, ctx)
        return step.lift(sub)
    return step


def _apply_batch(comp: EdgeColoredGraph, rep: GoodnessReport,
                 batch: list[tuple[str, Cycle]],
                 ) -> tuple[EdgeColoredGraph, GoodnessReport, list[tuple[str, Cycle]]]:
    h, r = comp, rep
    applied: list[tuple[str, Cycle]] = []
    for tag, cyc in batch:
        problem, h2, r2 = _check_removal(h, r, cyc)
        if problem is not None:
            raise CaseVerificationError(tag, problem, cyc)
        h, r = h2, r2
        applied.append((tag, cyc))
    return h, r, applied


def _decompose_component(comp: EdgeColoredGraph, ctx: _Ctx) -> list[tuple[str, Cycle]]:
    out: list[tuple[str, Cycle]] = []
    cur = comp
    while cur.edges:
        parts = split_components(cur)
        if len(parts) > 1:
            for part in parts:
                out.extend(_decompose_component(part, ctx))
            return out
        cur = parts[0]
        rep = check_goodness(cur)
        if not rep.ok:
            raise _EngineFailure("Engine", cur,
                                 "graph lost goodness between steps", None, rep)
        try:
            step = _dispatch(cur, rep, ctx)
            batch = _run_step(cur, step, ctx)
            if not batch:
                raise CaseVerificationError("Engine", "case produced no cycles")
            cur, rep, applied = _apply_batch(cur, rep, batch)
            out.extend(applied)
            continue
        except (CaseVerificationError, _EngineFailure) as err:
            case = err.case
            detail = str(err)
            failed_cycle = err.cycle
        fb = fallback_search(cur, max_len=ctx.fallback_max_len)
        if fb.status == "found":
            try:
                cur, rep, applied = _apply_batch(cur, rep, [(FALLBACK, fb.cycle)])
                out.extend(applied)
                continue
            except CaseVerificationError as err2:
                detail = f"{detail}; fallback cycle failed too: {err2}"
        raise _EngineFailure(
            case, cur,
            f"case failed ({detail}); fallback search returned {fb.status}",
            failed_cycle, rep)
    return out


def _decompose_graph(g: EdgeColoredGraph, ctx: _Ctx) -> list[tuple[str, Cycle]]:
    out: list[tuple[str, Cycle]] = []
    for comp in split_components(g):
        out.extend(_decompose_component(comp, ctx))
    return out


def _verified_trace(g: EdgeColoredGraph,
                    tagged: list[tuple[str, Cycle]]) -> DecompositionTrace:
    """Replay the removals from scratch, recording per-step goodness."""
    steps: list[TraceStep] = []
    h = g
    rep = check_goodness(h)
    for tag, cyc in tagged:
        problem, h2, rep2 = _check_removal(h, rep, cyc)
        if problem is not None:
            failure = CaseFailure(tag, serialize_colored_edge_list(h),
                                  f"replay verification failed: {problem}",
                                  cyc, rep)
            return DecompositionTrace(tuple(steps), None, failure)
        steps.append(TraceStep(tag, cyc, rep2))
        h, rep = h2, rep2
    if h.edges:
        failure = CaseFailure("Engine", serialize_colored_edge_list(h),
                              "cycles do not cover every edge", None, rep)
        return DecompositionTrace(tuple(steps), None, failure)
    cycles = [c for _, c in tagged]
    almost = [c for c in cycles
              if len({g.coloring[e] for e in c.edges}) != len(c.edges)]
    ordered = almost + [c for c in cycles if c not in almost]
    return DecompositionTrace(tuple(steps), tuple(ordered), None)


def decompose(g: EdgeColoredGraph,
              fallback_max_len: int | None = None) -> DecompositionTrace:
    """Decompose a good or almost-good colored graph into rainbow cycles.

    On success the returned cycles partition the edges, all rainbow except
    at most one almost-rainbow cycle (listed first) when the input was
    almost-good. A defect in any case's argument surfaces as a CaseFailure
    outcome carrying the serialized graph, never as an unverified answer.
    """
    rep = check_goodness(g)
    if not rep.ok:
        raise DecomposeError(
            f"input is {rep.verdict.value}: "
            f"{[v.to_json() for v in rep.violations][:4]}")
    ctx = _Ctx(fallback_max_len)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4000 + 30 * (g.n + len(g.edges))))
    try:
        tagged = _decompose_graph(g, ctx)
    except _EngineFailure as f:
        return DecompositionTrace(
            (), None,
            CaseFailure(f.case, serialize_colored_edge_list(f.graph),
                        f.message, f.cycle, f.report))
    finally:
        sys.setrecursionlimit(limit)
    return _verified_trace(g, tagged)


def decompose_goddyn(clg: ColoredLineGraph, first: Cycle,
                     fallback_max_len: int | None = None) -> DecompositionTrace:
    """Decompose the line graph with a prescribed first cycle.

    `first` is a cycle of the base cubic graph; its projection is removed
    first (safe: the line graph is all Type II, and removing any rainbow
    cycle from such a graph preserves goodness), so the lifted cover
    contains `first`.
    """
    if not isinstance(first, Cycle) or not first.is_cycle_of(clg.base):
        raise DecomposeError(f"prescribed cycle is not a cycle of the base graph")
    L = clg.lg
    rep = check_goodness(L)
    if rep.verdict is not GoodnessVerdict.GOOD or not _all_type2(L):
        raise DecomposeError("line graph is not a good all-Type-II graph")
    proj = project_cycle(clg, first)
    problem, h, _ = _check_removal(L, rep, proj)
    if problem is not None:
        return DecompositionTrace(
            (), None,
            CaseFailure(ALL_TYPE_II, serialize_colored_edge_list(L),
                        f"prescribed cycle removal failed: {problem}", proj, rep))
    ctx = _Ctx(fallback_max_len)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4000 + 30 * (L.n + len(L.edges))))
    try:
        tagged = [(ALL_TYPE_II, proj)] + _decompose_graph(h, ctx)
    except _EngineFailure as f:
        return DecompositionTrace(
            (), None,
            CaseFailure(f.case, serialize_colored_edge_list(f.graph),
                        f.message, f.cycle, f.report))
    finally:
        sys.setrecursionlimit(limit)
    return _verified_trace(L, tagged)


def replay_case_failure(failure: CaseFailure,
                        fallback_max_len: int | None = None) -> DecompositionTrace:
    """Re-run decomposition on a failure's serialized graph."""
    g = parse_colored_edge_list(failure.graph_text)
    return decompose(g, fallback_max_len=fallback_max_len)
