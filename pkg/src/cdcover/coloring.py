"""Edge-colored graphs and the good / almost-good condition suite.

A colored graph is *good* when: (1) all degrees are even, (2) max degree is
at most 4, (3) every triangle is rainbow or monochromatic, (4) every
nonisolated vertex sees exactly two colors, (5) each color class spans at
most three vertices, and (6) there is no cut vertex of Type X. *Almost-good*
relaxes (4): exactly one nonisolated vertex (the "bad vertex") has color
degree 1, and that vertex has degree 2.

A cut vertex of Type X is a degree-4 cut vertex whose four edges split as two
monochromatic pairs into two different sides of the cut. In an even graph
each side of a degree-4 cut vertex receives exactly two of its edges (an odd
count would make one of them a bridge, and even graphs have none), so Type X
detection reduces to a component-wise check.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .graphs import Cycle, Edge, Graph, edge


class ColoredGraphError(ValueError):
    """Malformed colored-graph input or an illegal operation."""


class NotClassifiableError(ColoredGraphError):
    """Vertex degree / color-degree combination outside the good taxonomy."""

    def __init__(self, vertex: int, degree: int, color_degree: int):
        self.vertex = vertex
        self.degree = degree
        self.color_degree = color_degree
        super().__init__(
            f"vertex {vertex} with degree {degree} and color degree "
            f"{color_degree} is not Type I, Type II, bad, or isolated")


@dataclass(frozen=True)
class EdgeColoredGraph:
    """A graph plus a total edge coloring (dense integer color ids).

    Treated as immutable; all transformations return new instances.
    """

    graph: Graph
    coloring: Mapping[Edge, int]

    def __post_init__(self) -> None:
        missing = self.graph.edges - set(self.coloring)
        extra = set(self.coloring) - self.graph.edges
        if missing or extra:
            raise ColoredGraphError(
                f"coloring must be total: missing {sorted(missing)}, "
                f"extra {sorted(extra)}")

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[tuple[int, int, int]]) -> "EdgeColoredGraph":
        coloring = {}
        for u, v, c in triples:
            e = edge(u, v)
            if e in coloring and coloring[e] != c:
                raise ColoredGraphError(f"edge {e} given two colors")
            coloring[e] = c
        return cls(Graph(n, frozenset(coloring)), coloring)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def edges(self) -> frozenset[Edge]:
        return self.graph.edges

    def color(self, u: int, v: int) -> int:
        return self.coloring[edge(u, v)]

    def colors_at(self, v: int) -> tuple[int, ...]:
        return tuple(self.coloring[edge(v, w)] for w in self.graph.adj[v])

    def color_degree(self, v: int) -> int:
        return len(set(self.colors_at(v)))

    def remove_edges(self, drop: Iterable[Edge]) -> "EdgeColoredGraph":
        gone = {edge(*e) for e in drop}
        absent = gone - self.graph.edges
        if absent:
            raise ColoredGraphError(f"cannot remove absent edges {sorted(absent)}")
        keep = self.graph.edges - gone
        return EdgeColoredGraph(Graph(self.n, keep),
                                {e: self.coloring[e] for e in keep})

    def remove_cycle(self, c: Cycle) -> "EdgeColoredGraph":
        return self.remove_edges(c.edges)

    def restrict_edges(self, keep: Iterable[Edge]) -> "EdgeColoredGraph":
        kept = {edge(*e) for e in keep}
        absent = kept - self.graph.edges
        if absent:
            raise ColoredGraphError(f"cannot keep absent edges {sorted(absent)}")
        return EdgeColoredGraph(Graph(self.n, frozenset(kept)),
                                {e: self.coloring[e] for e in kept})

    def is_rainbow(self, c: Cycle) -> bool:
        cols = [self.coloring[e] for e in c.edges]
        return len(set(cols)) == len(cols)

    @cached_property
    def nonisolated(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.graph.degree(v) > 0)


class VertexClass(enum.Enum):
    TYPE_I = "TypeI"        # degree 2, two distinct colors
    TYPE_II = "TypeII"      # degree 4, two colors twice each
    BAD = "Bad"             # degree 2, one color (the almost-good exception)
    ISOLATED = "Isolated"


def classify_vertex(g: EdgeColoredGraph, v: int) -> VertexClass:
    deg = g.graph.degree(v)
    if deg == 0:
        return VertexClass.ISOLATED
    cols = g.colors_at(v)
    cd = len(set(cols))
    if deg == 2 and cd == 2:
        return VertexClass.TYPE_I
    if deg == 2 and cd == 1:
        return VertexClass.BAD
    if deg == 4 and cd == 2 and all(cols.count(c) == 2 for c in set(cols)):
        return VertexClass.TYPE_II
    raise NotClassifiableError(v, deg, cd)


@dataclass(frozen=True)
class ColorClass:
    color: int
    edges: frozenset[Edge]
    vertices: frozenset[int]


def color_classes(g: EdgeColoredGraph) -> dict[int, ColorClass]:
    """Partition of the edges by color, with the vertex span of each class."""
    by_color: dict[int, set[Edge]] = {}
    for e, c in g.coloring.items():
        by_color.setdefault(c, set()).add(e)
    return {
        c: ColorClass(c, frozenset(es),
                      frozenset(v for e in es for v in e))
        for c, es in sorted(by_color.items())
    }


class GoodnessVerdict(enum.Enum):
    GOOD = "good"
    ALMOST_GOOD = "almost_good"
    NOT_GOOD = "not_good"


@dataclass(frozen=True)
class Violation:
    """One failed goodness condition with a concrete witness.

    `kind` is one of "vertex", "triangle", "color"; `witness` is the vertex
    id, the sorted vertex triple, or the color id respectively.
    """

    condition: int
    kind: str
    witness: object

    def to_json(self) -> dict:
        w = self.witness
        return {"condition": self.condition, "kind": self.kind,
                "witness": list(w) if isinstance(w, tuple) else w}


@dataclass(frozen=True)
class GoodnessReport:
    verdict: GoodnessVerdict
    bad_vertex: int | None
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return self.verdict is not GoodnessVerdict.NOT_GOOD

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value,
                "bad_vertex": self.bad_vertex,
                "violations": [v.to_json() for v in self.violations]}


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    """All triangles as sorted vertex triples, lexicographically ordered."""
    out = []
    for u, v in sorted(g.edges):
        for w in g.adj[u]:
            if w > v and w in g.adj[v]:
                out.append((u, v, w))
    return sorted(out)


def check_goodness(g: EdgeColoredGraph) -> GoodnessReport:
    """Evaluate all six goodness conditions; failures are data, not errors."""
    violations: list[Violation] = []

    even_ok = True
    for v in range(g.n):
        d = g.graph.degree(v)
        if d % 2:
            violations.append(Violation(1, "vertex", v))
            even_ok = False
        if d > 4:
            violations.append(Violation(2, "vertex", v))
            even_ok = False

    for tri in triangles(g.graph):
        u, v, w = tri
        cols = {g.color(u, v), g.color(v, w), g.color(u, w)}
        if len(cols) == 2:
            violations.append(Violation(3, "triangle", tri))

    bad_candidates: list[int] = []
    for v in g.nonisolated:
        cd = g.color_degree(v)
        if cd == 2:
            continue
        if cd == 1 and g.graph.degree(v) == 2:
            bad_candidates.append(v)
        else:
            violations.append(Violation(4, "vertex", v))

    for c, cls in color_classes(g).items():
        if len(cls.vertices) > 3:
            violations.append(Violation(5, "color", c))

    if even_ok:
        for v in find_type_x_vertices(g):
            violations.append(Violation(6, "vertex", v))

    if len(bad_candidates) == 1 and not violations:
        v = bad_candidates[0]
        return GoodnessReport(GoodnessVerdict.ALMOST_GOOD, v,
                              (Violation(4, "vertex", v),))
    violations.extend(Violation(4, "vertex", v) for v in bad_candidates)
    violations.sort(key=lambda x: (x.condition, str(x.witness)))
    if violations:
        return GoodnessReport(GoodnessVerdict.NOT_GOOD, None, tuple(violations))
    return GoodnessReport(GoodnessVerdict.GOOD, None, ())


# ---------------------------------------------------------------------------
# cut structure


def _components_without(g: Graph, v: int, within: frozenset[int] | None = None) -> list[frozenset[int]]:
    """Connected components of (the subgraph on `within`) minus vertex v."""
    allowed = within if within is not None else frozenset(range(g.n))
    seen = {v}
    comps = []
    for s in sorted(allowed):
        if s in seen or g.degree(s) == 0:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in g.adj[a]:
                if b not in seen and b in allowed:
                    seen.add(b)
                    stack.append(b)
        comps.append(frozenset(comp))
    return comps


def find_type_x_vertices(g: EdgeColoredGraph) -> frozenset[int]:
    """All cut vertices of Type X.

    Requires all degrees even. A degree-4 cut vertex in an even graph has
    exactly two components hanging off it, each taking two of its edges; it
    is Type X when both pairs are monochromatic.
    """
    odd = [v for v in range(g.n) if g.graph.degree(v) % 2]
    if odd:
        raise ColoredGraphError(f"Type X detection requires an even graph; "
                                f"odd-degree vertices {odd}")
    comp_of: dict[int, int] = {}
    for i, comp in enumerate(connected_nonisolated_components(g)):
        for v in comp:
            comp_of[v] = i
    result = set()
    for v in range(g.n):
        if g.graph.degree(v) != 4:
            continue
        within = frozenset(w for w in comp_of if comp_of[w] == comp_of[v])
        comps = _components_without(g.graph, v, within)
        if len(comps) < 2:
            continue
        groups: dict[int, list[int]] = {}
        for w in g.graph.adj[v]:
            ci = next(i for i, c in enumerate(comps) if w in c)
            groups.setdefault(ci, []).append(w)
        if len(groups) != 2 or any(len(ws) != 2 for ws in groups.values()):
            # cannot happen in an even graph; surface it rather than guess
            raise ColoredGraphError(
                f"degree-4 cut vertex {v} splits {sorted(groups.values())} "
                f"across components in an even graph")
        if all(len({g.color(v, w) for w in ws}) == 1 for ws in groups.values()):
            result.add(v)
    return frozenset(result)


def connected_nonisolated_components(g: EdgeColoredGraph) -> list[frozenset[int]]:
    """Vertex sets of the edge-bearing connected components, by min vertex."""
    from .graphs import connected_components
    return [c for c in connected_components(g.graph)
            if any(g.graph.degree(v) > 0 for v in c)]


def split_components(g: EdgeColoredGraph) -> list[EdgeColoredGraph]:
    """One colored graph per edge-bearing component (vertex ids preserved)."""
    out = []
    for comp in connected_nonisolated_components(g):
        keep = [e for e in g.edges if e[0] in comp]
        out.append(g.restrict_edges(keep))
    return out


def pseudoblocks(g: EdgeColoredGraph, v: int) -> tuple[frozenset[int], frozenset[int]]:
    """Split the component of v into two edge-disjoint sides meeting only at v.

    The side containing the lowest-numbered edge at v becomes the first set.
    """
    comp = next((c for c in connected_nonisolated_components(g) if v in c), None)
    if comp is None:
        raise ColoredGraphError(f"vertex {v} is isolated")
    comps = _components_without(g.graph, v, comp)
    if len(comps) < 2:
        raise ColoredGraphError(f"vertex {v} is not a cut vertex")
    lowest = min(edge(v, w) for w in g.graph.adj[v])
    other = lowest[0] if lowest[1] == v else lowest[1]
    first = next(c for c in comps if other in c)
    rest = frozenset().union(*(c for c in comps if c is not first))
    return (first | {v}, rest | {v})


@dataclass(frozen=True)
class XBlockDecomposition:
    """Blocks merged along every cut vertex that is not Type X.

    The pieces intersect pairwise in at most one Type X cut vertex, and their
    adjacency (`forest`: pairs (i, j, cut vertex)) is a forest.
    """

    x_blocks: tuple[frozenset[int], ...]
    x_cut_vertices: frozenset[int]
    forest: tuple[tuple[int, int, int], ...]

    def block_of(self, v: int) -> int:
        """Index of an x-block containing v (the lowest if v is Type X)."""
        for i, b in enumerate(self.x_blocks):
            if v in b:
                return i
        raise ColoredGraphError(f"vertex {v} in no x-block")

    def is_path(self) -> bool:
        deg: dict[int, int] = {}
        for i, j, _ in self.forest:
            deg[i] = deg.get(i, 0) + 1
            deg[j] = deg.get(j, 0) + 1
        if len(self.forest) != len(self.x_blocks) - 1:
            return False  # disconnected
        return all(d <= 2 for d in deg.values())

    def path_order(self) -> list[int]:
        """Block indices along the path; requires is_path()."""
        if not self.is_path():
            raise ColoredGraphError("x-block forest is not a path")
        if len(self.x_blocks) == 1:
            return [0]
        nbrs: dict[int, list[int]] = {i: [] for i in range(len(self.x_blocks))}
        for i, j, _ in self.forest:
            nbrs[i].append(j)
            nbrs[j].append(i)
        ends = sorted(i for i, ns in nbrs.items() if len(ns) == 1)
        order = [ends[0]]
        prev = None
        while len(order) < len(self.x_blocks):
            nxt = next(k for k in nbrs[order[-1]] if k != prev)
            prev = order[-1]
            order.append(nxt)
        return order


def x_block_decomposition(g: EdgeColoredGraph) -> XBlockDecomposition:
    """Unique decomposition of a connected even colored graph into x-blocks."""
    from .graphs import block_decomposition

    comps = connected_nonisolated_components(g)
    if len(comps) != 1:
        raise ColoredGraphError("x-block decomposition requires a connected graph")
    txv = find_type_x_vertices(g)
    bd = block_decomposition(g.graph)
    k = len(bd.blocks)
    parent = list(range(k))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for c in sorted(bd.cut_vertices):
        if c in txv:
            continue
        at_c = bd.blocks_at(c)
        for i in at_c[1:]:
            union(at_c[0], i)

    roots = sorted({find(i) for i in range(k)})
    index = {r: i for i, r in enumerate(roots)}
    vsets: list[set[int]] = [set() for _ in roots]
    for i in range(k):
        vsets[index[find(i)]].update(v for e in bd.blocks[i] for v in e)
    x_blocks = tuple(frozenset(s) for s in vsets)

    forest = []
    for c in sorted(txv):
        at_c = sorted({index[find(i)] for i in bd.blocks_at(c)})
        if len(at_c) != 2:
            raise ColoredGraphError(
                f"Type X vertex {c} joins {len(at_c)} x-blocks; expected 2")
        forest.append((at_c[0], at_c[1], c))
    return XBlockDecomposition(x_blocks, txv, tuple(forest))


# ---------------------------------------------------------------------------
# color-structural queries used by the decomposer


def is_almost_rainbow_at(g: EdgeColoredGraph, c: Cycle, v: int) -> bool:
    """One color repeated exactly twice, on the two cycle edges at v."""
    cols = [g.coloring[e] for e in c.edges]
    if len(set(cols)) != len(cols) - 1:
        return False
    at_v = [g.coloring[e] for e in c.edges if v in e]
    return len(at_v) == 2 and at_v[0] == at_v[1]


def find_rainbow_triangle(g: EdgeColoredGraph) -> Cycle | None:
    """Lexicographically least triangle with three distinct edge colors."""
    for u, v, w in triangles(g.graph):
        if len({g.color(u, v), g.color(v, w), g.color(u, w)}) == 3:
            return Cycle((u, v, w))
    return None


def _singular_walk(g: EdgeColoredGraph, type1: set[int], start: int,
                   first: int) -> tuple[list[int], bool]:
    """Walk from `start` toward `first`, continuing through Type I vertices.

    Returns (vertices after start, closed); closed means the walk returned to
    start, i.e. the chain is a cycle consisting entirely of Type I vertices.
    """
    seq: list[int] = []
    node, cur = start, first
    while True:
        if cur == start:
            return seq, True
        seq.append(cur)
        if cur not in type1:
            return seq, False
        a, b = g.graph.adj[cur]
        node, cur = cur, (b if a == node else a)


def longest_singular_path(g: EdgeColoredGraph) -> tuple[int, tuple[int, ...]]:
    """Longest path whose internal vertices are all Type I.

    Closed walks count: a chain that returns to its start vertex is reported
    with the start repeated at the end, and its length is the full cycle
    length. With no Type I vertices the answer is a single edge (length 1).
    Ties break on the lexicographically least vertex sequence.
    """
    type1 = {v for v in g.nonisolated
             if g.graph.degree(v) == 2 and g.color_degree(v) == 2}
    if not type1:
        if not g.edges:
            raise ColoredGraphError("no edges")
        u, v = min(g.edges)
        return 1, (u, v)

    best: tuple[int, tuple[int, ...]] | None = None

    def consider(seq: tuple[int, ...]) -> None:
        nonlocal best
        cand = (len(seq) - 1, seq)
        if best is None or cand[0] > best[0] or \
                (cand[0] == best[0] and cand[1] < best[1]):
            best = cand

    seen: set[int] = set()
    for t in sorted(type1):
        if t in seen:
            continue
        right, closed = _singular_walk(g, type1, t, g.graph.adj[t][0])
        if closed:
            chain = [t] + right  # all Type I, a full cycle
            seen.update(chain)
            cyc = Cycle(tuple(chain))
            consider(cyc.vertices + (cyc.vertices[0],))
            continue
        left, _ = _singular_walk(g, type1, t, g.graph.adj[t][1])
        chain = list(reversed(left)) + [t] + right
        seen.update(v for v in chain if v in type1)
        fwd = tuple(chain)
        consider(min(fwd, tuple(reversed(fwd))))
    assert best is not None
    return best


# ---------------------------------------------------------------------------
# colored edge-list text format: optional "n <count>" line, then "u v color"


def parse_colored_edge_list(text: str) -> EdgeColoredGraph:
    lines = text.splitlines()
    declared_n: int | None = None
    triples: list[tuple[int, int, int]] = []
    labels: dict[str, int] = {}
    seen: set[Edge] = set()
    body = [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    idx = 0
    if body:
        toks = body[0].split()
        if toks[0] == "n":
            if len(toks) != 2:
                raise ColoredGraphError("malformed vertex-count header")
            declared_n = int(toks[1])
            idx = 1
    for line in body[idx:]:
        toks = line.split()
        if len(toks) != 3:
            raise ColoredGraphError(f"expected 'u v color', got {line!r}")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ColoredGraphError(f"non-integer vertex id in {line!r}")
        e = edge(u, v)
        if e in seen:
            raise ColoredGraphError(f"duplicate edge {e}")
        seen.add(e)
        label = toks[2]
        if label not in labels:
            labels[label] = len(labels)
        triples.append((u, v, labels[label]))
    n = declared_n if declared_n is not None else (
        1 + max((max(u, v) for u, v, _ in triples), default=-1))
    return EdgeColoredGraph.from_triples(n, triples)


def serialize_colored_edge_list(g: EdgeColoredGraph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v} {g.coloring[(u, v)]}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"
