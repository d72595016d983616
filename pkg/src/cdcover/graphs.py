"""Undirected simple graphs with dense integer vertex ids.

Provides the plain graph value type, cycles in canonical form, parsing and
serialization (graph6 and edge-list text), and the topological primitives the
rest of the package is built on: connectivity, bridges, blocks, contraction,
and subdivision.

All values are immutable after construction; every operation returns new
values, and any operation that renumbers vertices returns an explicit
old -> new id map alongside the result.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

Edge = tuple[int, int]


class GraphError(ValueError):
    """Malformed graph input or an illegal graph operation."""


def edge(u: int, v: int) -> Edge:
    """Canonical unordered edge (u, v) with u < v."""
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Isolated vertices are representable: `n` may exceed the number of
    vertices that appear in `edges`.
    """

    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        for e in self.edges:
            if not (isinstance(e, tuple) and len(e) == 2):
                raise GraphError(f"bad edge {e!r}")
            u, v = e
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge {e} out of range for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, pairs) -> "Graph":
        return cls(n, frozenset(edge(u, v) for u, v in pairs))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(b)) for b in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Cycle:
    """A vertex-simple cycle, stored canonically.

    Canonical form: rotated so the minimum vertex is first, oriented so the
    second entry is the smaller of the first vertex's two cycle neighbors.
    This makes equality and set membership well defined.
    """

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        seq = tuple(self.vertices)
        if len(seq) < 3:
            raise GraphError(f"cycle needs at least 3 vertices, got {seq}")
        if len(set(seq)) != len(seq):
            raise GraphError(f"repeated vertex in cycle {seq}")
        i = seq.index(min(seq))
        rot = seq[i:] + seq[:i]
        if rot[1] > rot[-1]:
            rot = (rot[0],) + tuple(reversed(rot[1:]))
        object.__setattr__(self, "vertices", rot)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        vs = self.vertices
        return tuple(edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def is_cycle_of(self, g: Graph) -> bool:
        return all(e in g.edges for e in self.edges)


@dataclass(frozen=True)
class BlockDecomposition:
    """Partition of a graph's edges into maximal 2-connected blocks.

    `block_tree` lists (i, j, c): blocks i and j share the cut vertex c.
    Blocks sharing one cut vertex are attached in a star on the
    lowest-indexed block, which keeps the adjacency acyclic.
    """

    blocks: tuple[frozenset[Edge], ...]
    cut_vertices: frozenset[int]
    block_tree: tuple[tuple[int, int, int], ...]

    def block_vertices(self, i: int) -> frozenset[int]:
        return frozenset(itertools.chain.from_iterable(self.blocks[i]))

    def blocks_at(self, v: int) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.blocks)
                     if any(v in e for e in b))


# ---------------------------------------------------------------------------
# basic structure queries


def is_cubic(g: Graph) -> bool:
    """True iff every vertex has degree exactly 3."""
    return all(g.degree(v) == 3 for v in range(g.n))


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the connected components, isolated vertices included.

    Components are ordered by their minimum vertex.
    """
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def find_bridges(g: Graph) -> frozenset[Edge]:
    """All edges whose removal disconnects their component.

    Iterative lowpoint depth-first search, O(V+E).
    """
    disc = [-1] * g.n
    low = [0] * g.n
    bridges: set[Edge] = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        # stack entries: (vertex, parent, iterator over neighbors)
        stack = [(root, -1, iter(g.adj[root]))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(g.adj[w])))
                    advanced = True
                    break
                elif w != parent:
                    low[v] = min(low[v], disc[w])
                elif parent >= 0 and w == parent:
                    # simple graph: skip the tree edge exactly once
                    parent = -2
                    stack[-1] = (v, parent, it)
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > disc[u]:
                        bridges.add(edge(u, v))
    return frozenset(bridges)


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Unique partition of E into maximal 2-connected blocks plus cut vertices.

    Handles disconnected input (the block adjacency is then a forest); for
    connected input it is a tree.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    edge_stack: list[Edge] = []
    raw_blocks: list[frozenset[Edge]] = []
    cut: set[int] = set()

    for root in range(g.n):
        if disc[root] != -1 or g.degree(root) == 0:
            continue
        root_children = 0
        stack = [(root, -1, iter(g.adj[root]))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    if v == root:
                        root_children += 1
                    edge_stack.append(edge(v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(g.adj[w])))
                    advanced = True
                    break
                elif w != parent and disc[w] < disc[v]:
                    edge_stack.append(edge(v, w))
                    low[v] = min(low[v], disc[w])
                elif w == parent:
                    parent = -2
                    stack[-1] = (v, parent, it)
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= disc[u]:
                        # u separates the subtree at v: pop one block
                        blk = []
                        while edge_stack:
                            e = edge_stack.pop()
                            blk.append(e)
                            if e == edge(u, v):
                                break
                        raw_blocks.append(frozenset(blk))
                        if u != root:
                            cut.add(u)
        if root_children >= 2:
            cut.add(root)

    blocks = tuple(sorted(raw_blocks, key=lambda b: sorted(b)))
    tree: list[tuple[int, int, int]] = []
    for c in sorted(cut):
        at_c = [i for i, b in enumerate(blocks) if any(c in e for e in b)]
        hub = at_c[0]
        tree.extend((hub, i, c) for i in at_c[1:])
    return BlockDecomposition(blocks, frozenset(cut), tuple(tree))


# ---------------------------------------------------------------------------
# transformations


def _compact_map(n: int, removed: int) -> dict[int, int]:
    """Old -> new ids after deleting one vertex, shifting higher ids down."""
    return {v: (v if v < removed else v - 1) for v in range(n) if v != removed}


def contract_edge(g: Graph, e: Edge) -> tuple[Graph, dict[int, int]]:
    """Contract edge e, merging its endpoints into one vertex.

    The merged vertex takes the slot of min(e); ids above max(e) shift down
    by one. Returns (new graph, old->new vertex map); both endpoints of e map
    to the merged id. Refuses to merge endpoints with a common neighbor,
    since that would create a parallel edge.
    """
    u, v = edge(*e)
    if (u, v) not in g.edges:
        raise GraphError(f"edge {(u, v)} not in graph")
    common = set(g.adj[u]) & set(g.adj[v])
    if common:
        w = min(common)
        err = GraphError(
            f"contracting {(u, v)} would create a parallel edge: "
            f"triangle ({u}, {v}, {w})")
        err.triangle = (u, v, w)  # type: ignore[attr-defined]
        raise err
    vmap = _compact_map(g.n, v)
    vmap[v] = vmap[u]
    new_edges = set()
    for a, b in g.edges:
        if (a, b) == (u, v):
            continue
        new_edges.add(edge(vmap[a], vmap[b]))
    return Graph(g.n - 1, frozenset(new_edges)), vmap


def subdivide_edge(g: Graph, e: Edge) -> tuple[Graph, int]:
    """Replace edge e by a length-2 path through a fresh vertex (id = n)."""
    u, v = edge(*e)
    if (u, v) not in g.edges:
        raise GraphError(f"edge {(u, v)} not in graph")
    x = g.n
    new_edges = (g.edges - {(u, v)}) | {edge(u, x), edge(v, x)}
    return Graph(g.n + 1, new_edges), x


# ---------------------------------------------------------------------------
# graph6 format (McKay's encoding), one graph per line


def _g6_decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, offset of first adjacency byte)."""
    if not data:
        raise GraphError("graph6 parse error at byte 0: empty input (truncated)")
    b0 = data[0]
    if b0 != 126:
        if not (63 <= b0 <= 125):
            raise GraphError(f"graph6 parse error at byte 0: bad header byte {b0}")
        return b0 - 63, 1
    if len(data) < 4:
        raise GraphError(f"graph6 parse error at byte {len(data)}: truncated extended header")
    if data[1] == 126:
        raise GraphError("graph6 parse error at byte 1: >68-bit vertex counts unsupported")
    n = 0
    for i in (1, 2, 3):
        b = data[i]
        if not (63 <= b <= 126):
            raise GraphError(f"graph6 parse error at byte {i}: out-of-range character {b}")
        n = (n << 6) | (b - 63)
    return n, 4


def parse_graph6(text: str) -> Graph:
    """Parse one graph6 line into a Graph.

    Accepts an optional ">>graph6<<" prefix and trailing whitespace.
    Errors carry the byte offset of the offending character.
    """
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii", errors="replace")
    n, off = _g6_decode_n(data)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[off:]
    if len(body) < nbytes:
        raise GraphError(
            f"graph6 parse error at byte {off + len(body)}: truncated bit-vector "
            f"(need {nbytes} bytes, got {len(body)})")
    if len(body) > nbytes:
        raise GraphError(f"graph6 parse error at byte {off + nbytes}: trailing data")
    bits = []
    for i, b in enumerate(body):
        if not (63 <= b <= 126):
            raise GraphError(f"graph6 parse error at byte {off + i}: out-of-range character {b}")
        x = b - 63
        bits.extend((x >> k) & 1 for k in range(5, -1, -1))
    edges = set()
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.add((u, v))
            idx += 1
    return Graph(n, frozenset(edges))


def serialize_graph6(g: Graph) -> str:
    """Encode a Graph as a graph6 string (no trailing newline)."""
    n = g.n
    if n <= 62:
        head = [63 + n]
    elif n <= 258047:
        head = [126, 63 + ((n >> 12) & 63), 63 + ((n >> 6) & 63), 63 + (n & 63)]
    else:
        raise GraphError(f"graph too large for supported graph6 headers: n={n}")
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if (u, v) in g.edges else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for i in range(0, len(bits), 6):
        x = 0
        for b in bits[i:i + 6]:
            x = (x << 1) | b
        body.append(63 + x)
    return bytes(head + body).decode("ascii")


# ---------------------------------------------------------------------------
# edge-list text format: optional first line "n <count>", then "u v" lines


def parse_edge_list(text: str) -> Graph:
    lines = text.splitlines()
    declared_n: int | None = None
    pairs: list[Edge] = []
    seen: set[Edge] = set()
    start = 0
    for start, line in enumerate(lines):
        if line.strip() and not line.lstrip().startswith("#"):
            break
    else:
        start = len(lines)
    if start < len(lines):
        toks = lines[start].split()
        if toks and toks[0] == "n":
            if len(toks) != 2:
                raise GraphError(f"line {start + 1}: malformed vertex-count header")
            try:
                declared_n = int(toks[1])
            except ValueError:
                raise GraphError(f"line {start + 1}: non-integer vertex count {toks[1]!r}")
            start += 1
    for i in range(start, len(lines)):
        line = lines[i].strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 2:
            raise GraphError(f"line {i + 1}: expected 'u v', got {line!r}")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphError(f"line {i + 1}: non-integer vertex id in {line!r}")
        if u < 0 or v < 0:
            raise GraphError(f"line {i + 1}: negative vertex id in {line!r}")
        if u == v:
            raise GraphError(f"line {i + 1}: self-loop at vertex {u}")
        e = edge(u, v)
        if e in seen:
            raise GraphError(f"line {i + 1}: duplicate edge {e}")
        seen.add(e)
        pairs.append(e)
    n = declared_n if declared_n is not None else (1 + max((max(e) for e in pairs), default=-1))
    if any(max(e) >= n for e in pairs):
        bad = next(e for e in pairs if max(e) >= n)
        raise GraphError(f"edge {bad} out of range for declared n={n}")
    return Graph(n, frozenset(pairs))


def serialize_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"
