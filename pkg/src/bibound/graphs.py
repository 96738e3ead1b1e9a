"""Immutable simple graphs: construction, edge-list I/O, generators,
canonical forms, and the small enumerations the rest of the package runs on.

Vertices are always 0..n-1. Adjacency lists are sorted tuples, so every
traversal in the package is deterministic by construction.
"""

from __future__ import annotations

import bisect
import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

# Identifier of the seeded generator backing every randomized operation
# (python random.Random); recorded in run results and reports.
RNG_ALGORITHM = "mt19937"

CANONICAL_MAX_VERTICES = 12
ENUMERATION_MAX_EDGES = 9


class GraphError(ValueError):
    """Invalid graph data or operation arguments."""


class ParseError(GraphError):
    """Edge-list input rejected; carries the 1-based line number."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class SizeLimitError(GraphError):
    """Input exceeds a documented size limit of an exact/exhaustive routine."""


class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Immutable; adjacency lists are sorted; no self-loops, no parallel
    edges, symmetric by construction. All constructors validate.
    """

    __slots__ = ("_adj", "_edge_count")

    def __init__(self, adjacency: Sequence[Sequence[int]]):
        adj = tuple(tuple(row) for row in adjacency)
        n = len(adj)
        count = 0
        for u, row in enumerate(adj):
            prev = -1
            for v in row:
                if not isinstance(v, int):
                    raise GraphError(f"non-integer neighbor {v!r} of vertex {u}")
                if v < 0 or v >= n:
                    raise GraphError(f"neighbor {v} of vertex {u} out of range 0..{n - 1}")
                if v == u:
                    raise GraphError(f"self-loop at vertex {u}")
                if v <= prev:
                    raise GraphError(f"adjacency of vertex {u} not strictly sorted")
                prev = v
            count += len(row)
        if count % 2 != 0:
            raise GraphError("adjacency is not symmetric")
        # Symmetry: u in adj[v] iff v in adj[u].
        sets = [set(row) for row in adj]
        for u, row in enumerate(adj):
            for v in row:
                if u not in sets[v]:
                    raise GraphError(f"edge {u}-{v} missing its reverse")
        self._adj = adj
        self._edge_count = count // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise GraphError("vertex count must be >= 0")
        rows: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range 0..{n - 1}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge {key[0]}-{key[1]}")
            seen.add(key)
            rows[u].append(v)
            rows[v].append(u)
        return cls([sorted(row) for row in rows])

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(row) for row in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        row = self._adj[u]
        if len(row) > 8:
            i = bisect.bisect_left(row, v)
            return i < len(row) and row[i] == v
        return v in row

    def edges(self) -> list[tuple[int, int]]:
        """All edges (u, v) with u < v, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self._adj[u] if u < v]

    def adjacency_masks(self) -> list[int]:
        """Neighborhoods as bit masks; the hot loops run on these."""
        return [sum(1 << v for v in row) for row in self._adj]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self._edge_count})"


@dataclass(frozen=True)
class Coloring:
    """Color assignment from a palette 0..palette_size-1, one per vertex."""

    palette_size: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if self.palette_size < 1:
            raise GraphError("palette size must be >= 1")
        for v, c in enumerate(self.assignment):
            if not (0 <= c < self.palette_size):
                raise GraphError(
                    f"vertex {v} has color {c} outside palette 0..{self.palette_size - 1}"
                )


def max_degree(graph: Graph) -> int:
    return graph.max_degree()


# ---------------------------------------------------------------------------
# Edge-list text format.
#
#   n 5          optional first line declaring the vertex count
#   0 1          one edge per line, single space
#   # comment    ignored
#
# Without a declaration, n = 1 + max vertex id (0 for empty input).


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format; every rejection names its line number."""
    declared_n: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    lines = text.splitlines()
    first_significant = True
    for lineno, raw in enumerate(lines, start=1):
        if raw.startswith("#") or not raw.strip():
            continue
        significant_first, first_significant = first_significant, False
        if significant_first and raw.startswith("n "):
            parts = raw.split(" ")
            if len(parts) != 2 or not _is_uint(parts[1]):
                raise ParseError(lineno, f"malformed vertex-count line {raw!r}")
            declared_n = int(parts[1])
            continue
        parts = raw.split(" ")
        if len(parts) != 2 or not _is_uint(parts[0]) or not _is_uint(parts[1]):
            raise ParseError(lineno, f"malformed edge line {raw!r}")
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise ParseError(lineno, f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ParseError(lineno, f"duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        if declared_n is not None and (u >= declared_n or v >= declared_n):
            raise ParseError(
                lineno, f"vertex id {max(u, v)} not below declared count {declared_n}"
            )
        edges.append(key)
    if declared_n is None:
        declared_n = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(declared_n, edges)


def _is_uint(token: str) -> bool:
    return token.isdigit()


def write_edge_list(graph: Graph) -> str:
    """Inverse of parse_edge_list; always emits the vertex-count line and
    edges in lexicographic order, LF endings."""
    out = [f"n {graph.n}"]
    out.extend(f"{u} {v}" for u, v in graph.edges())
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Elementary operations.


def common_neighbors(graph: Graph, vertices: Sequence[int]) -> tuple[int, ...]:
    """Sorted common neighborhood of a nonempty vertex set."""
    if len(vertices) == 0:
        raise GraphError("common_neighbors of an empty set is undefined")
    for v in vertices:
        if not (0 <= v < graph.n):
            raise GraphError(f"vertex {v} out of range")
    acc = set(graph.neighbors(vertices[0]))
    for v in vertices[1:]:
        acc.intersection_update(graph.neighbors(v))
        if not acc:
            break
    return tuple(sorted(acc))


def connected_components(graph: Graph) -> list[tuple[int, ...]]:
    """Vertex sets of the connected components, each sorted, ordered by
    smallest member."""
    seen = [False] * graph.n
    comps: list[tuple[int, ...]] = []
    for start in range(graph.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = [start]
        while queue:
            u = queue.pop()
            for w in graph.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def bipartition(graph: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two-coloring by sides if the graph is bipartite, else None.

    Computed per component; each component contributes the side containing
    its smallest vertex id to the first set.
    """
    side = [-1] * graph.n
    first: list[int] = []
    second: list[int] = []
    for start in range(graph.n):
        if side[start] != -1:
            continue
        side[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for w in graph.neighbors(u):
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None  # odd cycle
    for v in range(graph.n):
        (first if side[v] == 0 else second).append(v)
    return tuple(first), tuple(second)


def induced_subgraph(graph: Graph, vertices: Sequence[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by `vertices` plus the order-preserving id map
    old -> new (vertices[i] -> i after sorting)."""
    vs = sorted(set(vertices))
    for v in vs:
        if not (0 <= v < graph.n):
            raise GraphError(f"vertex {v} out of range")
    remap = {v: i for i, v in enumerate(vs)}
    edges = [
        (remap[u], remap[v])
        for u, v in graph.edges()
        if u in remap and v in remap
    ]
    return Graph.from_edges(len(vs), edges), remap


def square_graph(graph: Graph) -> Graph:
    """Graph on the same vertices joining pairs at distance 1 or 2."""
    edges = []
    for u in range(graph.n):
        reach: set[int] = set(graph.neighbors(u))
        for w in graph.neighbors(u):
            reach.update(graph.neighbors(w))
        reach.discard(u)
        edges.extend((u, v) for v in reach if u < v)
    return Graph.from_edges(graph.n, edges)


# ---------------------------------------------------------------------------
# Generators.

GENERATOR_KINDS = (
    "path",
    "cycle",
    "complete",
    "complete_bipartite",
    "hypercube",
    "random_bounded_degree",
)


def generate(kind: str, params: Sequence, seed: int | None = None) -> Graph:
    """Deterministic graph families plus a seeded bounded-degree random model.

    random_bounded_degree takes (n, max_deg, p_edge): scan vertex pairs in
    lexicographic order, draw once per pair, and keep the edge only when
    both endpoint degrees stay below the bound. The draw happens for every
    pair so the random stream is independent of earlier acceptances.
    """
    if kind == "path":
        (n,) = _int_params(params, 1)
        if n < 1:
            raise GraphError("path needs n >= 1")
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "cycle":
        (n,) = _int_params(params, 1)
        if n < 3:
            raise GraphError("cycle needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "complete":
        (n,) = _int_params(params, 1)
        if n < 0:
            raise GraphError("complete needs n >= 0")
        return Graph.from_edges(n, list(itertools.combinations(range(n), 2)))
    if kind == "complete_bipartite":
        a, b = _int_params(params, 2)
        if a < 0 or b < 0:
            raise GraphError("complete_bipartite needs sides >= 0")
        return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    if kind == "hypercube":
        (d,) = _int_params(params, 1)
        if d < 0:
            raise GraphError("hypercube needs dimension >= 0")
        n = 1 << d
        edges = [(u, u ^ (1 << b)) for u in range(n) for b in range(d) if u < u ^ (1 << b)]
        return Graph.from_edges(n, edges)
    if kind == "random_bounded_degree":
        if len(params) != 3:
            raise GraphError("random_bounded_degree needs (n, max_deg, p_edge)")
        n, bound = int(params[0]), int(params[1])
        p = float(params[2])
        if n < 0:
            raise GraphError("random_bounded_degree needs n >= 0")
        if bound < 0:
            raise GraphError("degree bound must be >= 0")
        if not (0.0 <= p <= 1.0):
            raise GraphError("p_edge must lie in [0, 1]")
        rng = random.Random(0 if seed is None else seed)
        deg = [0] * n
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p and deg[u] < bound and deg[v] < bound:
                    deg[u] += 1
                    deg[v] += 1
                    edges.append((u, v))
        return Graph.from_edges(n, edges)
    raise GraphError(f"unknown generator kind {kind!r}")


def _int_params(params: Sequence, count: int) -> tuple[int, ...]:
    if len(params) != count:
        raise GraphError(f"expected {count} parameter(s), got {len(params)}")
    return tuple(int(p) for p in params)


# ---------------------------------------------------------------------------
# Canonical form.
#
# Lexicographically minimal "new row" encoding of the adjacency matrix over
# all vertex orders whose degree sequence is non-decreasing: row k holds the
# bits from vertex k to vertices 0..k-1. Branch-and-bound on the shared
# prefix keeps this practical for the sparse graphs this package enumerates.


def canonical_form(graph: Graph) -> bytes:
    """Isomorphism-invariant byte string; equal iff graphs are isomorphic.

    Supported up to 12 vertices.
    """
    n = graph.n
    if n > CANONICAL_MAX_VERTICES:
        raise SizeLimitError(f"canonical_form supports n <= {CANONICAL_MAX_VERTICES}, got {n}")
    if n == 0:
        return bytes([0])
    masks = graph.adjacency_masks()
    degs = [graph.degree(v) for v in range(n)]
    target = sorted(degs)

    # Complete/edgeless rows are forced; skip the search.
    if graph.edge_count in (0, n * (n - 1) // 2):
        rows = [((1 << k) - 1) if graph.edge_count else 0 for k in range(n)]
        return _pack_rows(n, rows[1:])

    best: list[int] | None = None
    by_degree: dict[int, list[int]] = {}
    for v in range(n):
        by_degree.setdefault(degs[v], []).append(v)

    order: list[int] = []
    rows: list[int] = []

    def extend(k: int) -> None:
        nonlocal best
        if k == n:
            if best is None or rows < best:
                best = rows.copy()
            return
        want = target[k]
        cands = []
        for v in by_degree[want]:
            if v in order:
                continue
            row = 0
            for j, u in enumerate(order):
                if masks[v] >> u & 1:
                    row |= 1 << j
            cands.append((row, v))
        cands.sort()
        for row, v in cands:
            rows.append(row)
            # Prune any branch whose emitted prefix already exceeds the best.
            if best is None or rows <= best[: len(rows)]:
                order.append(v)
                extend(k + 1)
                order.pop()
            rows.pop()

    # Position 0 contributes no row, so every minimum-degree vertex starts.
    for v in by_degree[target[0]]:
        order.append(v)
        extend(1)
        order.pop()
    assert best is not None
    return _pack_rows(n, best)


def _pack_rows(n: int, rows: list[int]) -> bytes:
    bits: list[int] = []
    for k, row in enumerate(rows, start=1):
        bits.extend((row >> j) & 1 for j in range(k))
    out = bytearray([n])
    for i in range(0, len(bits), 8):
        byte = 0
        for j, b in enumerate(bits[i : i + 8]):
            byte |= b << j
        out.append(byte)
    return bytes(out)


# ---------------------------------------------------------------------------
# Enumeration of connected bipartite graphs by edge count.


def enumerate_connected_bipartite(max_edges: int) -> Iterator[Graph]:
    """One representative per isomorphism class of connected bipartite
    graphs with 1..max_edges edges and no isolated vertices.

    Grown by edge extension: every such graph with e+1 edges arises from one
    with e edges by adding an edge between existing vertices (pick any cycle
    edge to undo) or attaching a new leaf (undo at a deepest leaf), so the
    closure is complete. Supported up to 9 edges.
    """
    if max_edges < 1:
        raise GraphError("max_edges must be >= 1")
    if max_edges > ENUMERATION_MAX_EDGES:
        raise SizeLimitError(
            f"enumeration supports max_edges <= {ENUMERATION_MAX_EDGES}, got {max_edges}"
        )
    level: dict[bytes, Graph] = {}
    k2 = Graph.from_edges(2, [(0, 1)])
    level[canonical_form(k2)] = k2
    for graph in sorted(level.values(), key=canonical_form):
        yield graph
    for _ in range(1, max_edges):
        nxt: dict[bytes, Graph] = {}
        for graph in level.values():
            for cand in _one_edge_extensions(graph):
                if bipartition(cand) is None:
                    continue
                key = canonical_form(cand)
                if key not in nxt:
                    nxt[key] = cand
        level = nxt
        for key in sorted(level):
            yield level[key]


def _one_edge_extensions(graph: Graph) -> Iterator[Graph]:
    n = graph.n
    edges = graph.edges()
    for u in range(n):
        for v in range(u + 1, n):
            if not graph.has_edge(u, v):
                yield Graph.from_edges(n, edges + [(u, v)])
    for u in range(n):
        yield Graph.from_edges(n + 1, edges + [(u, n)])


# ---------------------------------------------------------------------------
# Bicolored structure shared by detection and verification.


def colored_cross_components(
    graph: Graph, assignment: Sequence[int]
) -> dict[tuple[int, int], list[tuple[tuple[int, ...], int]]]:
    """For each color pair (a, b) with at least one crossing edge: connected
    components of the crossing-edge subgraph, as (sorted vertices, edge
    count), ordered by smallest member.

    Works on improper assignments too; equal-colored edges are simply not
    crossing edges. Vertices with no incident crossing edge for a pair are
    not listed (they form edgeless singletons).
    """
    pair_edges: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for u, v in graph.edges():
        a, b = assignment[u], assignment[v]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        pair_edges.setdefault(key, []).append((u, v))
    out: dict[tuple[int, int], list[tuple[tuple[int, ...], int]]] = {}
    for key in sorted(pair_edges):
        edges = pair_edges[key]
        parent: dict[int, int] = {}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in edges:
            parent.setdefault(u, u)
            parent.setdefault(v, v)
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        members: dict[int, list[int]] = {}
        counts: dict[int, int] = {}
        for x in parent:
            members.setdefault(find(x), []).append(x)
        for u, v in edges:
            r = find(u)
            counts[r] = counts.get(r, 0) + 1
        comps = [(tuple(sorted(vs)), counts[r]) for r, vs in members.items()]
        comps.sort()
        out[key] = comps
    return out
