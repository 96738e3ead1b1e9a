"""Minor containment for small graphs, vertex splitting, and named claims.

The minor search branches on delete-edge / contract-edge / drop-isolated
moves down to an isomorphism base case, memoizing refuted subproblems by
canonical form. Hosts up to 14 vertices, patterns up to 8; the built-in
claim checks stay far inside those limits.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .graphs import (
    Graph,
    GraphError,
    SizeLimitError,
    bipartition,
    canonical_form,
    connected_components,
    enumerate_connected_bipartite,
)
from .verify import treewidth_exact

MINOR_HOST_MAX_VERTICES = 14
MINOR_PATTERN_MAX_VERTICES = 8
SPLIT_MAX_VERTICES = 8
MEMO_MAX_ENTRIES = 10**6

CLAIM_IDS = (
    "k4_bipartite_min_8",
    "k33_min_nonplanar",
    "k5_splits_have_triangle",
    "fig2_k5_minor",
    "obstructions_treewidth_4",
)


@dataclass(frozen=True)
class NamedGraph:
    name: str
    graph: Graph
    expected_edges: int
    expected_bipartite: bool

    def __post_init__(self):
        if self.graph.edge_count != self.expected_edges:
            raise GraphError(
                f"{self.name}: has {self.graph.edge_count} edges, "
                f"expected {self.expected_edges}"
            )
        if (bipartition(self.graph) is not None) != self.expected_bipartite:
            raise GraphError(f"{self.name}: bipartiteness mismatch")


@dataclass(frozen=True)
class MinorModel:
    """Branch sets indexed by pattern vertex, plus the move sequence that
    found them. Moves are (kind, ...) in the coordinates of the graph they
    were applied to, so the sequence replays from the original host."""

    branch_sets: tuple[tuple[int, ...], ...]
    operations: tuple[tuple, ...]


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    verdict: bool
    classes_enumerated: int
    seconds: float
    details: dict
    witnesses: tuple[Graph, ...] = ()


def obstruction(name: str) -> NamedGraph:
    """Named small graphs used by the structural claims.

    k5, k33, octahedron (complete tripartite 2+2+2), wagner (an 8-cycle
    with the four long chords), pentagonal_prism (two 5-cycles joined by a
    matching), and fig2 (a 13-edge bipartite graph on 8 vertices carrying
    a K5 minor; vertices 5, 6, 7 are the degree-2/3 attachment points).
    """
    if name == "k5":
        return NamedGraph(
            name, Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)]), 10, False
        )
    if name == "k33":
        return NamedGraph(
            name, Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)]), 9, True
        )
    if name == "octahedron":
        pairs = [(0, 1), (2, 3), (4, 5)]
        edges = [
            (i, j)
            for i in range(6)
            for j in range(i + 1, 6)
            if (min(i, j), max(i, j)) not in pairs
        ]
        return NamedGraph(name, Graph.from_edges(6, edges), 12, False)
    if name == "wagner":
        edges = [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)]
        return NamedGraph(name, Graph.from_edges(8, edges), 12, False)
    if name == "pentagonal_prism":
        edges = (
            [(i, (i + 1) % 5) for i in range(5)]
            + [(5 + i, 5 + (i + 1) % 5) for i in range(5)]
            + [(i, 5 + i) for i in range(5)]
        )
        return NamedGraph(name, Graph.from_edges(10, edges), 15, False)
    if name == "fig2":
        edges = [
            (1, 5), (0, 5), (3, 5),
            (0, 2), (0, 4), (1, 2), (1, 4), (2, 3), (3, 4),
            (0, 6), (3, 6),
            (2, 7), (4, 7),
        ]
        return NamedGraph(name, Graph.from_edges(8, edges), 13, True)
    raise GraphError(f"unknown obstruction {name!r}")


# ---------------------------------------------------------------------------
# Minor search.


def has_minor(graph: Graph, h: Graph) -> bool:
    return find_minor_model(graph, h) is not None


def find_minor_model(graph: Graph, h: Graph) -> MinorModel | None:
    """Branch sets witnessing h as a minor of graph, or None.

    Branches over contracting or deleting each edge, plus dropping one
    isolated vertex when the host has spare vertices; the base case is an
    isomorphism match. Refuted hosts are memoized by canonical form.
    Sound and complete: any model either leaves some edge deletable,
    contains a contractible branch-set edge, or strands an isolated vertex,
    unless host and pattern already coincide.
    """
    if graph.n > MINOR_HOST_MAX_VERTICES:
        raise SizeLimitError(
            f"minor search supports hosts up to {MINOR_HOST_MAX_VERTICES} "
            f"vertices, got {graph.n}"
        )
    if h.n > MINOR_PATTERN_MAX_VERTICES:
        raise SizeLimitError(
            f"minor search supports patterns up to {MINOR_PATTERN_MAX_VERTICES} "
            f"vertices, got {h.n}"
        )
    if h.n == 0:
        return MinorModel(branch_sets=(), operations=())
    state = _SearchState(h=h, h_connected=len(connected_components(h)) == 1)
    groups = tuple((v,) for v in range(graph.n))
    return _search(graph, groups, (), state)


class _SearchState:
    __slots__ = ("h", "h_connected", "h_degrees", "refuted")

    def __init__(self, h: Graph, h_connected: bool):
        self.h = h
        self.h_connected = h_connected
        self.h_degrees = sorted(h.degree(v) for v in range(h.n))
        self.refuted: set[bytes] = set()


def _search(g: Graph, groups, ops, state: _SearchState) -> MinorModel | None:
    h = state.h
    if g.n < h.n or g.edge_count < h.edge_count:
        return None
    if state.h_connected and g.n > h.n:
        # A connected pattern must land inside one component.
        if not any(
            len(c) >= h.n and _component_edges(g, c) >= h.edge_count
            for c in connected_components(g)
        ):
            return None
    if g.n == h.n and sorted(g.degree(v) for v in range(g.n)) == state.h_degrees:
        iso = _find_isomorphism(g, h)
        if iso is not None:
            sets = [()] * h.n
            for gv, hv in enumerate(iso):
                sets[hv] = groups[gv]
            return MinorModel(branch_sets=tuple(sets), operations=ops)

    key = None
    if g.n <= 12:
        key = canonical_form(g)
        if key in state.refuted:
            return None

    contract_first = g.n > h.n
    for u, v in g.edges():
        moves = (("contract", u, v), ("delete_edge", u, v))
        if not contract_first:
            moves = moves[::-1]
        for move in moves:
            kind = move[0]
            if kind == "contract":
                if g.n == h.n:
                    continue
                child, child_groups = _contract(g, groups, u, v)
            else:
                child, child_groups = Graph.from_edges(
                    g.n, [e for e in g.edges() if e != (u, v)]
                ), groups
            found = _search(child, child_groups, ops + (move,), state)
            if found is not None:
                return found
    if g.n > h.n:
        for w in range(g.n):
            if g.degree(w) == 0:
                # All isolated vertices are interchangeable; one try suffices.
                child, child_groups = _delete_vertex(g, groups, w)
                found = _search(child, child_groups, ops + (("delete_vertex", w),), state)
                if found is not None:
                    return found
                break
    if key is not None:
        if len(state.refuted) >= MEMO_MAX_ENTRIES:
            state.refuted.clear()
        state.refuted.add(key)
    return None


def _component_edges(g: Graph, comp) -> int:
    cs = set(comp)
    return sum(1 for u, v in g.edges() if u in cs)


def _contract(g: Graph, groups, u: int, v: int):
    """Merge v into u and relabel to 0..n-2."""
    remap = {}
    for w in range(g.n):
        if w == v:
            continue
        remap[w] = len(remap)
    remap[v] = remap[u]
    edges = set()
    for a, b in g.edges():
        x, y = remap[a], remap[b]
        if x != y:
            edges.add((min(x, y), max(x, y)))
    new_groups = [None] * (g.n - 1)
    for w in range(g.n):
        if w == v:
            continue
        new_groups[remap[w]] = groups[w]
    new_groups[remap[u]] = tuple(sorted(groups[u] + groups[v]))
    return Graph.from_edges(g.n - 1, sorted(edges)), tuple(new_groups)


def _delete_vertex(g: Graph, groups, w: int):
    remap = {x: (x if x < w else x - 1) for x in range(g.n) if x != w}
    edges = [(remap[a], remap[b]) for a, b in g.edges() if a != w and b != w]
    new_groups = tuple(groups[x] for x in range(g.n) if x != w)
    return Graph.from_edges(g.n - 1, edges), new_groups


def _find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """Bijection g-vertex -> h-vertex preserving adjacency exactly, via
    backtracking with degree filtering. Assumes equal n and edge counts."""
    n = g.n
    gm = g.adjacency_masks()
    hm = h.adjacency_masks()
    gdeg = [g.degree(v) for v in range(n)]
    hdeg = [h.degree(v) for v in range(n)]
    # Assign g-vertices in order of rarest degree first.
    order = sorted(range(n), key=lambda v: (sum(1 for d in gdeg if d == gdeg[v]), -gdeg[v]))
    mapping = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        gv = order[i]
        for hv in range(n):
            if used[hv] or hdeg[hv] != gdeg[gv]:
                continue
            ok = True
            for prev in order[:i]:
                adj_g = bool(gm[gv] >> prev & 1)
                adj_h = bool(hm[hv] >> mapping[prev] & 1)
                if adj_g != adj_h:
                    ok = False
                    break
            if ok:
                mapping[gv] = hv
                used[hv] = True
                if extend(i + 1):
                    return True
                mapping[gv] = -1
                used[hv] = False
        return False

    return mapping if extend(0) else None


def validate_minor_model(graph: Graph, h: Graph, model: MinorModel) -> bool:
    """Sound check: disjoint nonempty connected branch sets, one per
    pattern vertex, with every pattern edge realized."""
    sets = model.branch_sets
    if len(sets) != h.n:
        return False
    seen: set[int] = set()
    for bs in sets:
        if not bs:
            return False
        for v in bs:
            if not (0 <= v < graph.n) or v in seen:
                return False
            seen.add(v)
        if not _connected_within(graph, set(bs)):
            return False
    for a, b in h.edges():
        if not any(
            graph.has_edge(x, y) if x < y else graph.has_edge(y, x)
            for x in sets[a]
            for y in sets[b]
            if x != y
        ):
            return False
    return True


def _connected_within(g: Graph, vs: set[int]) -> bool:
    start = next(iter(vs))
    stack = [start]
    seen = {start}
    while stack:
        u = stack.pop()
        for w in g.neighbors(u):
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs


# ---------------------------------------------------------------------------
# Vertex splitting.


def split_vertex(graph: Graph, v: int, keep_part) -> Graph:
    """Replace v by adjacent vertices v and n, distributing N(v): keep_part
    stays on v, the rest moves to the new vertex. Inverse of contracting
    the new edge."""
    keep = set(keep_part)
    nbrs = set(graph.neighbors(v))
    if not keep <= nbrs:
        raise GraphError("keep_part must be a subset of the split vertex's neighbors")
    edges = []
    for a, b in graph.edges():
        if v not in (a, b):
            edges.append((a, b))
            continue
        other = b if a == v else a
        if other in keep:
            edges.append((min(v, other), max(v, other)))
        else:
            edges.append((other, graph.n))
    edges.append((v, graph.n))
    return Graph.from_edges(graph.n + 1, edges)


def enumerate_splits(graph: Graph, max_splits: int) -> list[Graph]:
    """Every graph reachable by at most max_splits vertex splits, up to
    isomorphism, the unsplit graph included. max_splits in {0, 1, 2}."""
    if max_splits not in (0, 1, 2):
        raise GraphError("max_splits must be 0, 1, or 2")
    if graph.n > SPLIT_MAX_VERTICES:
        raise SizeLimitError(
            f"split enumeration supports up to {SPLIT_MAX_VERTICES} vertices"
        )
    seen: dict[bytes, Graph] = {canonical_form(graph): graph}
    frontier = [graph]
    for _ in range(max_splits):
        grown = []
        for g in frontier:
            for v in range(g.n):
                nbrs = list(g.neighbors(v))
                for mask in range(1 << len(nbrs)):
                    keep = [nbrs[i] for i in range(len(nbrs)) if mask >> i & 1]
                    child = split_vertex(g, v, keep)
                    key = canonical_form(child)
                    if key not in seen:
                        seen[key] = child
                        grown.append(child)
        frontier = grown
    return [seen[k] for k in sorted(seen)]


def contains_triangle(graph: Graph) -> bool:
    masks = graph.adjacency_masks()
    return any(masks[u] & masks[v] for u, v in graph.edges())


# ---------------------------------------------------------------------------
# Claim checks.


def verify_claim(claim: str) -> ClaimResult:
    """Machine checks for the named structural claims; see CLAIM_IDS."""
    start = time.monotonic()
    if claim == "k4_bipartite_min_8":
        k4 = Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
        classes = list(enumerate_connected_bipartite(8))
        witness = None
        below = 0
        for g in classes:
            if g.edge_count <= 7:
                if has_minor(g, k4):
                    below += 1
            elif witness is None and has_minor(g, k4):
                witness = g
        verdict = below == 0 and witness is not None
        return ClaimResult(
            claim,
            verdict,
            classes_enumerated=len(classes),
            seconds=time.monotonic() - start,
            details={"k4_minors_with_at_most_7_edges": below, "threshold": 8},
            witnesses=(witness,) if witness else (),
        )
    if claim == "k33_min_nonplanar":
        k5 = obstruction("k5").graph
        k33 = obstruction("k33").graph
        classes = list(enumerate_connected_bipartite(8))
        bad = sum(1 for g in classes if has_minor(g, k5) or has_minor(g, k33))
        self_minor = has_minor(k33, k33)
        verdict = bad == 0 and self_minor and k33.edge_count == 9
        return ClaimResult(
            claim,
            verdict,
            classes_enumerated=len(classes),
            seconds=time.monotonic() - start,
            details={
                "nonplanar_with_at_most_8_edges": bad,
                "k33_edges": k33.edge_count,
                "threshold": 9,
            },
            witnesses=(k33,),
        )
    if claim == "k5_splits_have_triangle":
        k5 = obstruction("k5").graph
        results = enumerate_splits(k5, 2)
        no_triangle = [g for g in results if not contains_triangle(g)]
        bipartite = [g for g in results if bipartition(g) is not None]
        verdict = not no_triangle and not bipartite
        return ClaimResult(
            claim,
            verdict,
            classes_enumerated=len(results),
            seconds=time.monotonic() - start,
            details={
                "triangle_free_results": len(no_triangle),
                "bipartite_results": len(bipartite),
            },
        )
    if claim == "fig2_k5_minor":
        named = obstruction("fig2")
        k5 = obstruction("k5").graph
        model = find_minor_model(named.graph, k5)
        verdict = (
            named.graph.edge_count == 13
            and bipartition(named.graph) is not None
            and model is not None
            and validate_minor_model(named.graph, k5, model)
        )
        return ClaimResult(
            claim,
            verdict,
            classes_enumerated=1,
            seconds=time.monotonic() - start,
            details={
                "edges": named.graph.edge_count,
                "bipartite": bipartition(named.graph) is not None,
                "branch_sets": model.branch_sets if model else None,
            },
            witnesses=(named.graph,),
        )
    if claim == "obstructions_treewidth_4":
        widths = {}
        for name in ("k5", "octahedron", "wagner", "pentagonal_prism"):
            widths[name] = treewidth_exact(obstruction(name).graph)
        verdict = all(w == 4 for w in widths.values())
        return ClaimResult(
            claim,
            verdict,
            classes_enumerated=4,
            seconds=time.monotonic() - start,
            details={"treewidths": widths},
        )
    raise GraphError(f"unknown claim {claim!r}")
