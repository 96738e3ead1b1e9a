"""Bad events over a colored graph and witnesses for them.

Three witness kinds drive the resampling loop: an equal-colored edge, a
monochromatic special tuple (vertices with an unusually large common
neighborhood), and a small vertex set carrying too many properly-bicolored
edges. Detection is deterministic: edges in lexicographic order, then
tuples, then vertex-set witnesses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .graphs import (
    Coloring,
    Graph,
    GraphError,
    SizeLimitError,
    colored_cross_components,
)

# Exhaustive tuple enumeration is supported for m <= 4 or max degree <= 8;
# beyond that callers fall back to violation_driven detection.
TUPLE_ENUM_MAX_M = 4
TUPLE_ENUM_MAX_DEGREE = 8

DETECTION_MODES = ("faithful", "violation_driven")


@dataclass(frozen=True)
class SpecialTuple:
    """t distinct vertices whose common neighborhood is large enough that
    coloring them alike must be treated as a violation.

    Speciality for parameter m: common_count**m >= max_degree**(m-t+1),
    with at least one common neighbor required. Integer arithmetic only.
    """

    t: int
    vertices: tuple[int, ...]
    common_count: int

    def __post_init__(self):
        if self.t != len(self.vertices):
            raise GraphError("tuple arity disagrees with vertex count")
        if list(self.vertices) != sorted(set(self.vertices)):
            raise GraphError("tuple vertices must be sorted and distinct")


@dataclass(frozen=True)
class MonoEdge:
    """Edge whose endpoints share a color."""

    u: int
    v: int

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.u, self.v)


@dataclass(frozen=True)
class MonoTuple:
    """Special tuple colored monochromatically."""

    tuple_: SpecialTuple
    color: int

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.tuple_.vertices


@dataclass(frozen=True)
class KVertexSet:
    """Connected vertex set A, |A| <= m+2, carrying m+1 bicolored edges.

    spanning_edges are edges of the graph inside A, connected and touching
    every vertex of A; the induced subgraph on A is bipartite.
    """

    vertices: tuple[int, ...]
    spanning_edges: tuple[tuple[int, int], ...]


BadEventWitness = MonoEdge | MonoTuple | KVertexSet


def is_special_tuple(graph: Graph, vertices: Sequence[int], m: int) -> tuple[bool, int]:
    """Exact speciality test; returns (special, common neighbor count).

    Requires 2 <= len(vertices) <= m. The comparison is done in integer
    arithmetic as common_count**m >= max_degree**(m-t+1); a tuple with no
    common neighbor is never special (only relevant to edgeless graphs,
    where the threshold would degenerate to 0 >= 0).
    """
    t = len(vertices)
    if m < 2 or t < 2 or t > m:
        raise GraphError(f"tuple arity {t} outside 2..m (m={m})")
    vs = sorted(set(vertices))
    if len(vs) != t:
        raise GraphError("tuple vertices must be distinct")
    from .graphs import common_neighbors

    count = len(common_neighbors(graph, vs))
    if count == 0:
        return False, 0
    delta = graph.max_degree()
    return count**m >= delta ** (m - t + 1), count


def enumerate_special_tuples(graph: Graph, m: int) -> list[SpecialTuple]:
    """All special t-tuples for 2 <= t <= m, sorted by vertex tuple.

    Every special tuple has a common neighbor, so candidates are t-subsets
    of single-vertex neighborhoods; common-neighbor counts come from one
    co-occurrence pass per t instead of per-tuple intersections.
    """
    if m < 1:
        raise GraphError("m must be >= 1")
    if m == 1:
        return []
    delta = graph.max_degree()
    if delta <= 1:
        return []
    if m > TUPLE_ENUM_MAX_M and delta > TUPLE_ENUM_MAX_DEGREE:
        raise SizeLimitError(
            f"tuple enumeration supports m <= {TUPLE_ENUM_MAX_M} or "
            f"max degree <= {TUPLE_ENUM_MAX_DEGREE} (got m={m}, degree={delta})"
        )
    out: list[SpecialTuple] = []
    for t in range(2, m + 1):
        threshold = delta ** (m - t + 1)
        counts: dict[tuple[int, ...], int] = {}
        for v in range(graph.n):
            for comb in itertools.combinations(graph.neighbors(v), t):
                counts[comb] = counts.get(comb, 0) + 1
        for tup, c in counts.items():
            if c**m >= threshold:
                out.append(SpecialTuple(t, tup, c))
    out.sort(key=lambda st: st.vertices)
    return out


def detect_bad_events(
    graph: Graph,
    coloring: Coloring,
    m: int,
    mode: str = "faithful",
    special_tuples: Sequence[SpecialTuple] | None = None,
) -> list[BadEventWitness]:
    """Scan a coloring and return every witness the mode calls for.

    faithful: all equal-colored edges, all monochromatic special tuples,
    and one KVertexSet per over-m bicolored component that contains no
    monochromatic special tuple. violation_driven: equal-colored edges and
    one witness per over-m component; tuples are not enumerated.

    In violation_driven mode the result is empty exactly when the coloring
    is proper and every bicolored component has at most m edges. Faithful
    mode implies the same when empty, but may additionally report MonoTuple
    witnesses on colorings that already satisfy the property.
    """
    if mode not in DETECTION_MODES:
        raise GraphError(f"unknown detection mode {mode!r}")
    if m < 1:
        raise GraphError("m must be >= 1")
    if len(coloring.assignment) != graph.n:
        raise GraphError(
            f"coloring covers {len(coloring.assignment)} vertices, graph has {graph.n}"
        )
    colors = coloring.assignment
    witnesses: list[BadEventWitness] = [
        MonoEdge(u, v) for u, v in graph.edges() if colors[u] == colors[v]
    ]
    mono_tuples: list[MonoTuple] = []
    if mode == "faithful":
        if special_tuples is None:
            special_tuples = enumerate_special_tuples(graph, m)
        for st in special_tuples:
            c = colors[st.vertices[0]]
            if all(colors[v] == c for v in st.vertices[1:]):
                mono_tuples.append(MonoTuple(st, c))
        mono_tuples.sort(key=lambda w: w.vertices)
        witnesses.extend(mono_tuples)
    kvertex: list[KVertexSet] = []
    comps = colored_cross_components(graph, colors)
    for pair in comps:
        for comp_vertices, edge_count in comps[pair]:
            if edge_count <= m:
                continue
            comp_set = set(comp_vertices)
            # A component with an equal-colored edge inside is already
            # covered by that edge's witness; its induced subgraph need
            # not be bipartite, so no set witness is built for it.
            if _has_internal_mono_edge(graph, colors, comp_set):
                continue
            if any(set(w.vertices) <= comp_set for w in mono_tuples):
                continue
            witness = extract_component_witness(
                graph, coloring, comp_vertices, m, special_tuples=None
            )
            assert isinstance(witness, KVertexSet)
            kvertex.append(witness)
    kvertex.sort(key=lambda w: w.vertices)
    witnesses.extend(kvertex)
    return witnesses


def _has_internal_mono_edge(graph: Graph, colors: Sequence[int], comp: set[int]) -> bool:
    for u in comp:
        for w in graph.neighbors(u):
            if w > u and w in comp and colors[w] == colors[u]:
                return True
    return False


def extract_component_witness(
    graph: Graph,
    coloring: Coloring,
    component: Sequence[int],
    m: int,
    special_tuples: Sequence[SpecialTuple] | None = None,
) -> BadEventWitness:
    """Witness for one bicolored component with more than m edges.

    The component must use exactly two colors, be properly colored inside,
    and be connected with every vertex on some component edge. The edge set
    is grown deterministically: breadth-first tree edges from the smallest
    vertex id in discovery order, then the remaining induced edges in
    lexicographic order, truncated to m+1 edges. The touched vertex set A
    then has at most m+2 vertices. If special tuples are supplied and A
    contains one colored monochromatically, that MonoTuple is returned
    instead of the set witness.
    """
    colors = coloring.assignment
    comp = sorted(set(component))
    if len(comp) < 2:
        raise GraphError("component must span at least one edge")
    comp_set = set(comp)
    used_colors = {colors[v] for v in comp}
    if len(used_colors) != 2:
        raise GraphError(f"component uses {len(used_colors)} colors, need exactly 2")
    if _has_internal_mono_edge(graph, colors, comp_set):
        raise GraphError("component is not properly colored inside")

    root = comp[0]
    seen = {root}
    queue = [root]
    tree_edges: list[tuple[int, int]] = []
    while queue:
        u = queue.pop(0)
        for w in graph.neighbors(u):
            if w in comp_set and w not in seen:
                seen.add(w)
                tree_edges.append((min(u, w), max(u, w)))
                queue.append(w)
    if seen != comp_set:
        raise GraphError("component is not connected")
    induced = [
        (u, v)
        for u in comp
        for v in graph.neighbors(u)
        if u < v and v in comp_set
    ]
    if len(induced) <= m:
        raise GraphError(f"component has {len(induced)} edges, not more than m={m}")
    chords = sorted(set(induced) - set(tree_edges))
    chosen = (tree_edges + chords)[: m + 1]
    touched = tuple(sorted({x for e in chosen for x in e}))
    if special_tuples is not None:
        touched_set = set(touched)
        for st in sorted(special_tuples, key=lambda s: s.vertices):
            if set(st.vertices) <= touched_set:
                c = colors[st.vertices[0]]
                if all(colors[v] == c for v in st.vertices[1:]):
                    return MonoTuple(st, c)
    return KVertexSet(touched, tuple(chosen))


def check_witness(graph: Graph, coloring: Coloring, witness: BadEventWitness, m: int) -> bool:
    """Soundness check a witness against the coloring it was produced for."""
    colors = coloring.assignment
    if isinstance(witness, MonoEdge):
        return graph.has_edge(witness.u, witness.v) and colors[witness.u] == colors[witness.v]
    if isinstance(witness, MonoTuple):
        st = witness.tuple_
        if m < 2 or not (2 <= st.t <= m):
            return False
        special, count = is_special_tuple(graph, st.vertices, m)
        if not special or count != st.common_count:
            return False
        return all(colors[v] == witness.color for v in st.vertices)
    if isinstance(witness, KVertexSet):
        vs = witness.vertices
        edges = witness.spanning_edges
        if len(edges) != m + 1 or not (3 <= len(vs) <= m + 2):
            return False
        if any(not graph.has_edge(u, v) for u, v in edges):
            return False
        if {x for e in edges for x in e} != set(vs):
            return False
        # Connectivity of the chosen edge set.
        parent = {v: v for v in vs}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in edges:
            parent[find(u)] = find(v)
        if len({find(v) for v in vs}) != 1:
            return False
        # Properly bicolored on the whole induced set, not just chosen edges.
        used = {colors[v] for v in vs}
        if len(used) != 2:
            return False
        vset = set(vs)
        return all(
            colors[u] != colors[v]
            for u in vs
            for v in graph.neighbors(u)
            if u < v and v in vset
        )
    raise GraphError(f"unknown witness type {type(witness).__name__}")
