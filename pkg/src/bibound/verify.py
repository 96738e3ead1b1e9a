"""Checks on finished colorings: properness, bicolored component sizes, and
the structural consequences small components buy (star/acyclic/planar/
treewidth), plus exact small-graph oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graphs import (
    Coloring,
    Graph,
    GraphError,
    SizeLimitError,
    colored_cross_components,
    connected_components,
    induced_subgraph,
)

TREEWIDTH_MAX_VERTICES = 15
STRUCTURE_PLANAR_MAX_COMPONENT = 12
ORACLE_MAX_VERTICES = 10

STRUCTURE_PROPERTIES = ("star", "acyclic", "planar")


class ImproperColoringError(GraphError):
    """Raised where a proper coloring is a precondition."""


@dataclass(frozen=True)
class BicoloredStats:
    """Per color pair, the components of the two-colored subgraph."""

    # (a, b) -> [(sorted vertices, edge count), ...] ordered by smallest member
    pairs: dict[tuple[int, int], list[tuple[tuple[int, ...], int]]]
    max_edges: int
    # pair and component attaining max_edges; None on graphs with no edges
    worst: tuple[int, int, tuple[int, ...]] | None


@dataclass(frozen=True)
class VerificationReport:
    proper: bool
    monochromatic_edges: tuple[tuple[int, int], ...]
    m: int | None = None
    max_component_edges: int | None = None
    m_bounded: bool | None = None
    worst: tuple[int, int, tuple[int, ...]] | None = None
    structural: dict[str, tuple[bool, object]] = field(default_factory=dict)

    def ok(self) -> bool:
        if not self.proper:
            return False
        if self.m_bounded is False:
            return False
        return all(result for result, _ in self.structural.values())


def check_proper(graph: Graph, coloring: Coloring) -> list[tuple[int, int]]:
    """Equal-colored edges in lexicographic order; empty iff proper."""
    _check_sizes(graph, coloring)
    colors = coloring.assignment
    return [(u, v) for u, v in graph.edges() if colors[u] == colors[v]]


def bicolored_component_stats(graph: Graph, coloring: Coloring) -> BicoloredStats:
    """Components of every two-color subgraph of a proper coloring.

    For each unordered color pair with at least one crossing edge, the
    connected components of the subgraph induced by vertices of those two
    colors, including single vertices with no crossing edge.
    """
    mono = check_proper(graph, coloring)
    if mono:
        raise ImproperColoringError(
            f"coloring is improper ({len(mono)} equal-colored edges); run check_proper"
        )
    colors = coloring.assignment
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    cross = colored_cross_components(graph, colors)
    pairs: dict[tuple[int, int], list[tuple[tuple[int, ...], int]]] = {}
    max_edges = 0
    worst: tuple[int, int, tuple[int, ...]] | None = None
    for (a, b), comps in cross.items():
        covered: set[int] = set()
        full = list(comps)
        for vs, _ in comps:
            covered.update(vs)
        # Proper coloring: a vertex of color a or b not on a crossing edge
        # of this pair has no neighbor of the other color, so it is a
        # singleton component of the induced two-color subgraph.
        for v in classes.get(a, []) + classes.get(b, []):
            if v not in covered:
                full.append(((v,), 0))
        full.sort()
        pairs[(a, b)] = full
        for vs, ec in comps:
            if ec > max_edges:
                max_edges = ec
                worst = (a, b, vs)
    return BicoloredStats(pairs=pairs, max_edges=max_edges, worst=worst)


def check_m_bounded(
    graph: Graph, coloring: Coloring, m: int
) -> tuple[bool, tuple[int, int, tuple[int, ...]] | None]:
    """Does every bicolored component stay within m edges? Returns the
    verdict and, when it fails, the offending (color a, color b, vertices)."""
    if m < 1:
        raise GraphError("m must be >= 1")
    stats = bicolored_component_stats(graph, coloring)
    if stats.max_edges <= m:
        return True, None
    return False, stats.worst


def check_structure(
    graph: Graph, coloring: Coloring, property_name: str
) -> tuple[bool, object | None]:
    """Check a structural property of every bicolored component.

    property_name: "star" (some vertex on every component edge), "acyclic"
    (components are trees), "planar" (no K5/K33 minor; components up to 12
    vertices), or "treewidth:k" (exact, components up to 15 vertices).
    Returns (holds, witness) with the first failing component as witness.
    """
    kind, _, arg = property_name.partition(":")
    if kind == "treewidth":
        if not arg.isdigit():
            raise GraphError(f"treewidth bound missing in {property_name!r}")
        bound = int(arg)
    elif kind in STRUCTURE_PROPERTIES and not arg:
        bound = -1
    else:
        raise GraphError(f"unknown structural property {property_name!r}")

    stats = bicolored_component_stats(graph, coloring)
    for (a, b) in sorted(stats.pairs):
        for vs, edge_count in stats.pairs[(a, b)]:
            if len(vs) == 1:
                continue
            sub, _ = induced_subgraph(graph, vs)
            if kind == "star":
                degrees = [sub.degree(v) for v in range(sub.n)]
                if max(degrees) != sub.edge_count:
                    return False, (a, b, vs)
            elif kind == "acyclic":
                if edge_count != len(vs) - 1:
                    return False, (a, b, vs)
            elif kind == "planar":
                if len(vs) > STRUCTURE_PLANAR_MAX_COMPONENT:
                    raise SizeLimitError(
                        f"planarity check supports components up to "
                        f"{STRUCTURE_PLANAR_MAX_COMPONENT} vertices, got {len(vs)}"
                    )
                from .minors import has_minor, obstruction

                if has_minor(sub, obstruction("k5").graph) or has_minor(
                    sub, obstruction("k33").graph
                ):
                    return False, (a, b, vs)
            else:
                if len(vs) > TREEWIDTH_MAX_VERTICES:
                    raise SizeLimitError(
                        f"treewidth check supports components up to "
                        f"{TREEWIDTH_MAX_VERTICES} vertices, got {len(vs)}"
                    )
                if treewidth_exact(sub) > bound:
                    return False, (a, b, vs)
    return True, None


def treewidth_exact(graph: Graph) -> int:
    """Exact treewidth by dynamic programming over vertex subsets.

    f(S) = min over v in S of max(f(S minus v), q(S, v)) where q(S, v)
    counts vertices outside S reachable from v through S; the treewidth is
    f(V). Single vertices and the empty graph have treewidth 0. Supported
    up to 15 vertices.
    """
    n = graph.n
    if n > TREEWIDTH_MAX_VERTICES:
        raise SizeLimitError(f"treewidth_exact supports n <= {TREEWIDTH_MAX_VERTICES}, got {n}")
    if n == 0:
        return 0
    masks = graph.adjacency_masks()
    full = (1 << n) - 1
    f = [0] * (full + 1)
    # Subsets in increasing popcount order so f(S minus v) is ready.
    subsets = sorted(range(1, full + 1), key=lambda s: s.bit_count())
    for s in subsets:
        best = n  # upper bound: eliminating into a clique of everything
        rest = s
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            prev = f[s & ~(1 << v)]
            if prev >= best:
                continue
            q = _reach_outside(masks, s, v)
            width = prev if prev > q else q
            if width < best:
                best = width
        f[s] = best
    return f[full]


def _reach_outside(masks: list[int], s: int, v: int) -> int:
    """Count vertices outside S reachable from v in S via vertices of S."""
    comp = 1 << v
    frontier = comp
    while frontier:
        grown = 0
        rest = frontier
        while rest:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            grown |= masks[u]
        frontier = (grown & s) & ~comp
        comp |= frontier
    boundary = 0
    rest = comp
    while rest:
        u = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        boundary |= masks[u]
    return (boundary & ~s).bit_count()


def search_coloring(graph: Graph, m: int, palette: int) -> Coloring | None:
    """Exhaustive search for a proper coloring with every bicolored
    component within m edges, using at most `palette` colors.

    Color patterns are enumerated canonically (vertex 0 gets color 0, each
    new color is introduced in increasing order), so each partition into
    color classes is tried once. Supported up to 10 vertices.
    """
    n = graph.n
    if n > ORACLE_MAX_VERTICES:
        raise SizeLimitError(f"exhaustive oracle supports n <= {ORACLE_MAX_VERTICES}, got {n}")
    if m < 1:
        raise GraphError("m must be >= 1")
    if palette < 1:
        return None
    if n == 0:
        return Coloring(palette, ())
    assignment = [0] * n

    def place(v: int, used: int) -> Coloring | None:
        if v == n:
            cand = Coloring(palette, tuple(assignment))
            ok, _ = check_m_bounded(graph, cand, m)
            return cand if ok else None
        limit = min(used + 1, palette)
        for c in range(limit):
            if any(w < v and assignment[w] == c for w in graph.neighbors(v)):
                continue
            assignment[v] = c
            got = place(v + 1, max(used, c + 1))
            if got is not None:
                return got
        return None

    return place(0, 0)


def brute_force_min_colors(graph: Graph, m: int) -> int:
    """Smallest palette size admitting a proper coloring with all bicolored
    components within m edges. Supported up to 10 vertices."""
    if graph.n == 0:
        return 1
    for palette in range(1, graph.n + 1):
        if search_coloring(graph, m, palette) is not None:
            return palette
    raise AssertionError("palette of n colors always works")


def build_report(
    graph: Graph,
    coloring: Coloring,
    m: int | None = None,
    checks: Sequence[str] = (),
) -> VerificationReport:
    """Assemble the full verification report used by the CLI."""
    mono = tuple(check_proper(graph, coloring))
    if mono:
        return VerificationReport(proper=False, monochromatic_edges=mono, m=m)
    stats = bicolored_component_stats(graph, coloring)
    m_bounded = None if m is None else stats.max_edges <= m
    structural = {}
    for prop in checks:
        structural[prop] = check_structure(graph, coloring, prop)
    return VerificationReport(
        proper=True,
        monochromatic_edges=(),
        m=m,
        max_component_edges=stats.max_edges,
        m_bounded=m_bounded,
        worst=stats.worst,
        structural=structural,
    )


def _check_sizes(graph: Graph, coloring: Coloring) -> None:
    if len(coloring.assignment) != graph.n:
        raise GraphError(
            f"coloring covers {len(coloring.assignment)} vertices, graph has {graph.n}"
        )
