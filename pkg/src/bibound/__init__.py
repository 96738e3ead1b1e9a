"""Proper colorings whose bicolored connected subgraphs stay small.

The package builds colorings by resampling away violations, certifies the
underlying probabilistic condition exactly on small graphs, verifies
structural consequences (star/acyclic/planar/treewidth), and checks the
supporting minor- and split-based facts about small obstruction graphs.
"""

from .bad_events import (
    KVertexSet,
    MonoEdge,
    MonoTuple,
    SpecialTuple,
    check_witness,
    detect_bad_events,
    enumerate_special_tuples,
    is_special_tuple,
)
from .colorer import (
    CertificateReport,
    InequalityReport,
    LllParameters,
    RunResult,
    Weight,
    asymptotic_inequality_report,
    lll_certificate_exact,
    lll_values,
    moser_tardos,
    palette_size,
)
from .graphs import (
    Coloring,
    Graph,
    GraphError,
    ParseError,
    RNG_ALGORITHM,
    SizeLimitError,
    bipartition,
    canonical_form,
    common_neighbors,
    connected_components,
    enumerate_connected_bipartite,
    generate,
    induced_subgraph,
    max_degree,
    parse_edge_list,
    square_graph,
    write_edge_list,
)
from .minors import (
    CLAIM_IDS,
    ClaimResult,
    MinorModel,
    NamedGraph,
    contains_triangle,
    enumerate_splits,
    find_minor_model,
    has_minor,
    obstruction,
    split_vertex,
    validate_minor_model,
    verify_claim,
)
from .verify import (
    VerificationReport,
    bicolored_component_stats,
    brute_force_min_colors,
    build_report,
    check_m_bounded,
    check_proper,
    check_structure,
    search_coloring,
    treewidth_exact,
)

__all__ = [
    "CLAIM_IDS",
    "CertificateReport",
    "ClaimResult",
    "Coloring",
    "Graph",
    "GraphError",
    "InequalityReport",
    "KVertexSet",
    "LllParameters",
    "MinorModel",
    "MonoEdge",
    "MonoTuple",
    "NamedGraph",
    "ParseError",
    "RNG_ALGORITHM",
    "RunResult",
    "SizeLimitError",
    "SpecialTuple",
    "VerificationReport",
    "Weight",
    "asymptotic_inequality_report",
    "bicolored_component_stats",
    "bipartition",
    "brute_force_min_colors",
    "build_report",
    "canonical_form",
    "check_m_bounded",
    "check_proper",
    "check_structure",
    "check_witness",
    "common_neighbors",
    "connected_components",
    "contains_triangle",
    "detect_bad_events",
    "enumerate_connected_bipartite",
    "enumerate_special_tuples",
    "enumerate_splits",
    "find_minor_model",
    "generate",
    "has_minor",
    "induced_subgraph",
    "is_special_tuple",
    "lll_certificate_exact",
    "lll_values",
    "max_degree",
    "moser_tardos",
    "obstruction",
    "palette_size",
    "parse_edge_list",
    "search_coloring",
    "split_vertex",
    "square_graph",
    "treewidth_exact",
    "validate_minor_model",
    "verify_claim",
    "write_edge_list",
]
