import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bibound.bad_events import (
    KVertexSet,
    MonoEdge,
    MonoTuple,
    SpecialTuple,
    check_witness,
    detect_bad_events,
    enumerate_special_tuples,
    extract_component_witness,
    is_special_tuple,
)
from bibound.graphs import Coloring, Graph, GraphError, SizeLimitError, generate

from oracles import valid_oracle


@st.composite
def colored_graphs(draw):
    n = draw(st.integers(min_value=2, max_value=9))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.integers(min_value=0, max_value=(1 << len(pairs)) - 1))
    g = Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
    s = draw(st.integers(min_value=2, max_value=4))
    assignment = tuple(draw(st.integers(min_value=0, max_value=s - 1)) for _ in range(n))
    m = draw(st.integers(min_value=1, max_value=3))
    return g, Coloring(s, assignment), m


class TestSpeciality:
    def test_k2_16_pairs(self):
        kb = generate("complete_bipartite", [2, 16])
        assert is_special_tuple(kb, [0, 1], 2) == (True, 16)
        assert is_special_tuple(kb, [2, 3], 2) == (False, 2)

    def test_threshold_boundary(self):
        # K_{2,4}: max degree 4, m=2, t=2 threshold is c**2 >= 4, so a
        # common neighborhood of exactly 2 sits right on the boundary
        kb = generate("complete_bipartite", [2, 4])
        assert is_special_tuple(kb, [2, 3], 2) == (True, 2)
        assert is_special_tuple(kb, [0, 1], 2) == (True, 4)

    def test_below_boundary(self):
        # P5 has max degree 2; endpoints of a 2-path share one neighbor,
        # and 1**2 < 2
        p5 = generate("path", [5])
        assert is_special_tuple(p5, [0, 2], 2) == (False, 1)

    def test_no_common_neighbor_never_special(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert is_special_tuple(g, [0, 2], 2) == (False, 0)

    def test_arity_errors(self):
        c4 = generate("cycle", [4])
        with pytest.raises(GraphError):
            is_special_tuple(c4, [0], 2)
        with pytest.raises(GraphError):
            is_special_tuple(c4, [0, 1, 2], 2)  # t=3 > m=2
        with pytest.raises(GraphError):
            is_special_tuple(c4, [0, 1], 1)  # m=1 admits no tuples


class TestTupleEnumeration:
    def test_k2_16(self):
        kb = generate("complete_bipartite", [2, 16])
        tuples = enumerate_special_tuples(kb, 2)
        assert [(t.vertices, t.common_count) for t in tuples] == [((0, 1), 16)]

    def test_k2_4_all_pairs(self):
        kb = generate("complete_bipartite", [2, 4])
        tuples = enumerate_special_tuples(kb, 2)
        # hub pair plus every leaf pair sits at or above the threshold
        assert len(tuples) == 7
        assert tuples[0].vertices == (0, 1)

    def test_m1_and_degree1_empty(self):
        assert enumerate_special_tuples(generate("complete", [5]), 1) == []
        assert enumerate_special_tuples(Graph.from_edges(4, [(0, 1), (2, 3)]), 3) == []

    def test_matches_brute_force(self):
        rng = random.Random(7)
        for _ in range(20):
            n = rng.randrange(3, 9)
            g = generate("random_bounded_degree", [n, 4, 0.6], seed=rng.randrange(999))
            for m in (2, 3):
                got = {(t.t, t.vertices) for t in enumerate_special_tuples(g, m)}
                want = set()
                for t in range(2, m + 1):
                    for vs in itertools.combinations(range(n), t):
                        special, _ = is_special_tuple(g, vs, m)
                        if special:
                            want.add((t, vs))
                assert got == want

    def test_size_limit(self):
        star = generate("complete_bipartite", [1, 9])
        with pytest.raises(SizeLimitError):
            enumerate_special_tuples(star, 5)


class TestDetection:
    def test_proper_distinct_colors_clean(self):
        c4 = generate("cycle", [4])
        col = Coloring(4, (0, 1, 2, 3))
        assert detect_bad_events(c4, col, 2) == []

    def test_mono_edge_first(self):
        g = generate("path", [3])
        col = Coloring(2, (0, 0, 1))
        events = detect_bad_events(g, col, 1)
        assert events[0] == MonoEdge(0, 1)

    def test_c6_alternating_oversized_component(self):
        c6 = generate("cycle", [6])
        col = Coloring(2, (0, 1, 0, 1, 0, 1))
        events = detect_bad_events(c6, col, 2)
        assert len(events) == 1
        (ev,) = events
        assert isinstance(ev, KVertexSet)
        assert len(ev.spanning_edges) == 3  # truncated to m+1

    def test_faithful_reports_mono_tuples(self):
        kb = generate("complete_bipartite", [2, 16])
        # hubs share a color, leaves all different: proper, components tiny,
        # but the special pair {0,1} is monochromatic
        col = Coloring(18, (0, 0) + tuple(range(1, 17)))
        faithful = detect_bad_events(kb, col, 2, mode="faithful")
        assert faithful == [MonoTuple(SpecialTuple(2, (0, 1), 16), 0)]
        assert detect_bad_events(kb, col, 2, mode="violation_driven") == []

    def test_component_with_internal_mono_edge_ineligible(self):
        # path 0-1-2-3 colored 0,1,1,0: edge (1,2) is monochromatic, so the
        # cross-component machinery must not also blame a vertex set that
        # contains that edge
        p4 = generate("path", [4])
        col = Coloring(2, (0, 1, 1, 0))
        events = detect_bad_events(p4, col, 1)
        assert events == [MonoEdge(1, 2)]

    def test_unknown_mode(self):
        with pytest.raises(GraphError):
            detect_bad_events(generate("path", [2]), Coloring(2, (0, 1)), 1, mode="x")

    @given(colored_graphs())
    @settings(max_examples=120, deadline=None)
    def test_empty_iff_valid_in_violation_driven(self, gc):
        g, col, m = gc
        events = detect_bad_events(g, col, m, mode="violation_driven")
        assert (events == []) == valid_oracle(g, col.assignment, m)

    @given(colored_graphs())
    @settings(max_examples=120, deadline=None)
    def test_all_witnesses_check_out(self, gc):
        g, col, m = gc
        for mode in ("faithful", "violation_driven"):
            for ev in detect_bad_events(g, col, m, mode=mode):
                assert check_witness(g, col, ev, m)

    @given(colored_graphs())
    @settings(max_examples=80, deadline=None)
    def test_faithful_extends_violation_driven(self, gc):
        # faithful adds tuple events but never loses property violations
        g, col, m = gc
        vd = detect_bad_events(g, col, m, mode="violation_driven")
        if vd:
            assert detect_bad_events(g, col, m, mode="faithful") != []


class TestWitnessChecking:
    def test_rejects_wrong_color(self):
        g = generate("path", [3])
        col = Coloring(2, (0, 1, 0))
        assert not check_witness(g, col, MonoEdge(0, 1), 1)

    def test_rejects_fake_edge(self):
        g = generate("path", [3])
        col = Coloring(2, (0, 0, 1))
        assert not check_witness(g, col, MonoEdge(0, 2), 1)

    def test_rejects_invalid_tuple_witness(self):
        kb = generate("complete_bipartite", [2, 16])
        col = Coloring(18, (0, 0) + tuple(range(1, 17)))
        good = MonoTuple(SpecialTuple(2, (0, 1), 16), 0)
        assert check_witness(kb, col, good, 2)
        assert not check_witness(kb, col, good, 1)  # m=1 has no tuple events
        bad = MonoTuple(SpecialTuple(2, (2, 3), 2), 1)
        assert not check_witness(kb, col, bad, 2)

    def test_rejects_disconnected_kvertex(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
        col = Coloring(2, (0, 1, 0, 1, 0, 1))
        w = KVertexSet((0, 1, 3), ((0, 1), (3, 4)))
        assert not check_witness(g, col, w, 1)


class TestComponentWitness:
    def test_truncates_to_m_plus_one(self):
        c6 = generate("cycle", [6])
        col = Coloring(2, (0, 1, 0, 1, 0, 1))
        w = extract_component_witness(c6, col, (0, 1, 2, 3, 4, 5), 2)
        assert isinstance(w, KVertexSet)
        assert len(w.spanning_edges) == 3
        assert check_witness(c6, col, w, 2)

    def test_requires_oversize(self):
        p3 = generate("path", [3])
        col = Coloring(2, (0, 1, 0))
        with pytest.raises(GraphError):
            extract_component_witness(p3, col, (0, 1, 2), 2)
