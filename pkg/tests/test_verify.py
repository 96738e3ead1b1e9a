import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bibound.graphs import Coloring, Graph, GraphError, SizeLimitError, generate, square_graph
from bibound.verify import (
    ImproperColoringError,
    bicolored_component_stats,
    brute_force_min_colors,
    build_report,
    check_m_bounded,
    check_proper,
    check_structure,
    search_coloring,
    treewidth_exact,
)

from oracles import (
    connected_graph_classes,
    min_colors_oracle,
    treewidth_oracle,
    valid_oracle,
)


def greedy_proper(g: Graph, seed: int) -> Coloring:
    rng = random.Random(seed)
    order = list(range(g.n))
    rng.shuffle(order)
    colors = [-1] * g.n
    for v in order:
        used = {colors[w] for w in g.neighbors(v)}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return Coloring(max(colors) + 1, tuple(colors))


class TestProperness:
    def test_lists_mono_edges_lex(self):
        g = generate("cycle", [4])
        col = Coloring(2, (0, 0, 1, 1))
        assert check_proper(g, col) == [(0, 1), (2, 3)]

    def test_size_mismatch(self):
        with pytest.raises(GraphError):
            check_proper(generate("path", [3]), Coloring(2, (0, 1)))


class TestComponentStats:
    def test_c4_stats(self):
        c4 = generate("cycle", [4])
        stats = bicolored_component_stats(c4, Coloring(3, (0, 1, 0, 2)))
        assert stats.max_edges == 2
        assert stats.pairs[(0, 1)] == [((0, 1, 2), 2)]
        assert stats.pairs[(0, 2)] == [((0, 2, 3), 2)]

    def test_improper_rejected(self):
        with pytest.raises(ImproperColoringError):
            bicolored_component_stats(generate("path", [2]), Coloring(2, (0, 0)))

    def test_m_bound(self):
        c4 = generate("cycle", [4])
        col = Coloring(3, (0, 1, 0, 2))
        assert check_m_bounded(c4, col, 2) == (True, None)
        ok, worst = check_m_bounded(c4, col, 1)
        assert not ok and worst == (0, 1, (0, 1, 2))

    @given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=3))
    @settings(max_examples=80, deadline=None)
    def test_matches_oracle_on_random_proper(self, seed, m):
        g = generate("random_bounded_degree", [14, 4, 0.5], seed=seed)
        col = greedy_proper(g, seed)
        assert check_m_bounded(g, col, m)[0] == valid_oracle(g, col.assignment, m)


class TestTreewidth:
    def test_examples(self):
        assert treewidth_exact(Graph.from_edges(1, [])) == 0
        assert treewidth_exact(generate("path", [5])) == 1
        assert treewidth_exact(generate("cycle", [5])) == 2
        assert treewidth_exact(generate("complete", [5])) == 4
        assert treewidth_exact(generate("complete_bipartite", [2, 3])) == 2

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            treewidth_exact(Graph.from_edges(16, []))

    def test_matches_permutation_oracle(self):
        for g in connected_graph_classes(6):
            assert treewidth_exact(g) == treewidth_oracle(g)

    def test_matches_oracle_random_n7(self):
        for seed in range(5):
            g = generate("random_bounded_degree", [7, 4, 0.6], seed=seed)
            assert treewidth_exact(g) == treewidth_oracle(g)


class TestStructure:
    def test_star_pass_and_fail(self):
        star = generate("complete_bipartite", [1, 4])
        ok, _ = check_structure(star, Coloring(2, (0, 1, 1, 1, 1)), "star")
        assert ok
        p4 = generate("path", [4])
        ok, witness = check_structure(p4, Coloring(2, (0, 1, 0, 1)), "star")
        assert not ok and witness == (0, 1, (0, 1, 2, 3))

    def test_acyclic(self):
        p4 = generate("path", [4])
        assert check_structure(p4, Coloring(2, (0, 1, 0, 1)), "acyclic")[0]
        c6 = generate("cycle", [6])
        ok, witness = check_structure(c6, Coloring(2, (0, 1, 0, 1, 0, 1)), "acyclic")
        assert not ok and witness[2] == (0, 1, 2, 3, 4, 5)

    def test_planar(self):
        c6 = generate("cycle", [6])
        assert check_structure(c6, Coloring(2, (0, 1, 0, 1, 0, 1)), "planar")[0]
        k33 = generate("complete_bipartite", [3, 3])
        ok, witness = check_structure(k33, Coloring(2, (0, 0, 0, 1, 1, 1)), "planar")
        assert not ok and witness[2] == (0, 1, 2, 3, 4, 5)

    def test_planar_component_size_limit(self):
        big = generate("complete_bipartite", [2, 12])
        col = Coloring(2, (0, 0) + (1,) * 12)
        with pytest.raises(SizeLimitError):
            check_structure(big, col, "planar")

    def test_treewidth_property(self):
        c6 = generate("cycle", [6])
        col = Coloring(2, (0, 1, 0, 1, 0, 1))
        assert check_structure(c6, col, "treewidth:2")[0]
        assert not check_structure(c6, col, "treewidth:1")[0]

    def test_unknown_property(self):
        with pytest.raises(GraphError):
            check_structure(generate("path", [2]), Coloring(2, (0, 1)), "chromatic")

    def test_improper_rejected(self):
        with pytest.raises(ImproperColoringError):
            check_structure(generate("path", [2]), Coloring(2, (0, 0)), "star")


class TestSearchAndOracle:
    def test_examples(self):
        assert brute_force_min_colors(generate("path", [3]), 1) == 3
        assert brute_force_min_colors(generate("cycle", [4]), 2) == 3
        assert brute_force_min_colors(generate("cycle", [5]), 2) == 4
        assert brute_force_min_colors(generate("path", [4]), 2) == 3
        assert brute_force_min_colors(generate("complete", [4]), 1) == 4

    def test_search_consistency(self):
        c4 = generate("cycle", [4])
        col = search_coloring(c4, 2, 3)
        assert col is not None
        assert check_proper(c4, col) == []
        assert check_m_bounded(c4, col, 2)[0]
        assert search_coloring(c4, 2, 2) is None

    def test_matches_raw_product_oracle(self):
        for g in connected_graph_classes(4):
            for m in (1, 2, 3):
                assert brute_force_min_colors(g, m) == min_colors_oracle(g, m)

    def test_n5_spot_checks(self):
        for g, m in [
            (generate("cycle", [5]), 1),
            (generate("complete_bipartite", [2, 3]), 2),
            (Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2)]), 2),
        ]:
            assert brute_force_min_colors(g, m) == min_colors_oracle(g, m)

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            search_coloring(Graph.from_edges(11, []), 1, 2)


class TestReport:
    def test_improper_short_circuit(self):
        rep = build_report(generate("path", [2]), Coloring(2, (0, 0)), m=1)
        assert not rep.proper and rep.monochromatic_edges == ((0, 1),)
        assert not rep.ok()

    def test_full_report(self):
        c4 = generate("cycle", [4])
        rep = build_report(c4, Coloring(3, (0, 1, 0, 2)), m=2, checks=["star", "acyclic"])
        assert rep.proper and rep.m_bounded and rep.max_component_edges == 2
        assert rep.structural["star"][0] and rep.structural["acyclic"][0]
        assert rep.ok()

    def test_failed_check_fails_report(self):
        c6 = generate("cycle", [6])
        rep = build_report(c6, Coloring(2, (0, 1, 0, 1, 0, 1)), m=None, checks=["star"])
        assert rep.proper and not rep.ok()
