import pytest
from hypothesis import given, settings

from chordalg import (
    Graph, NotChordal, TooLarge, UnknownNode, alpha_oracle, brute_alpha,
    brute_chromatic, gen_caterpillar, gen_chordal, greedy_color_reverse_peo,
    is_chordal, mcs_order, omega_oracle, verify_coloring, verify_is,
)
from chordalg.graphs import induced_cycle_chordality

from conftest import complete_graph, cycle_graph, small_graphs


def path(n):
    return Graph([(i, i + 1) for i in range(1, n)])


class TestMcsOrder:
    def test_path_is_perfect(self):
        eo = mcs_order(path(3))
        assert eo.is_perfect
        assert sorted(eo.order) == [1, 2, 3]

    def test_four_cycle_not_perfect(self):
        assert not mcs_order(cycle_graph(4)).is_perfect

    def test_empty_graph(self):
        eo = mcs_order(Graph())
        assert eo.order == () and eo.is_perfect

    def test_deterministic_under_build_order(self):
        edges = [(1, 2), (2, 3), (3, 4), (2, 4)]
        a = mcs_order(Graph(edges))
        b = mcs_order(Graph(reversed(edges)))
        assert a == b

    @given(small_graphs())
    @settings(max_examples=60, deadline=None)
    def test_peo_invariant(self, g):
        eo = mcs_order(g)
        if eo.is_perfect:
            pos = {v: i for i, v in enumerate(eo.order)}
            for v in eo.order:
                later = [u for u in g.adj[v] if pos[u] > pos[v]]
                for a in later:
                    for b in later:
                        if a < b:
                            assert g.has_edge(a, b)


class TestChordality:
    def test_complete_graph(self, k4):
        assert is_chordal(k4)

    def test_five_cycle(self):
        assert not is_chordal(cycle_graph(5))

    def test_caterpillar(self):
        assert is_chordal(gen_caterpillar(5, 3))

    def test_generated_instance_cross_check(self):
        g = gen_chordal(10, seed=7)
        assert is_chordal(g)
        assert induced_cycle_chordality(g)

    @given(small_graphs())
    @settings(max_examples=60, deadline=None)
    def test_agrees_with_induced_cycle_check(self, g):
        assert is_chordal(g) == induced_cycle_chordality(g)


class TestOracles:
    def test_omega_k5(self):
        assert omega_oracle(complete_graph(5)) == 5

    def test_omega_path(self):
        assert omega_oracle(path(6)) == 2

    def test_omega_matches_brute_clique_search(self):
        from conftest import brute_maximal_cliques
        g = gen_chordal(12, seed=3)
        assert omega_oracle(g) == max(len(c) for c in brute_maximal_cliques(g))

    def test_alpha_path5(self):
        assert len(alpha_oracle(path(5))) == 3

    def test_alpha_k4(self, k4):
        assert len(alpha_oracle(k4)) == 1

    def test_alpha_matches_brute(self):
        g = gen_chordal(12, seed=3)
        assert len(alpha_oracle(g)) == brute_alpha(g)

    def test_alpha_output_is_independent(self):
        g = gen_chordal(40, seed=5)
        assert verify_is(g, alpha_oracle(g))

    def test_not_chordal_raises(self):
        with pytest.raises(NotChordal):
            omega_oracle(cycle_graph(4))
        with pytest.raises(NotChordal):
            alpha_oracle(cycle_graph(5))

    def test_oracle_cross_check_small(self):
        g = gen_chordal(10, seed=1)
        assert omega_oracle(g) == brute_chromatic(g)
        assert len(alpha_oracle(g)) == brute_alpha(g)

    @given(small_graphs(max_nodes=6))
    @settings(max_examples=40, deadline=None)
    def test_oracles_equal_brute_on_chordal(self, g):
        if is_chordal(g) and len(g):
            assert omega_oracle(g) == brute_chromatic(g)
            assert len(alpha_oracle(g)) == brute_alpha(g)


class TestBruteForce:
    def test_four_cycle(self):
        c4 = cycle_graph(4)
        assert brute_alpha(c4) == 2
        assert brute_chromatic(c4) == 2

    def test_k4(self, k4):
        assert brute_alpha(k4) == 1
        assert brute_chromatic(k4) == 4

    def test_size_limits(self):
        with pytest.raises(TooLarge):
            brute_alpha(Graph(nodes=range(1, 22)))
        with pytest.raises(TooLarge):
            brute_chromatic(Graph(nodes=range(1, 14)))


class TestVerifiers:
    def test_coloring_legal(self):
        g = path(3)
        res = verify_coloring(g, {1: 1, 2: 2, 3: 1})
        assert res.legal and res.palette == 2

    def test_coloring_illegal(self):
        g = Graph([(1, 2)])
        assert not verify_coloring(g, {1: 1, 2: 1}).legal

    def test_unknown_node(self):
        with pytest.raises(UnknownNode):
            verify_coloring(Graph([(1, 2)]), {3: 1})
        with pytest.raises(UnknownNode):
            verify_is(Graph([(1, 2)]), {9})

    def test_greedy_reverse_peo_hits_omega(self):
        for seed in range(4):
            g = gen_chordal(60, seed=seed, max_clique=5)
            colors = greedy_color_reverse_peo(g)
            res = verify_coloring(g, colors)
            assert res.legal
            assert res.palette == omega_oracle(g)
