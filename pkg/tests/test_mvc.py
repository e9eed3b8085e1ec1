import math

import pytest

from chordalg import (
    EpsilonTooSmall, Graph, clique_forest, gen_chordal, gen_interval, gen_path,
    gen_spider, mvc_centralized, mvc_distributed, omega_oracle, prune_layers,
    verify_coloring,
)
from chordalg.cliqueforest import strips_from_traces
from chordalg.fileio import coloring_to_text
from chordalg.graphs import bfs_distances
from chordalg.intervals import color_budget, require_interval
from chordalg.mvc import (
    color_layers, correct_colors, eps_to_k, local_peel_decision, mvc_pipeline,
    mvc_distributed_run,
)

from conftest import complete_graph


def bound(k, omega):
    return color_budget(k, omega)


class TestPruneLayers:
    def test_interval_graph_single_layer(self):
        g = gen_interval(60, seed=3)
        layering = prune_layers(g, 4)
        assert layering.num_layers == 1
        assert all(l == 1 for l in layering.layer.values())
        assert all(p is None for p in layering.parent.values())

    def test_spider_two_layers_and_parents(self):
        g = gen_spider(3, 20)
        layering = prune_layers(g, 3)
        assert layering.num_layers == 2
        assert sorted(layering.layer_nodes(2)) == [1, 42]
        legs_near_center = [v for v in layering.layer_nodes(1)
                            if layering.parent[v] is not None]
        assert legs_near_center
        assert all(layering.parent[v] == 42 for v in legs_near_center)
        # nodes with a parent sit within k + 3 of the attach clique {1, 42}
        reach = bfs_distances(g, {1, 42}, cutoff=6)
        for v in layering.layer_nodes(1):
            assert (layering.parent[v] is not None) == (v in reach)

    def test_partition_and_layer_bound(self):
        g = gen_chordal(500, seed=21, max_clique=6)
        layering = prune_layers(g, 4)
        assert set(layering.layer) == g.nodes
        assert layering.num_layers <= math.ceil(math.log2(max(2, layering.clique_count)))

    def test_layers_are_interval(self):
        g = gen_chordal(500, seed=21, max_clique=6)
        layering = prune_layers(g, 4)
        for i in range(1, layering.num_layers + 1):
            require_interval(g.subgraph(layering.layer_nodes(i)))

    def test_peeled_forests_match_recomputation(self):
        g = gen_chordal(300, seed=21, max_clique=6)
        layering = prune_layers(g, 4)
        for i in range(1, layering.num_layers + 1):
            leftover = {v for v, l in layering.layer.items() if l > i}
            maintained = layering.forest_history[i]
            assert maintained.signature() == clique_forest(g.subgraph(leftover)).signature()

    def test_parent_monotonicity_and_junction_halving(self):
        g = gen_chordal(400, seed=9, max_clique=6)
        layering = prune_layers(g, 4)
        for v, par in layering.parent.items():
            if par is not None:
                assert layering.layer[par] > layering.layer[v]
        counts = [sum(1 for j in range(len(f)) if f.degree(j) > 2)
                  for f in layering.forest_history[:-1]]
        for a, b in zip(counts, counts[1:]):
            if a:
                assert b < a / 2 or b == 0


class TestColorLayers:
    def test_per_layer_legal_with_conflicts_only_between_layers(self):
        g = gen_chordal(300, seed=21, max_clique=6)
        k = 4
        layering = prune_layers(g, k)
        base = color_layers(g, layering, k)
        for u, v in g.edges():
            if base[u] == base[v]:
                assert layering.layer[u] != layering.layer[v]

    def test_per_layer_palette_bound(self):
        g = gen_chordal(300, seed=21, max_clique=6)
        k = 4
        layering = prune_layers(g, k)
        base = color_layers(g, layering, k)
        for i in range(1, layering.num_layers + 1):
            sub = g.subgraph(layering.layer_nodes(i))
            palette = {base[v] for v in sub.nodes}
            assert len(palette) <= bound(k, omega_oracle(sub))


class TestCorrectColors:
    def test_single_layer_unchanged(self):
        g = gen_interval(80, seed=5)
        k = 4
        layering = prune_layers(g, k)
        base = color_layers(g, layering, k)
        assert correct_colors(g, layering, base, k) == base

    def test_conflicts_resolved_locally(self):
        g = gen_chordal(400, seed=21, max_clique=6)
        k = 4
        layering = prune_layers(g, k)
        base = color_layers(g, layering, k)
        final = correct_colors(g, layering, base, k)
        assert verify_coloring(g, final).legal
        changed = {v for v in base if base[v] != final[v]}
        for v in changed:
            assert layering.parent[v] is not None

    def test_global_bound(self):
        g = gen_chordal(400, seed=21, max_clique=6)
        k = 4
        run = mvc_pipeline(g, 0.5)
        res = verify_coloring(g, run.final_colors)
        assert res.legal
        assert res.palette <= bound(k, run.omega)


class TestMvcCentralized:
    def test_complete_graph_exact(self):
        for m in (2, 5, 9):
            g = complete_graph(m)
            colors = mvc_centralized(g, 1.0)
            res = verify_coloring(g, colors)
            assert res.legal and res.palette == m

    def test_eps_too_small(self, k4):
        with pytest.raises(EpsilonTooSmall):
            mvc_centralized(k4, 0.3)

    def test_ratio_on_generated(self):
        g = gen_chordal(500, seed=21, max_clique=6)
        omega = omega_oracle(g)
        res = verify_coloring(g, mvc_centralized(g, 0.5))
        assert res.legal and res.palette <= 1.5 * omega

    def test_tight_eps_on_wide_instance(self):
        g = gen_chordal(800, seed=22, max_clique=20)
        omega = omega_oracle(g)
        assert omega >= 10
        res = verify_coloring(g, mvc_centralized(g, 0.2))
        assert res.legal and res.palette <= 1.2 * omega


class TestMvcDistributed:
    def test_spider_byte_equal(self):
        # trees have omega = 2, so the smallest admissible eps is 1.0
        g = gen_spider(3, 20)
        central = mvc_centralized(g, 1.0)
        dist, transcript = mvc_distributed(g, 1.0)
        assert coloring_to_text(central) == coloring_to_text(dist)
        assert transcript.complete

    def test_equivalence_on_generated(self):
        for seed in (2, 11):
            g = gen_chordal(150, seed=seed, max_clique=6)
            if omega_oracle(g) < 4:
                continue
            central = mvc_centralized(g, 0.5)
            dist, _ = mvc_distributed(g, 0.5)
            assert central == dist

    def test_rounds_grow_with_depth_not_size(self):
        # single peel iteration on path graphs regardless of n
        t1 = mvc_distributed(gen_path(60), 1.0)[1].rounds_elapsed
        t2 = mvc_distributed(gen_path(600), 1.0)[1].rounds_elapsed
        assert t1 == t2

    def test_transcript_deterministic(self):
        g = gen_chordal(100, seed=3, max_clique=5)
        a = mvc_distributed(g, 0.5)[1].serialize()
        b = mvc_distributed(g, 0.5)[1].serialize()
        assert a == b


class TestLocalDecisions:
    def test_every_node_matches_pipeline(self):
        k = 2
        for seed in (0, 3):
            g = gen_chordal(60, seed=seed, max_clique=4)
            layering = prune_layers(g, k)
            for i in range(1, layering.num_layers + 1):
                residual = {v for v, l in layering.layer.items() if l >= i}
                for v in sorted(residual):
                    ballg = g.subgraph(bfs_distances(g, v, cutoff=10 * k))
                    peel, parent = local_peel_decision(ballg, v, residual, k)
                    assert peel == (layering.layer[v] == i)
                    if peel:
                        assert parent == layering.parent[v]


def test_layer_components_match_trace_strips():
    g = gen_chordal(250, seed=13, max_clique=6)
    layering = prune_layers(g, 4)
    for i in range(1, layering.num_layers + 1):
        seen = set()
        for record in layering.peeled_paths[i]:
            for strip in strips_from_traces(record.cliques, set(record.members)):
                assert not (strip.nodes & seen)
                seen |= strip.nodes
        assert seen == set(layering.layer_nodes(i))


FROZEN_CAP_CONSTANT = 4  # calibrated once on small instances


def test_quiescence_under_frozen_cap():
    from chordalg.localsim import quiescence_detect
    for n, seed in ((64, 1), (128, 0), (256, 2)):
        g = gen_chordal(n, seed=seed, max_clique=6)
        if omega_oracle(g) < 4:
            continue
        eps = 0.5
        cap = 10 * math.ceil((1 / eps) * math.ceil(math.log2(n))) * FROZEN_CAP_CONSTANT
        _, transcript = mvc_distributed(g, eps, round_cap=cap)
        assert quiescence_detect(transcript)


def test_debug_invariant_sweeps_run_clean():
    from chordalg import set_debug_invariants
    from chordalg.mis import mis_chordal_run
    set_debug_invariants(True)
    try:
        g = gen_chordal(200, seed=21, max_clique=6)
        run = mvc_pipeline(g, 0.5)
        assert verify_coloring(g, run.final_colors).legal
        mis_chordal_run(g, 0.4)
    finally:
        set_debug_invariants(False)
