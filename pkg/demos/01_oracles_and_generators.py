# Generators, chordality, and the exact oracles.
#
# Everything downstream is judged against these oracles, so this walkthrough
# double-checks them against brute force on tiny instances first.

from chordalg import (
    Graph, alpha_oracle, brute_alpha, brute_chromatic, gen_chordal,
    gen_interval, gen_path, gen_spider, is_chordal, mcs_order, omega_oracle,
    verify_coloring, verify_is, greedy_color_reverse_peo,
)

# A path is chordal; a four-cycle is the smallest graph that is not.
print("path chordal:", is_chordal(gen_path(5)))
c4 = Graph([(1, 2), (2, 3), (3, 4), (4, 1)])
print("C4 chordal:", is_chordal(c4))

# The search order doubles as the chordality certificate: later neighbors of
# every node form a clique exactly when the graph is chordal.
eo = mcs_order(gen_path(5))
print("elimination order:", eo.order, "perfect:", eo.is_perfect)

# The generator builds a random tree of bags, so chordality holds by
# construction and the clique number never exceeds the bag cap.
g = gen_chordal(200, seed=21, max_clique=6)
print("generated instance: n=%d m=%d chordal=%s" % (len(g), g.num_edges, is_chordal(g)))

omega = omega_oracle(g)
alpha = alpha_oracle(g)
print("omega (= chromatic number):", omega)
print("alpha:", len(alpha), "independent:", verify_is(g, alpha))

# Greedy along the reverse elimination order is optimal on chordal graphs;
# a handy sanity check tying the two oracles together.
colors = greedy_color_reverse_peo(g)
print("greedy palette equals omega:", verify_coloring(g, colors).palette == omega)

# On anything small, brute force must agree exactly.
small = gen_chordal(11, seed=3, max_clique=4)
print("brute chromatic agrees:", brute_chromatic(small) == omega_oracle(small))
print("brute alpha agrees:", brute_alpha(small) == len(alpha_oracle(small)))

# Two structured families used throughout the tests.
spider = gen_spider(3, 10)
print("spider: %d nodes, degree-3 centers: %s"
      % (len(spider), [v for v in spider.nodes if spider.degree(v) == 3]))
interval = gen_interval(40, seed=2)
print("interval instance components:", len(interval.connected_components()))
