#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "hamgrow/generators.hpp"
#include "hamgrow/graph.hpp"
#include "hamgrow/rng.hpp"
#include "hamgrow/tour.hpp"

using namespace hamgrow;

TEST_CASE("edges canonicalize endpoints") {
    Edge e(3, 1);
    REQUIRE(e.u == 1);
    REQUIRE(e.v == 3);
    REQUIRE(Edge(1, 3) == e);
    REQUIRE(e.contains(3));
    REQUIRE_FALSE(e.contains(2));
    REQUIRE(e.other(1) == 3);
    REQUIRE(Edge(0, 1) < Edge(0, 2));
    REQUIRE(Edge(0, 2) < Edge(1, 2));
    REQUIRE_THROWS_AS(Edge(2, 2), std::invalid_argument);
}

TEST_CASE("graph adjacency and degrees") {
    Graph g(4, {Edge(0, 1), Edge(1, 2), Edge(2, 3)});
    REQUIRE(g.n() == 4);
    REQUIRE(g.edge_count() == 3);
    REQUIRE(g.has_edge(0, 1));
    REQUIRE(g.has_edge(1, 0));
    REQUIRE_FALSE(g.has_edge(0, 2));
    REQUIRE(g.degree(0) == 1);
    REQUIRE(g.degree(1) == 2);
    REQUIRE(g.neighbors(1) == std::vector<int>{0, 2});
    REQUIRE_THROWS_AS(Graph(3, {Edge(0, 3)}), std::invalid_argument);
}

TEST_CASE("duplicate edges collapse on construction") {
    Graph g(3, {Edge(0, 1), Edge(1, 0), Edge(1, 2)});
    REQUIRE(g.edge_count() == 2);
}

TEST_CASE("tsp reduction costs") {
    SECTION("complete graph is all zero") {
        CostFn c = reduce_to_tsp(complete_graph(4));
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v) REQUIRE(c(u, v) == 0);
    }
    SECTION("empty graph is all one") {
        CostFn c = reduce_to_tsp(Graph(4, {}));
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v) REQUIRE(c(u, v) == 1);
    }
    SECTION("path 0-1-2-3") {
        CostFn c = reduce_to_tsp(path_graph(4));
        REQUIRE(c(0, 1) == 0);
        REQUIRE(c(1, 2) == 0);
        REQUIRE(c(2, 3) == 0);
        REQUIRE(c(0, 2) == 1);
        REQUIRE(c(0, 3) == 1);
        REQUIRE(c(1, 3) == 1);
        REQUIRE(c(3, 2) == 0);
    }
    SECTION("zero-cost pair count equals edge count") {
        SplitMix64 rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            Graph g = gen_gnp(8, 0.4, rng.next());
            CostFn c = reduce_to_tsp(g);
            std::size_t zeros = 0;
            for (int u = 0; u < 8; ++u)
                for (int v = u + 1; v < 8; ++v)
                    if (c(u, v) == 0) ++zeros;
            REQUIRE(zeros == g.edge_count());
        }
    }
}

TEST_CASE("tour canonical form") {
    REQUIRE(Tour({2, 3, 0, 1}).canonical().order() == std::vector<int>{0, 1, 2, 3});
    REQUIRE(Tour({0, 3, 2, 1}).canonical().order() == std::vector<int>{0, 1, 2, 3});
    Tour t({0, 1, 2, 3});
    REQUIRE(t.canonical().order() == t.order());
    REQUIRE(t.canonical().canonical().order() == t.order());
    REQUIRE(Tour({2, 3, 0, 1}) == Tour({0, 3, 2, 1}));
    REQUIRE_THROWS_AS(Tour({0, 1}), std::invalid_argument);
    REQUIRE_THROWS_AS(Tour({0, 1, 1}), std::invalid_argument);
}

TEST_CASE("tour edges") {
    REQUIRE(tour_edges(Tour({0, 1, 2, 3})) ==
            std::vector<Edge>{Edge(0, 1), Edge(0, 3), Edge(1, 2), Edge(2, 3)});
    REQUIRE(tour_edges(Tour({0, 2, 1, 3})) ==
            std::vector<Edge>{Edge(0, 2), Edge(0, 3), Edge(1, 2), Edge(1, 3)});
}

TEST_CASE("tour cost examples") {
    CostFn k4 = reduce_to_tsp(complete_graph(4));
    REQUIRE(tour_cost(k4, Tour({0, 1, 2, 3})) == 0);
    REQUIRE(tour_cost(k4, Tour({0, 2, 1, 3})) == 0);

    CostFn p4 = reduce_to_tsp(path_graph(4));
    REQUIRE(tour_cost(p4, Tour({0, 1, 2, 3})) == 1);
    REQUIRE(tour_cost(p4, Tour({0, 2, 1, 3})) == 3);
}

TEST_CASE("cost and edges are invariant under canonicalization") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 4 + static_cast<int>(rng.next_below(6));
        std::vector<int> order(m);
        for (int i = 0; i < m; ++i) order[i] = i;
        for (int i = m - 1; i > 0; --i)
            std::swap(order[i], order[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
        Tour t(order);
        Tour ct = t.canonical();
        CostFn c = reduce_to_tsp(gen_gnp(m, 0.5, rng.next()));
        REQUIRE(tour_cost(c, t) == tour_cost(c, ct));
        REQUIRE(tour_edges(t) == tour_edges(ct));
        REQUIRE(tour_cost(c, t) <= static_cast<unsigned>(m));

        unsigned by_edges = 0;
        for (const Edge& e : tour_edges(t)) by_edges += c(e);
        REQUIRE(tour_cost(c, t) == by_edges);
    }
}

TEST_CASE("splice inserts a vertex on a tour edge") {
    Tour t({0, 1, 2, 3});
    REQUIRE(splice_vertex(t, 1, 2, 4).order() == std::vector<int>{0, 1, 4, 2, 3});
    REQUIRE(splice_vertex(t, 2, 1, 4).order() == std::vector<int>{0, 1, 4, 2, 3});
    REQUIRE(splice_vertex(t, 3, 0, 4).order() == std::vector<int>{0, 1, 2, 3, 4});
    REQUIRE_THROWS_AS(splice_vertex(t, 0, 2, 4), InvariantViolation);
}

TEST_CASE("graph parsing") {
    SECTION("path") {
        Graph g = parse_graph("4 3\n0 1\n1 2\n2 3\n");
        REQUIRE(g == path_graph(4));
    }
    SECTION("triangle") {
        Graph g = parse_graph("3 3\n0 1\n0 2\n1 2\n");
        REQUIRE(g == complete_graph(3));
    }
    SECTION("comments are ignored") {
        Graph g = parse_graph("# cycle\n4 4\n0 1\n1 2\n# middle\n2 3\n0 3\n");
        REQUIRE(g == cycle_graph(4));
    }
    SECTION("self-loop is rejected with its line") {
        try {
            parse_graph("2 1\n0 0\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            REQUIRE(e.line() == 2);
        }
    }
    SECTION("malformed header") {
        REQUIRE_THROWS_AS(parse_graph("banana\n"), ParseError);
        REQUIRE_THROWS_AS(parse_graph("4\n"), ParseError);
        REQUIRE_THROWS_AS(parse_graph(""), ParseError);
    }
    SECTION("out-of-range vertex") {
        REQUIRE_THROWS_AS(parse_graph("3 1\n0 3\n"), ParseError);
    }
    SECTION("duplicate edge") {
        REQUIRE_THROWS_AS(parse_graph("3 2\n0 1\n1 0\n"), ParseError);
    }
    SECTION("edge count mismatch") {
        REQUIRE_THROWS_AS(parse_graph("3 2\n0 1\n"), ParseError);
        REQUIRE_THROWS_AS(parse_graph("3 1\n0 1\n1 2\n"), ParseError);
    }
}

TEST_CASE("serialize then parse is the identity") {
    REQUIRE(serialize_graph(path_graph(4)) == "4 3\n0 1\n1 2\n2 3\n");
    SplitMix64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = gen_gnp(9, 0.5, rng.next());
        REQUIRE(parse_graph(serialize_graph(g)) == g);
    }
}

TEST_CASE("connectivity check") {
    REQUIRE(graph_connected(path_graph(5)));
    REQUIRE(graph_connected(Graph(1, {})));
    REQUIRE_FALSE(graph_connected(Graph(4, {Edge(0, 1), Edge(2, 3)})));
    REQUIRE_FALSE(graph_connected(Graph(3, {Edge(0, 1)})));
}

TEST_CASE("deterministic rng streams") {
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) REQUIRE(a.next() == b.next());
    REQUIRE(mix64(1) == mix64(1));
    REQUIRE(mix64(1) != mix64(2));
    SplitMix64 c(99);
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(c.next_below(7) < 7);
        double d = c.next_double();
        REQUIRE(d >= 0.0);
        REQUIRE(d < 1.0);
    }
}

TEST_CASE("fixed-shape generators") {
    REQUIRE(complete_graph(5).edge_count() == 10);
    REQUIRE(cycle_graph(6).edge_count() == 6);
    REQUIRE(star_graph(6).edge_count() == 5);
    REQUIRE(star_graph(6).degree(0) == 5);
    Graph pet = petersen_graph();
    REQUIRE(pet.n() == 10);
    REQUIRE(pet.edge_count() == 15);
    for (int v = 0; v < 10; ++v) REQUIRE(pet.degree(v) == 3);

    SECTION("gnp is seed-deterministic") {
        REQUIRE(gen_gnp(10, 0.5, 5) == gen_gnp(10, 0.5, 5));
        REQUIRE(gen_gnp(12, 0.0, 5).edge_count() == 0);
        REQUIRE(gen_gnp(12, 1.0, 5).edge_count() == 66);
    }
    SECTION("planted cycle is always hamiltonian-friendly") {
        SplitMix64 rng(3);
        for (int trial = 0; trial < 20; ++trial) {
            Graph g = gen_planted_hamiltonian(9, 0.2, rng.next());
            REQUIRE(g.edge_count() >= 9);
            REQUIRE(graph_connected(g));
            for (int v = 0; v < 9; ++v) REQUIRE(g.degree(v) >= 2);
        }
    }
}
