#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "hamgrow/generators.hpp"
#include "hamgrow/moves.hpp"
#include "hamgrow/rng.hpp"

using namespace hamgrow;

namespace {

Tour random_tour(int m, SplitMix64& rng) {
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    for (int i = m - 1; i > 0; --i)
        std::swap(order[i], order[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
    return Tour(order);
}

std::vector<Edge> apply_exchange(const Tour& src, const Move& mv) {
    std::vector<Edge> es = tour_edges(src);
    for (const Edge& e : mv.removed) {
        auto it = std::find(es.begin(), es.end(), e);
        REQUIRE(it != es.end());
        es.erase(it);
    }
    es.insert(es.end(), mv.added.begin(), mv.added.end());
    std::sort(es.begin(), es.end());
    return es;
}

void check_move(const CostFn& c, const Tour& src, const Move& mv, std::size_t arity) {
    REQUIRE(mv.removed.size() == arity);
    REQUIRE(mv.added.size() == arity);
    REQUIRE(mv.result.sorted_vertices() == src.sorted_vertices());
    REQUIRE(mv.result.is_canonical());

    std::vector<Edge> meet;
    std::vector<Edge> out = mv.removed, in = mv.added;
    std::sort(out.begin(), out.end());
    std::sort(in.begin(), in.end());
    std::set_intersection(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(meet));
    REQUIRE(meet.empty());

    REQUIRE(tour_edges(mv.result) == apply_exchange(src, mv));

    int delta = 0;
    for (const Edge& e : mv.added) delta += static_cast<int>(c(e));
    for (const Edge& e : mv.removed) delta -= static_cast<int>(c(e));
    REQUIRE(static_cast<int>(tour_cost(c, mv.result)) - static_cast<int>(tour_cost(c, src)) ==
            delta);
}

} // namespace

TEST_CASE("two-opt on the square") {
    Tour t({0, 1, 2, 3});
    auto ms = two_opt_moves(t);
    REQUIRE(ms.size() == 2);
    for (const Move& mv : ms) {
        std::vector<Edge> in = mv.added;
        std::sort(in.begin(), in.end());
        REQUIRE(in == std::vector<Edge>{Edge(0, 2), Edge(1, 3)});
    }
    std::set<std::vector<Edge>> outs;
    for (const Move& mv : ms) {
        std::vector<Edge> out = mv.removed;
        std::sort(out.begin(), out.end());
        outs.insert(out);
    }
    REQUIRE(outs.count({Edge(0, 1), Edge(2, 3)}) == 1);
    REQUIRE(outs.count({Edge(0, 3), Edge(1, 2)}) == 1);
}

TEST_CASE("two-opt counts follow m(m-3)/2") {
    REQUIRE(two_opt_moves(Tour({0, 1, 2, 3, 4})).size() == 5);
    SplitMix64 rng(21);
    for (int m = 4; m <= 12; ++m) {
        Tour t = random_tour(m, rng);
        REQUIRE(two_opt_moves(t).size() == static_cast<std::size_t>(m * (m - 3) / 2));
    }
}

TEST_CASE("three-opt changes exactly three edges") {
    SplitMix64 rng(22);
    for (int m = 5; m <= 9; ++m) {
        Tour t = random_tour(m, rng);
        auto ms = three_opt_moves(t);
        REQUIRE_FALSE(ms.empty());
        REQUIRE(ms.size() <=
                static_cast<std::size_t>(m * (m - 1) * (m - 2) / 6) * 4);
        std::set<Tour> results;
        const std::vector<Edge> src_edges = tour_edges(t);
        for (const Move& mv : ms) {
            REQUIRE(results.insert(mv.result).second);
            std::vector<Edge> kept;
            const std::vector<Edge> res_edges = tour_edges(mv.result);
            std::set_intersection(src_edges.begin(), src_edges.end(), res_edges.begin(),
                                  res_edges.end(), std::back_inserter(kept));
            REQUIRE(kept.size() == static_cast<std::size_t>(m - 3));
        }
    }
}

TEST_CASE("three-opt on a complete graph keeps cost zero") {
    CostFn c = reduce_to_tsp(complete_graph(5));
    for (const Move& mv : three_opt_moves(Tour({0, 1, 2, 3, 4})))
        REQUIRE(tour_cost(c, mv.result) == 0);
}

TEST_CASE("double bridge fixture") {
    Tour t({0, 1, 2, 3, 4, 5, 6, 7});
    auto ms = double_bridge_moves(t);
    bool found = false;
    for (const Move& mv : ms) {
        std::vector<Edge> out = mv.removed, in = mv.added;
        std::sort(out.begin(), out.end());
        std::sort(in.begin(), in.end());
        if (out == std::vector<Edge>{Edge(0, 7), Edge(1, 2), Edge(3, 4), Edge(5, 6)}) {
            REQUIRE(in == std::vector<Edge>{Edge(0, 3), Edge(1, 6), Edge(2, 5), Edge(4, 7)});
            REQUIRE(mv.result.order() == std::vector<int>{0, 1, 6, 7, 4, 5, 2, 3});
            found = true;
        }
    }
    REQUIRE(found);
    for (const Move& mv : ms) {
        REQUIRE(mv.removed.size() == 4);
        REQUIRE(mv.added.size() == 4);
        REQUIRE(mv.result.sorted_vertices() == t.sorted_vertices());
    }
}

TEST_CASE("move validity over random tours") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 150; ++trial) {
        int m = 4 + static_cast<int>(rng.next_below(9));
        Tour t = random_tour(m, rng);
        CostFn c = reduce_to_tsp(gen_gnp(m, 0.5, rng.next()));
        for (const Move& mv : two_opt_moves(t)) check_move(c, t, mv, 2);
        for (const Move& mv : three_opt_moves(t)) check_move(c, t, mv, 3);
        for (const Move& mv : double_bridge_moves(t)) check_move(c, t, mv, 4);
    }
}

TEST_CASE("combined move list covers all three kinds") {
    SplitMix64 rng(24);
    Tour t = random_tour(8, rng);
    auto ms = all_moves(t);
    REQUIRE(ms.size() == two_opt_moves(t).size() + three_opt_moves(t).size() +
                             double_bridge_moves(t).size());
    bool two = false, three = false, bridge = false;
    for (const Move& mv : ms) {
        two |= mv.kind == MoveKind::TwoOpt;
        three |= mv.kind == MoveKind::ThreeOpt;
        bridge |= mv.kind == MoveKind::DoubleBridge;
    }
    REQUIRE(two);
    REQUIRE(three);
    REQUIRE(bridge);
    REQUIRE(std::string(move_kind_name(MoveKind::DoubleBridge)) == "double_bridge");
}

TEST_CASE("small tours produce no degenerate moves") {
    REQUIRE(two_opt_moves(Tour({0, 1, 2})).empty());
    REQUIRE(three_opt_moves(Tour({0, 1, 2, 3})).empty());
    REQUIRE(double_bridge_moves(Tour({0, 1, 2})).empty());

    auto db4 = double_bridge_moves(Tour({0, 1, 2, 3}));
    for (const Move& mv : db4) REQUIRE(mv.removed.size() == 4);
}
