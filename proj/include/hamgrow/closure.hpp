#pragma once

#include <cstdint>
#include <deque>
#include <unordered_set>
#include <vector>

#include "hamgrow/moves.hpp"
#include "hamgrow/oracle.hpp"
#include "hamgrow/rng.hpp"

namespace hamgrow {

struct ClosureConfig {
    std::uint64_t budget = 1'000'000; // max tours expanded
};

struct ClosureResult {
    OptimizingEdgeSet edge_set;
    std::uint64_t moves_examined = 0;
    std::uint64_t tours_discovered = 0;
    bool budget_exhausted = false;
};

namespace detail {

struct OrderHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
        for (int x : v) h = mix64(h ^ static_cast<std::uint64_t>(x));
        return static_cast<std::size_t>(h);
    }
};

// Shared work-list driver. Entries are canonical tours tagged with their
// cost; `accept` decides which deltas to follow from a tour of a given cost,
// `record` harvests optimizing edges from every admitted tour.
template <class Accept, class Record>
void closure_worklist(const CostFn& c, std::deque<std::pair<Tour, unsigned>>& queue,
                      std::unordered_set<std::vector<int>, OrderHash>& visited,
                      const ClosureConfig& cfg, ClosureResult& res, Accept&& accept,
                      Record&& record) {
    std::uint64_t expanded = 0;
    while (!queue.empty()) {
        if (expanded == cfg.budget) {
            res.budget_exhausted = true;
            return;
        }
        auto [tour, cost] = std::move(queue.front());
        queue.pop_front();
        ++expanded;

        auto consider = [&](const auto& out, const auto& in, auto&& realize) {
            ++res.moves_examined;
            int delta = 0;
            for (const Edge& e : in) delta += static_cast<int>(c(e));
            for (const Edge& e : out) delta -= static_cast<int>(c(e));
            if (!accept(cost, delta)) return;
            Tour next = realize();
            if (!visited.insert(next.order()).second) return;
            const unsigned next_cost = cost + static_cast<unsigned>(delta);
            record(next, next_cost);
            ++res.tours_discovered;
            queue.emplace_back(std::move(next), next_cost);
        };
        for_each_two_opt(tour, consider);
        for_each_three_opt(tour, consider);
        for_each_double_bridge(tour, consider);
    }
}

} // namespace detail

// Optimizing-edge replacement closure for the positive regime: starting from
// the seed tour and the witnesses already in seed_set, walk all cost-neutral
// 2-opt/3-opt/double-bridge moves and record every cost-1 edge of every tour
// reached, witnessed by that tour. FIFO order over tours keeps the result
// deterministic.
inline ClosureResult oer_closure(const CostFn& c, const Tour& seed,
                                 const OptimizingEdgeSet& seed_set, ClosureConfig cfg = {}) {
    if (seed_set.optimum < 1) throw InvariantViolation("oer_closure needs a positive optimum");
    if (seed_set.regime != Regime::Positive)
        throw InvariantViolation("oer_closure needs the positive regime");
    validate_edge_set(seed_set, c);
    Tour start = seed.canonical();
    if (start.sorted_vertices() != seed_set.subset)
        throw InvariantViolation("seed tour does not cover the subset");
    if (tour_cost(c, start) != seed_set.optimum)
        throw InvariantViolation("seed tour cost differs from the stated optimum");

    ClosureResult res;
    res.edge_set.regime = Regime::Positive;
    res.edge_set.subset = seed_set.subset;
    res.edge_set.optimum = seed_set.optimum;
    res.edge_set.witnesses = seed_set.witnesses;

    auto record = [&](const Tour& t, unsigned) {
        for (const Edge& e : tour_edges(t))
            if (c(e) == 1 && !res.edge_set.witnesses.count(e)) res.edge_set.witnesses.emplace(e, t);
    };

    std::deque<std::pair<Tour, unsigned>> queue;
    std::unordered_set<std::vector<int>, detail::OrderHash> visited;
    auto enqueue = [&](const Tour& t) {
        if (!visited.insert(t.order()).second) return;
        record(t, seed_set.optimum);
        ++res.tours_discovered;
        queue.emplace_back(t, seed_set.optimum);
    };
    enqueue(start);
    for (const auto& [e, w] : seed_set.witnesses) enqueue(w);

    detail::closure_worklist(
        c, queue, visited, cfg, res, [](unsigned, int delta) { return delta == 0; }, record);

    for (const auto& [e, w] : res.edge_set.witnesses) res.edge_set.edges.push_back(e);
    validate_edge_set(res.edge_set, c);
    return res;
}

// Modified closure for the zero regime. Two pools share one visited set:
// cost-0 tours contribute all of their edges and may step to cost 0 or 1;
// cost-1 tours contribute their single cost-1 edge and may step to cost 1 or
// back down to 0. This realizes the zero/add-one/minus-one/cost-1 move kinds
// in one worklist.
inline ClosureResult moer_closure(const CostFn& c, const Tour& seed, ClosureConfig cfg = {}) {
    Tour start = seed.canonical();
    if (tour_cost(c, start) != 0)
        throw InvariantViolation("moer_closure needs a cost-0 seed tour");

    ClosureResult res;
    res.edge_set.regime = Regime::Zero;
    res.edge_set.subset = start.sorted_vertices();
    res.edge_set.optimum = 0;

    auto record = [&](const Tour& t, unsigned cost) {
        for (const Edge& e : tour_edges(t)) {
            if (c(e) != cost) continue; // cost 0: every edge; cost 1: the one paid edge
            if (!res.edge_set.witnesses.count(e)) res.edge_set.witnesses.emplace(e, t);
        }
    };

    std::deque<std::pair<Tour, unsigned>> queue;
    std::unordered_set<std::vector<int>, detail::OrderHash> visited;
    visited.insert(start.order());
    record(start, 0);
    res.tours_discovered = 1;
    queue.emplace_back(start, 0u);

    detail::closure_worklist(
        c, queue, visited, cfg, res,
        [](unsigned cost, int delta) {
            return cost == 0 ? (delta == 0 || delta == 1) : (delta == 0 || delta == -1);
        },
        record);

    for (const auto& [e, w] : res.edge_set.witnesses) res.edge_set.edges.push_back(e);
    validate_edge_set(res.edge_set, c);
    return res;
}

} // namespace hamgrow
