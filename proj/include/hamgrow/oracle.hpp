#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hamgrow/graph.hpp"
#include "hamgrow/tour.hpp"

namespace hamgrow {

inline constexpr int kHeldKarpCap = 18; // 2^17 * 18 DP bytes
inline constexpr int kEnumerationCap = 11; // (m-1)!/2 tours

// ---------------------------------------------------------------------------
// Hamiltonian cycle search (ground truth for the decision problem)
// ---------------------------------------------------------------------------

namespace detail {

inline bool hc_extend(const Graph& g, std::vector<int>& path, std::vector<char>& used,
                      const std::vector<std::vector<int>>& nbrs) {
    const int n = g.n();
    if (static_cast<int>(path.size()) == n) return g.has_edge(path.back(), path.front());
    for (int v : nbrs[path.back()]) {
        if (used[v]) continue;
        used[v] = 1;
        path.push_back(v);
        if (hc_extend(g, path, used, nbrs)) return true;
        path.pop_back();
        used[v] = 0;
    }
    return false;
}

} // namespace detail

// Backtracking search with degree pruning and lowest-degree-first branching.
// n < 3 is false by convention. The returned witness, when present, uses
// graph edges only.
inline std::pair<bool, std::optional<Tour>> hc_exists(const Graph& g) {
    const int n = g.n();
    if (n < 3) return {false, std::nullopt};
    for (int v = 0; v < n; ++v)
        if (g.degree(v) < 2) return {false, std::nullopt};
    if (!graph_connected(g)) return {false, std::nullopt};

    std::vector<std::vector<int>> nbrs(n);
    for (int v = 0; v < n; ++v) {
        nbrs[v] = g.neighbors(v);
        std::sort(nbrs[v].begin(), nbrs[v].end(),
                  [&](int a, int b) { return std::pair(g.degree(a), a) < std::pair(g.degree(b), b); });
    }
    std::vector<int> path = {0};
    std::vector<char> used(n, 0);
    used[0] = 1;
    if (detail::hc_extend(g, path, used, nbrs)) return {true, Tour(path).canonical()};
    return {false, std::nullopt};
}

// Exact Hamiltonian cycle count by directed-path enumeration (each cycle
// counted once: fixed start 0, second element below last).
inline std::pair<std::uint64_t, std::optional<Tour>> count_hamiltonian_cycles(const Graph& g) {
    const int n = g.n();
    if (n > 12) throw CapacityError("cycle counting capped at n <= 12");
    if (n < 3) return {0, std::nullopt};

    std::uint64_t count = 0;
    std::optional<Tour> first;
    std::vector<int> path = {0};
    std::vector<char> used(n, 0);
    used[0] = 1;

    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(path.size()) == n) {
            if (g.has_edge(path.back(), 0) && path[1] < path.back()) {
                ++count;
                if (!first) first = Tour(path).canonical();
            }
            return;
        }
        for (int v = 1; v < n; ++v) {
            if (used[v] || !g.has_edge(path.back(), v)) continue;
            used[v] = 1;
            path.push_back(v);
            self(self);
            path.pop_back();
            used[v] = 0;
        }
    };
    rec(rec);
    return {count, first};
}

// ---------------------------------------------------------------------------
// Held-Karp subset DP (ground truth for optimal tour cost)
// ---------------------------------------------------------------------------

// Exact minimum 0/1 tour cost over the given vertex subset. State is
// (visited mask, endpoint), anchored at the smallest subset vertex.
inline unsigned held_karp(const CostFn& c, std::vector<int> subset) {
    std::sort(subset.begin(), subset.end());
    const int k = static_cast<int>(subset.size());
    if (k < 3) throw std::invalid_argument("held_karp needs at least 3 vertices");
    if (k > kHeldKarpCap) throw CapacityError("held_karp capped at " + std::to_string(kHeldKarpCap));

    const int rest = k - 1; // local ids 1..k-1; anchor is subset[0]
    const std::uint32_t full = (1u << rest) - 1;
    constexpr std::uint8_t kInf = 0xff;
    std::vector<std::uint8_t> dp((full + 1ull) * rest, kInf);
    auto cost = [&](int i, int j) { return static_cast<std::uint8_t>(c(subset[i], subset[j])); };

    for (int j = 1; j <= rest; ++j) dp[(1u << (j - 1)) * rest + (j - 1)] = cost(0, j);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        for (int j = 1; j <= rest; ++j) {
            if (!(mask & (1u << (j - 1)))) continue;
            const std::uint32_t prev = mask ^ (1u << (j - 1));
            std::uint8_t best = kInf;
            for (int i = 1; i <= rest; ++i) {
                if (!(prev & (1u << (i - 1)))) continue;
                std::uint8_t cand = dp[prev * rest + (i - 1)];
                if (cand != kInf) cand = static_cast<std::uint8_t>(cand + cost(i, j));
                best = std::min(best, cand);
            }
            dp[mask * rest + (j - 1)] = best;
        }
    }
    unsigned best = kInf;
    for (int j = 1; j <= rest; ++j)
        best = std::min(best, static_cast<unsigned>(dp[full * rest + (j - 1)]) +
                                  static_cast<unsigned>(cost(j, 0)));
    return best;
}

// ---------------------------------------------------------------------------
// Exhaustive tour enumeration (ground truth for optimal tour sets)
// ---------------------------------------------------------------------------

// All canonical tours over the subset with cost <= bound, in lexicographic
// order of their canonical sequences. Plain DFS with partial-cost pruning.
inline std::vector<Tour> enumerate_tours_up_to(const CostFn& c, std::vector<int> subset,
                                               unsigned bound) {
    std::sort(subset.begin(), subset.end());
    const int k = static_cast<int>(subset.size());
    if (k < 4) throw std::invalid_argument("enumeration needs at least 4 vertices");
    if (k > kEnumerationCap)
        throw CapacityError("tour enumeration capped at " + std::to_string(kEnumerationCap));

    std::vector<Tour> out;
    std::vector<int> path = {subset[0]};
    std::vector<char> used(k, 0);
    used[0] = 1;

    auto dfs = [&](auto&& self, unsigned partial) -> void {
        if (static_cast<int>(path.size()) == k) {
            const unsigned total = partial + c(path.back(), path.front());
            if (total <= bound && path[1] < path.back()) out.emplace_back(Tour(path));
            return;
        }
        for (int i = 1; i < k; ++i) {
            if (used[i]) continue;
            const unsigned next = partial + c(path.back(), subset[i]);
            if (next > bound) continue;
            used[i] = 1;
            path.push_back(subset[i]);
            self(self, next);
            path.pop_back();
            used[i] = 0;
        }
    };
    dfs(dfs, 0);
    return out;
}

// Exact optimum plus every canonical optimal tour.
inline std::pair<unsigned, std::vector<Tour>> enumerate_optimal_tours(const CostFn& c,
                                                                      const std::vector<int>& subset) {
    const unsigned best = held_karp(c, subset);
    return {best, enumerate_tours_up_to(c, subset, best)};
}

// ---------------------------------------------------------------------------
// Optimizing edge sets
// ---------------------------------------------------------------------------

enum class Regime { Positive, Zero };

// H_m (Positive regime: cost-1 edges on some optimal tour) or the zero-regime
// variant (cost-0 edges on some cost-0 tour plus cost-1 edges on some tour of
// cost exactly 1), each edge certified by one stored witness tour.
struct OptimizingEdgeSet {
    Regime regime = Regime::Positive;
    std::vector<int> subset; // sorted
    unsigned optimum = 0;
    std::vector<Edge> edges; // sorted
    std::map<Edge, Tour> witnesses;

    bool contains(const Edge& e) const {
        return std::binary_search(edges.begin(), edges.end(), e);
    }
};

// Checks every OptimizingEdgeSet invariant; failures are internal errors.
inline void validate_edge_set(const OptimizingEdgeSet& es, const CostFn& c) {
    if ((es.regime == Regime::Positive) != (es.optimum >= 1))
        throw InvariantViolation("edge set regime disagrees with optimum");
    if (!std::is_sorted(es.subset.begin(), es.subset.end()) ||
        std::adjacent_find(es.subset.begin(), es.subset.end()) != es.subset.end())
        throw InvariantViolation("edge set subset not sorted/unique");
    if (!std::is_sorted(es.edges.begin(), es.edges.end()) ||
        std::adjacent_find(es.edges.begin(), es.edges.end()) != es.edges.end())
        throw InvariantViolation("edge list not sorted/unique");
    if (es.edges.size() != es.witnesses.size())
        throw InvariantViolation("edge/witness count mismatch");
    for (const Edge& e : es.edges) {
        auto it = es.witnesses.find(e);
        if (it == es.witnesses.end()) throw InvariantViolation("edge lacks a witness");
        const Tour& w = it->second;
        if (!w.is_canonical()) throw InvariantViolation("witness tour not canonical");
        if (w.sorted_vertices() != es.subset)
            throw InvariantViolation("witness does not cover the subset");
        const auto we = tour_edges(w);
        if (!std::binary_search(we.begin(), we.end(), e))
            throw InvariantViolation("witness does not contain its edge");
        const unsigned wc = tour_cost(c, w);
        if (es.regime == Regime::Positive) {
            if (c(e) != 1) throw InvariantViolation("positive-regime edge has cost 0");
            if (wc != es.optimum) throw InvariantViolation("witness cost differs from optimum");
        } else {
            if (wc != c(e))
                throw InvariantViolation("zero-regime witness cost does not match edge cost");
        }
    }
}

// Exact optimizing edges by full enumeration. Witness per edge is the first
// enumerated tour containing it.
inline OptimizingEdgeSet exact_optimizing_edges(const CostFn& c, std::vector<int> subset) {
    std::sort(subset.begin(), subset.end());
    const unsigned best = held_karp(c, subset);
    OptimizingEdgeSet es;
    es.subset = subset;
    es.optimum = best;
    es.regime = best >= 1 ? Regime::Positive : Regime::Zero;

    const unsigned bound = best >= 1 ? best : 1u;
    const std::vector<Tour> tours = enumerate_tours_up_to(c, subset, bound);
    for (const Tour& t : tours) {
        const unsigned tc = tour_cost(c, t);
        for (const Edge& e : tour_edges(t)) {
            const bool record = best >= 1 ? (tc == best && c(e) == 1)
                                          : (tc == 0 ? c(e) == 0 : c(e) == 1);
            if (record && !es.witnesses.count(e)) es.witnesses.emplace(e, t);
        }
    }
    for (const auto& [e, w] : es.witnesses) es.edges.push_back(e);
    return es;
}

// ---------------------------------------------------------------------------
// Optimizing-vertex graph and its connectivity
// ---------------------------------------------------------------------------

struct OptGraph {
    std::vector<int> vertices; // endpoints of links, sorted
    std::vector<Edge> links;
};

inline OptGraph opt_graph(const OptimizingEdgeSet& es) {
    OptGraph og;
    og.links = es.edges;
    for (const Edge& e : es.edges) {
        og.vertices.push_back(e.u);
        og.vertices.push_back(e.v);
    }
    std::sort(og.vertices.begin(), og.vertices.end());
    og.vertices.erase(std::unique(og.vertices.begin(), og.vertices.end()), og.vertices.end());
    return og;
}

// Connected components of the optimizing-vertex graph, each sorted.
inline std::vector<std::vector<int>> opt_components(const OptGraph& og) {
    std::map<int, std::vector<int>> adj;
    for (int v : og.vertices) adj[v];
    for (const Edge& e : og.links) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<std::vector<int>> comps;
    std::map<int, char> seen;
    for (int v : og.vertices) {
        if (seen[v]) continue;
        std::vector<int> comp, stack = {v};
        seen[v] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int w : adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Empty graphs are connected by convention (the connectivity claim is vacuous
// when there are no optimizing edges).
inline bool is_connected(const OptGraph& og) { return opt_components(og).size() <= 1; }

} // namespace hamgrow
