#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "hamgrow/graph.hpp"
#include "hamgrow/rng.hpp"

namespace hamgrow {

// Each canonical pair (u < v in lexicographic order) is included
// independently with probability p. One RNG draw per pair, so the stream is
// reproducible per (n, p, seed).
inline Graph gen_gnp(int n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0,1]");
    SplitMix64 rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_double() < p) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

// A seeded random cyclic permutation's edges, then every remaining pair with
// probability extra_p. Hamiltonian by construction.
inline Graph gen_planted_hamiltonian(int n, double extra_p, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("planted cycle needs n >= 3");
    if (extra_p < 0.0 || extra_p > 1.0) throw std::invalid_argument("extra_p must lie in [0,1]");
    SplitMix64 rng(seed);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[static_cast<int>(rng.next_below(i + 1))]);

    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(perm[i], perm[(i + 1) % n]);
    std::sort(edges.begin(), edges.end());
    Graph cycle(n, edges);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (cycle.has_edge(u, v)) continue;
            if (rng.next_double() < extra_p) edges.emplace_back(u, v);
        }
    return Graph(n, std::move(edges));
}

inline Graph path_graph(int n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(edges));
}

inline Graph complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

// K_{1,n-1} with center 0.
inline Graph star_graph(int n) {
    if (n < 2) throw std::invalid_argument("star needs n >= 2");
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
    return Graph(n, std::move(edges));
}

// Vertices 0-4 outer cycle, 5-9 inner pentagram, spokes i <-> i+5.
inline Graph petersen_graph() {
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return Graph(10, std::move(edges));
}

} // namespace hamgrow
