#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hamgrow/errors.hpp"

namespace hamgrow {

// Undirected edge in canonical form (u < v).
struct Edge {
    int u = 0;
    int v = 0;

    Edge() = default;
    Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {
        if (a == b) throw std::invalid_argument("self-loop edge (" + std::to_string(a) + ")");
        if (a < 0 || b < 0) throw std::invalid_argument("negative vertex id in edge");
    }

    bool contains(int x) const { return u == x || v == x; }
    int other(int x) const { return u == x ? v : u; }

    auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph over vertices 0..n-1. Immutable after construction.
// Adjacency is kept as one bit row per vertex; the sorted edge list is the
// canonical enumeration order everywhere else in the library.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<Edge> edges) : n_(n) {
        if (n < 1) throw std::invalid_argument("graph must have at least one vertex");
        for (const Edge& e : edges) {
            if (e.v >= n) // e.u <= e.v and e.u >= 0 by Edge construction
                throw std::invalid_argument("edge endpoint " + std::to_string(e.v) +
                                            " out of range for n=" + std::to_string(n));
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges_ = std::move(edges);
        words_ = (n + 63) / 64;
        bits_.assign(static_cast<std::size_t>(n) * words_, 0);
        for (const Edge& e : edges_) {
            set_bit(e.u, e.v);
            set_bit(e.v, e.u);
        }
    }

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(int u, int v) const {
        return (bits_[static_cast<std::size_t>(u) * words_ + v / 64] >> (v % 64)) & 1u;
    }

    int degree(int u) const {
        int d = 0;
        for (int w = 0; w < words_; ++w)
            d += __builtin_popcountll(bits_[static_cast<std::size_t>(u) * words_ + w]);
        return d;
    }

    std::vector<int> neighbors(int u) const {
        std::vector<int> out;
        for (int v = 0; v < n_; ++v)
            if (v != u && has_edge(u, v)) out.push_back(v);
        return out;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    void set_bit(int u, int v) {
        bits_[static_cast<std::size_t>(u) * words_ + v / 64] |= 1ULL << (v % 64);
    }

    int n_ = 0;
    int words_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint64_t> bits_;
};

// 0/1 cost function of the TSP reduction: pairs present in the graph cost 0,
// absent pairs cost 1. Total and symmetric over distinct vertices.
class CostFn {
public:
    explicit CostFn(Graph g) : g_(std::move(g)) {}

    unsigned operator()(int u, int v) const {
        if (u == v) throw std::invalid_argument("cost undefined for u == v");
        return g_.has_edge(u, v) ? 0u : 1u;
    }

    unsigned operator()(const Edge& e) const { return (*this)(e.u, e.v); }

    const Graph& graph() const { return g_; }
    int n() const { return g_.n(); }

private:
    Graph g_;
};

inline CostFn reduce_to_tsp(const Graph& g) { return CostFn(g); }

// Plain-graph connectivity (isolated vertices count as their own component).
inline bool graph_connected(const Graph& g) {
    const int n = g.n();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v) {
            if (!seen[v] && g.has_edge(u, v)) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

// Text format: header "<n> <m>", then one "<u> <v>" line per edge.
// '#' lines are comments. Duplicate, out-of-range, or self-loop edges are
// rejected with the offending line number; ids are never remapped.
inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long n = -1, m = -1;

    auto parse_two = [&](const std::string& s, long& a, long& b, const char* what) {
        std::size_t i = 0;
        auto read_long = [&](long& out) {
            std::size_t start = i;
            if (i < s.size() && s[i] == '-') ++i;
            while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
            if (i == start) throw ParseError(lineno, std::string("malformed ") + what);
            out = std::stol(s.substr(start, i - start));
        };
        read_long(a);
        if (i >= s.size() || s[i] != ' ') throw ParseError(lineno, std::string("malformed ") + what);
        ++i;
        read_long(b);
        if (i != s.size()) throw ParseError(lineno, std::string("malformed ") + what);
    };

    std::vector<Edge> edges;
    long seen_edges = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '#') continue;
        if (n < 0) {
            parse_two(line, n, m, "header");
            if (n < 1) throw ParseError(lineno, "vertex count must be >= 1");
            if (m < 0) throw ParseError(lineno, "negative edge count");
            continue;
        }
        if (seen_edges == m) throw ParseError(lineno, "unexpected content after edge list");
        long u, v;
        parse_two(line, u, v, "edge line");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(lineno, "vertex id out of range [0, " + std::to_string(n) + ")");
        if (u == v) throw ParseError(lineno, "self-loop");
        Edge e(static_cast<int>(u), static_cast<int>(v));
        if (std::find(edges.begin(), edges.end(), e) != edges.end())
            throw ParseError(lineno, "duplicate edge");
        edges.push_back(e);
        ++seen_edges;
    }
    ++lineno;
    if (n < 0) throw ParseError(lineno, "missing header");
    if (seen_edges != m)
        throw ParseError(lineno, "expected " + std::to_string(m) + " edges, got " +
                                     std::to_string(seen_edges));
    return Graph(static_cast<int>(n), std::move(edges));
}

inline std::string serialize_graph(const Graph& g) {
    std::string out = std::to_string(g.n()) + " " + std::to_string(g.edge_count()) + "\n";
    for (const Edge& e : g.edges())
        out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
    return out;
}

} // namespace hamgrow
