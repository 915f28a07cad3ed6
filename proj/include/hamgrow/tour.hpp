#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "hamgrow/graph.hpp"

namespace hamgrow {

// Cyclic visiting order of at least three distinct vertices. The canonical
// representative of a rotation/reflection class starts at the smallest
// vertex and runs in the direction whose second element is smaller; sets of
// canonical tours therefore deduplicate whole cycle classes exactly.
class Tour {
public:
    explicit Tour(std::vector<int> order) : order_(std::move(order)) {
        if (order_.size() < 3) throw std::invalid_argument("tour must visit at least 3 vertices");
        std::vector<int> sorted(order_);
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("tour repeats a vertex");
        if (sorted.front() < 0) throw std::invalid_argument("negative vertex id in tour");
    }

    std::size_t size() const { return order_.size(); }
    const std::vector<int>& order() const { return order_; }
    int at(std::size_t i) const { return order_[i]; }

    bool is_canonical() const {
        auto mn = std::min_element(order_.begin(), order_.end());
        return mn == order_.begin() && order_[1] < order_.back();
    }

    Tour canonical() const {
        if (is_canonical()) return *this;
        const std::size_t m = order_.size();
        std::size_t s =
            static_cast<std::size_t>(std::min_element(order_.begin(), order_.end()) - order_.begin());
        std::vector<int> fwd(m), rev(m);
        for (std::size_t i = 0; i < m; ++i) {
            fwd[i] = order_[(s + i) % m];
            rev[i] = order_[(s + m - i) % m];
        }
        return Tour(fwd[1] < rev[1] ? std::move(fwd) : std::move(rev));
    }

    std::vector<int> sorted_vertices() const {
        std::vector<int> s(order_);
        std::sort(s.begin(), s.end());
        return s;
    }

    // Tours compare as cycle classes, not as raw sequences.
    bool operator==(const Tour& o) const {
        return canonical().order_ == o.canonical().order_;
    }
    bool operator<(const Tour& o) const {
        return canonical().order_ < o.canonical().order_;
    }

private:
    std::vector<int> order_;
};

inline Tour canonicalize(const Tour& t) { return t.canonical(); }

// The m undirected edges of the cyclic order, canonical and sorted.
inline std::vector<Edge> tour_edges(const Tour& t) {
    const std::size_t m = t.size();
    std::vector<Edge> es;
    es.reserve(m);
    for (std::size_t i = 0; i < m; ++i) es.emplace_back(t.at(i), t.at((i + 1) % m));
    std::sort(es.begin(), es.end());
    return es;
}

inline unsigned tour_cost(const CostFn& c, const Tour& t) {
    const std::size_t m = t.size();
    unsigned total = 0;
    for (std::size_t i = 0; i < m; ++i) total += c(t.at(i), t.at((i + 1) % m));
    return total;
}

// Replace tour edge (a,b) by the path a-v-b. a and b must be cyclically
// adjacent in t and v must not occur in t.
inline Tour splice_vertex(const Tour& t, int a, int b, int v) {
    const std::size_t m = t.size();
    std::vector<int> out;
    out.reserve(m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        int x = t.at(i), y = t.at((i + 1) % m);
        out.push_back(x);
        if ((x == a && y == b) || (x == b && y == a)) {
            out.push_back(v);
            for (std::size_t j = i + 1; j < m; ++j) out.push_back(t.at(j));
            return Tour(std::move(out)).canonical();
        }
    }
    throw InvariantViolation("splice_vertex: (" + std::to_string(a) + "," + std::to_string(b) +
                             ") is not a tour edge");
}

inline std::string tour_to_string(const Tour& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(t.at(i));
    }
    return s;
}

} // namespace hamgrow
