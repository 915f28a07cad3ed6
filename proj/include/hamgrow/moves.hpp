#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "hamgrow/graph.hpp"
#include "hamgrow/tour.hpp"

namespace hamgrow {

enum class MoveKind { TwoOpt, ThreeOpt, DoubleBridge };

inline const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::TwoOpt: return "two_opt";
        case MoveKind::ThreeOpt: return "three_opt";
        case MoveKind::DoubleBridge: return "double_bridge";
    }
    return "?";
}

// One reconnection applied to a fixed current tour. `removed` are tour edges
// of the source, `added` the replacements, `result` the canonical outcome.
struct Move {
    MoveKind kind;
    std::vector<Edge> removed;
    std::vector<Edge> added;
    Tour result;
};

namespace detail {

template <std::size_t K>
bool exchange_is_pure(std::array<Edge, K>& out, std::array<Edge, K>& in) {
    std::sort(out.begin(), out.end());
    std::sort(in.begin(), in.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) return false;
    if (std::adjacent_find(in.begin(), in.end()) != in.end()) return false;
    std::array<Edge, K> meet;
    auto end = std::set_intersection(out.begin(), out.end(), in.begin(), in.end(), meet.begin());
    return end == meet.begin();
}

} // namespace detail

// ---------------------------------------------------------------------------
// 2-opt: remove two non-adjacent tour edges, reverse the enclosed segment.
// Every position pair i < j with non-adjacent cut edges is visited exactly
// once, so a tour of m vertices yields m(m-3)/2 candidates.
// ---------------------------------------------------------------------------

template <class F>
void for_each_two_opt(const Tour& t, F&& f) {
    const int m = t.size();
    const auto& o = t.order();
    for (int i = 0; i + 1 < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (j == i + 1 || (i == 0 && j == m - 1)) continue;
            const int jn = (j + 1) % m;
            std::array<Edge, 2> out = {Edge(o[i], o[i + 1]), Edge(o[j], o[jn])};
            std::array<Edge, 2> in = {Edge(o[i], o[j]), Edge(o[i + 1], o[jn])};
            if (!detail::exchange_is_pure(out, in)) continue;
            auto realize = [&]() {
                std::vector<int> next = o;
                std::reverse(next.begin() + i + 1, next.begin() + j + 1);
                return Tour(std::move(next)).canonical();
            };
            f(out, in, realize);
        }
    }
}

// ---------------------------------------------------------------------------
// 3-opt: remove three tour edges and reconnect the segments so that all three
// are actually replaced. With the tour written prefix+A+B+suffix the four
// reconnections below are the only ones no 2-opt can produce.
// ---------------------------------------------------------------------------

template <class F>
void for_each_three_opt(const Tour& t, F&& f) {
    const int m = t.size();
    const auto& o = t.order();
    for (int i = 0; i + 2 < m; ++i) {
        for (int j = i + 1; j + 1 < m; ++j) {
            for (int k = j + 1; k < m; ++k) {
                const int kn = (k + 1) % m;
                const int p = o[i], as = o[i + 1], ae = o[j];
                const int bs = o[j + 1], be = o[k], s = o[kn];
                std::array<Edge, 3> base = {Edge(p, as), Edge(ae, bs), Edge(be, s)};

                struct Variant {
                    std::array<Edge, 3> in;
                    bool rev_a, rev_b, swap_ab;
                };
                const Variant variants[4] = {
                    {{Edge(p, ae), Edge(as, be), Edge(bs, s)}, true, true, false},
                    {{Edge(p, bs), Edge(be, as), Edge(ae, s)}, false, false, true},
                    {{Edge(p, bs), Edge(be, ae), Edge(as, s)}, true, false, true},
                    {{Edge(p, be), Edge(bs, as), Edge(ae, s)}, false, true, true},
                };
                for (const Variant& var : variants) {
                    std::array<Edge, 3> out = base;
                    std::array<Edge, 3> in = var.in;
                    if (!detail::exchange_is_pure(out, in)) continue;
                    auto realize = [&, var]() {
                        std::vector<int> a(o.begin() + i + 1, o.begin() + j + 1);
                        std::vector<int> b(o.begin() + j + 1, o.begin() + k + 1);
                        if (var.rev_a) std::reverse(a.begin(), a.end());
                        if (var.rev_b) std::reverse(b.begin(), b.end());
                        std::vector<int> next(o.begin(), o.begin() + i + 1);
                        const auto& first = var.swap_ab ? b : a;
                        const auto& second = var.swap_ab ? a : b;
                        next.insert(next.end(), first.begin(), first.end());
                        next.insert(next.end(), second.begin(), second.end());
                        next.insert(next.end(), o.begin() + k + 1, o.end());
                        return Tour(std::move(next)).canonical();
                    };
                    f(out, in, realize);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Double bridge: cut the tour into four arcs A1 A2 A3 A4 (cut after positions
// p1 < p2 < p3 < p4) and reconnect as A1 A4 A3 A2, all arcs kept forward.
// Candidates where fewer than four edges actually change are dropped.
// ---------------------------------------------------------------------------

template <class F>
void for_each_double_bridge(const Tour& t, F&& f) {
    const int m = t.size();
    const auto& o = t.order();
    for (int p1 = 0; p1 + 3 < m; ++p1) {
        for (int p2 = p1 + 1; p2 + 2 < m; ++p2) {
            for (int p3 = p2 + 1; p3 + 1 < m; ++p3) {
                for (int p4 = p3 + 1; p4 < m; ++p4) {
                    const int wrap = (p4 + 1) % m;
                    std::array<Edge, 4> out = {Edge(o[p1], o[p1 + 1]), Edge(o[p2], o[p2 + 1]),
                                               Edge(o[p3], o[p3 + 1]), Edge(o[p4], o[wrap])};
                    std::array<Edge, 4> in = {Edge(o[p1], o[p3 + 1]), Edge(o[p4], o[p2 + 1]),
                                              Edge(o[p3], o[p1 + 1]), Edge(o[p2], o[wrap])};
                    if (!detail::exchange_is_pure(out, in)) continue;
                    auto realize = [&]() {
                        std::vector<int> next;
                        next.reserve(m);
                        auto arc = [&](int from, int to) {
                            for (int x = from; x <= to; ++x) next.push_back(o[x]);
                        };
                        if (p4 + 1 < m) arc(p4 + 1, m - 1);
                        arc(0, p1);
                        arc(p3 + 1, p4);
                        arc(p2 + 1, p3);
                        arc(p1 + 1, p2);
                        return Tour(std::move(next)).canonical();
                    };
                    f(out, in, realize);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Materialized move lists
// ---------------------------------------------------------------------------

template <std::size_t K>
Move make_move(MoveKind kind, const std::array<Edge, K>& out, const std::array<Edge, K>& in,
               Tour result) {
    return Move{kind, std::vector<Edge>(out.begin(), out.end()),
                std::vector<Edge>(in.begin(), in.end()), std::move(result)};
}

inline std::vector<Move> two_opt_moves(const Tour& t) {
    std::vector<Move> ms;
    for_each_two_opt(t, [&](const auto& out, const auto& in, auto&& realize) {
        ms.push_back(make_move(MoveKind::TwoOpt, out, in, realize()));
    });
    return ms;
}

// Distinct cut/reconnection choices can land on the same cycle, so the list
// is deduplicated by resulting tour.
inline std::vector<Move> three_opt_moves(const Tour& t) {
    std::vector<Move> ms;
    std::set<Tour> seen;
    for_each_three_opt(t, [&](const auto& out, const auto& in, auto&& realize) {
        Tour r = realize();
        if (!seen.insert(r).second) return;
        ms.push_back(make_move(MoveKind::ThreeOpt, out, in, std::move(r)));
    });
    return ms;
}

inline std::vector<Move> double_bridge_moves(const Tour& t) {
    std::vector<Move> ms;
    for_each_double_bridge(t, [&](const auto& out, const auto& in, auto&& realize) {
        ms.push_back(make_move(MoveKind::DoubleBridge, out, in, realize()));
    });
    return ms;
}

inline std::vector<Move> all_moves(const Tour& t) {
    std::vector<Move> ms = two_opt_moves(t);
    std::vector<Move> three = three_opt_moves(t);
    std::vector<Move> bridge = double_bridge_moves(t);
    ms.insert(ms.end(), std::make_move_iterator(three.begin()), std::make_move_iterator(three.end()));
    ms.insert(ms.end(), std::make_move_iterator(bridge.begin()), std::make_move_iterator(bridge.end()));
    return ms;
}

} // namespace hamgrow
