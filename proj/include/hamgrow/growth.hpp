#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "hamgrow/closure.hpp"
#include "hamgrow/graph.hpp"
#include "hamgrow/oracle.hpp"
#include "hamgrow/tour.hpp"

namespace hamgrow {

enum class Provider { Closure, OracleExact };

struct GrowthOptions {
    Provider provider = Provider::Closure;
    ClosureConfig closure;
};

// Insertion profile of one new vertex against the absorbed subset: d_star is
// the cheapest way to wire it between two subset vertices, omega the pairs
// achieving it, omega_s the pairs costing one more (tracked only when the
// current optimum is positive and d_star is 0, the one predictor row that
// consults it).
struct InsertionContext {
    int new_vertex = -1;
    unsigned d_star = 0;
    std::vector<Edge> omega;
    std::vector<Edge> omega_s;
    std::vector<int> zero_partners; // sorted subset vertices at cost 0 from new_vertex
};

struct TraceRow {
    int m = 0; // subset size after the insertion
    unsigned d_star = 0;
    std::size_t omega_size = 0;
    unsigned c_star = 0; // adopted optimum after the step
    std::size_t h_size = 0;
    unsigned predicted = 0;
    unsigned constructed = 0;
    bool construction_mismatch = false;
    bool fallback = false;
    bool budget_exhausted = false;
};

struct GrowthState {
    std::vector<int> subset; // absorption order
    unsigned optimum = 0;
    OptimizingEdgeSet edge_set;
    Provider provider = Provider::Closure;
    Tour current;
    std::vector<TraceRow> trace;
};

enum class Verdict { Hamiltonian, NotHamiltonian, HamiltonianByQuadShortcut };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Hamiltonian: return "hamiltonian";
        case Verdict::NotHamiltonian: return "not_hamiltonian";
        case Verdict::HamiltonianByQuadShortcut: return "hamiltonian_by_quad_shortcut";
    }
    return "?";
}

struct Decision {
    Verdict verdict = Verdict::NotHamiltonian;
    std::optional<Tour> witness;
    std::optional<unsigned> final_cost;
    std::optional<GrowthState> state;
};

// ---------------------------------------------------------------------------
// Initial quad
// ---------------------------------------------------------------------------

struct QuadSelection {
    std::array<int, 4> quad;
    unsigned optimum = 0;
    OptimizingEdgeSet edge_set;
};

// First 4-subset (lexicographic) whose 4-vertex tour optimum is positive,
// with its exact edge set from the three-tour enumeration. nullopt means
// every quad already has a cost-0 tour, the input to the multiple-cycles
// shortcut claim.
inline std::optional<QuadSelection> select_initial_quad(const CostFn& c, int n) {
    if (n < 4) throw std::invalid_argument("quad selection needs n >= 4");
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int d = b + 1; d < n; ++d)
                for (int e = d + 1; e < n; ++e) {
                    const std::vector<int> quad = {a, b, d, e};
                    OptimizingEdgeSet es = exact_optimizing_edges(c, quad);
                    if (es.optimum >= 1)
                        return QuadSelection{{a, b, d, e}, es.optimum, std::move(es)};
                }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Insertion context and the cost predictor
// ---------------------------------------------------------------------------

inline InsertionContext insertion_context(const std::vector<int>& subset, unsigned optimum,
                                          const CostFn& c, int v_new) {
    InsertionContext ctx;
    ctx.new_vertex = v_new;
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    for (int u : sorted)
        if (c(v_new, u) == 0) ctx.zero_partners.push_back(u);

    const std::size_t z = ctx.zero_partners.size();
    ctx.d_star = z >= 2 ? 0 : (z == 1 ? 1 : 2);

    auto is_zero = [&](int u) { return c(v_new, u) == 0; };
    if (ctx.d_star == 0) {
        for (std::size_t i = 0; i < z; ++i)
            for (std::size_t j = i + 1; j < z; ++j)
                ctx.omega.emplace_back(ctx.zero_partners[i], ctx.zero_partners[j]);
        if (optimum >= 1)
            for (int a : ctx.zero_partners)
                for (int u : sorted)
                    if (!is_zero(u)) ctx.omega_s.emplace_back(a, u);
    } else if (ctx.d_star == 1) {
        const int a = ctx.zero_partners.front();
        for (int u : sorted)
            if (u != a) ctx.omega.emplace_back(a, u);
    } else {
        for (std::size_t i = 0; i < sorted.size(); ++i)
            for (std::size_t j = i + 1; j < sorted.size(); ++j)
                ctx.omega.emplace_back(sorted[i], sorted[j]);
    }
    std::sort(ctx.omega.begin(), ctx.omega.end());
    std::sort(ctx.omega_s.begin(), ctx.omega_s.end());
    return ctx;
}

inline InsertionContext insertion_context(const GrowthState& state, const CostFn& c, int v_new) {
    return insertion_context(state.subset, state.optimum, c, v_new);
}

namespace detail {

inline bool meets(const OptimizingEdgeSet& es, const std::vector<Edge>& pairs) {
    return std::any_of(pairs.begin(), pairs.end(), [&](const Edge& e) { return es.contains(e); });
}

} // namespace detail

// The predictor table for the optimum after absorbing one vertex, split on
// d_star, the current optimum, and whether optimizing edges meet omega
// (or omega_s in the one row that needs it).
inline unsigned predict_cost(unsigned c_m, const OptimizingEdgeSet& edge_set,
                             const InsertionContext& ctx) {
    const bool hits_omega = detail::meets(edge_set, ctx.omega);
    switch (ctx.d_star) {
        case 0:
            if (c_m == 0) return hits_omega ? 0 : 1;
            if (hits_omega) return c_m - 1;
            return detail::meets(edge_set, ctx.omega_s) ? c_m : c_m + 1;
        case 1:
            if (c_m == 0) return 1;
            return hits_omega ? c_m : c_m + 1;
        default:
            return c_m == 0 ? 2 : c_m + 1;
    }
}

// ---------------------------------------------------------------------------
// Tour construction
// ---------------------------------------------------------------------------

struct ConstructionResult {
    Tour tour;
    bool fallback = false;
};

namespace detail {

// First stored edge (canonical order) whose pair is listed in `pairs`.
inline std::optional<Edge> first_stored(const OptimizingEdgeSet& es,
                                        const std::vector<Edge>& pairs) {
    for (const Edge& e : pairs)
        if (es.contains(e)) return e;
    return std::nullopt;
}

// First stored edge incident to `v` passing `pred`, scanning canonical order.
template <class Pred>
std::optional<Edge> first_incident(const OptimizingEdgeSet& es, int v, Pred&& pred) {
    for (const Edge& e : es.edges)
        if (e.contains(v) && pred(e)) return e;
    return std::nullopt;
}

inline Tour splice_into_stored(const OptimizingEdgeSet& es, const Edge& e, int v) {
    return splice_vertex(es.witnesses.at(e), e.u, e.v, v);
}

// Neighbors of `a` in witness tour w, ascending.
inline std::array<int, 2> tour_neighbors(const Tour& w, int a) {
    const auto& o = w.order();
    const int m = w.size();
    for (int i = 0; i < m; ++i)
        if (o[i] == a) {
            int x = o[(i + m - 1) % m], y = o[(i + 1) % m];
            return {std::min(x, y), std::max(x, y)};
        }
    throw InvariantViolation("vertex missing from witness tour");
}

} // namespace detail

// Builds the m+1 tour for the new vertex by splicing it into a stored
// witness, following the case split on d_star. Every choice point picks the
// first candidate in canonical order, so construction is deterministic. When
// no case-prescribed splice point exists the first stored witness is used
// and the fallback flag is set; cost deviations from `predicted` are the
// caller's to record.
inline ConstructionResult construct_tour(const GrowthState& state, const CostFn& c, int v_new,
                                         const InsertionContext& ctx, unsigned predicted) {
    (void)predicted;
    const OptimizingEdgeSet& es = state.edge_set;
    if (es.edges.empty() || es.witnesses.empty())
        throw InvariantViolation("construction needs a non-empty edge set");
    const unsigned c_m = state.optimum;

    if (ctx.d_star == 2) {
        // No cost-0 partner: any splice adds 2, so take the first stored edge.
        return {detail::splice_into_stored(es, es.edges.front(), v_new), false};
    }

    if (ctx.d_star == 1) {
        const int vl = ctx.zero_partners.front();
        if (c_m == 0) {
            // Splice beside the partner in a cost-0 witness.
            if (auto e = detail::first_incident(es, vl, [&](const Edge& e) { return c(e) == 0; }))
                return {detail::splice_into_stored(es, *e, v_new), false};
        } else {
            if (auto e = detail::first_stored(es, ctx.omega))
                return {detail::splice_into_stored(es, *e, v_new), false};
            // No optimizing edge at the partner: splice beside it in any
            // witness; both its witness edges cost 0 there.
            const Edge anchor = es.edges.front();
            const Tour& w = es.witnesses.at(anchor);
            const auto nb = detail::tour_neighbors(w, vl);
            return {splice_vertex(w, vl, nb[0], v_new), false};
        }
    }

    if (ctx.d_star == 0) {
        if (auto e = detail::first_stored(es, ctx.omega))
            return {detail::splice_into_stored(es, *e, v_new), false};
        if (c_m == 0) {
            // No omega pair stored: splice beside the first partner with a
            // stored cost-0 edge.
            for (int a : ctx.zero_partners)
                if (auto e = detail::first_incident(es, a, [&](const Edge& e) { return c(e) == 0; }))
                    return {detail::splice_into_stored(es, *e, v_new), false};
        } else {
            if (auto e = detail::first_stored(es, ctx.omega_s))
                return {detail::splice_into_stored(es, *e, v_new), false};
            // Both intersections empty: splice beside the first partner in
            // the first witness, preferring the cheaper neighbor.
            const Edge anchor = es.edges.front();
            const Tour& w = es.witnesses.at(anchor);
            const int a = ctx.zero_partners.front();
            const auto nb = detail::tour_neighbors(w, a);
            const int x = c(v_new, nb[0]) <= c(v_new, nb[1]) ? nb[0] : nb[1];
            return {splice_vertex(w, a, x, v_new), false};
        }
    }

    // Defensive: no case matched its prescribed structure.
    const Edge anchor = es.edges.front();
    return {detail::splice_into_stored(es, anchor, v_new), true};
}

// ---------------------------------------------------------------------------
// Edge-set rebuild after one insertion
// ---------------------------------------------------------------------------

namespace detail {

inline OptimizingEdgeSet seed_set_from_tour(const CostFn& c, const Tour& t, unsigned cost) {
    OptimizingEdgeSet es;
    es.regime = Regime::Positive;
    es.subset = t.sorted_vertices();
    es.optimum = cost;
    for (const Edge& e : tour_edges(t))
        if (c(e) == 1) {
            es.edges.push_back(e);
            es.witnesses.emplace(e, t);
        }
    return es;
}

} // namespace detail

struct RebuildResult {
    OptimizingEdgeSet edge_set;
    unsigned optimum = 0;
    bool budget_exhausted = false;
};

// Closure provider: seed the regime-appropriate closure from the constructed
// tour at its actual cost. OracleExact provider: take the exact sets, caps
// permitting.
inline RebuildResult rebuild_edge_set(Provider provider, const CostFn& c, const Tour& new_tour,
                                      const ClosureConfig& cfg) {
    const Tour tour = new_tour.canonical();
    if (provider == Provider::OracleExact) {
        OptimizingEdgeSet es = exact_optimizing_edges(c, tour.sorted_vertices());
        const unsigned optimum = es.optimum;
        return {std::move(es), optimum, false};
    }
    const unsigned cost = tour_cost(c, tour);
    ClosureResult res = cost == 0
                            ? moer_closure(c, tour, cfg)
                            : oer_closure(c, tour, detail::seed_set_from_tour(c, tour, cost), cfg);
    return {std::move(res.edge_set), cost, res.budget_exhausted};
}

inline OptimizingEdgeSet rebuild_edge_set(const GrowthState& state, const CostFn& c,
                                          const Tour& new_tour, unsigned predicted) {
    (void)predicted;
    return rebuild_edge_set(state.provider, c, new_tour, ClosureConfig{}).edge_set;
}

// ---------------------------------------------------------------------------
// The growth loop
// ---------------------------------------------------------------------------

// Called after every completed insertion with the updated state.
using StepObserver = std::function<void(const GrowthState&, const InsertionContext&)>;

inline GrowthState initial_state(const CostFn& c, const std::vector<int>& first_four,
                                 Provider provider) {
    std::vector<int> quad = first_four;
    auto [optimum, tours] = enumerate_optimal_tours(c, quad);
    if (tours.empty()) throw InvariantViolation("no tour on the initial quad");
    OptimizingEdgeSet es = exact_optimizing_edges(c, quad);
    return GrowthState{first_four, optimum, std::move(es), provider, tours.front(), {}};
}

inline std::vector<int> default_order(const QuadSelection& sel, int n) {
    std::vector<int> order(sel.quad.begin(), sel.quad.end());
    for (int v = 0; v < n; ++v)
        if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
    return order;
}

// Runs the absorption loop over `order` (first four vertices form the
// starting subset, which may sit in either regime). The observer, when
// given, fires after each insertion.
inline GrowthState grow(const Graph& g, const std::vector<int>& order, GrowthOptions opts = {},
                        const StepObserver& observer = {}) {
    const int n = g.n();
    if (n < 4) throw std::invalid_argument("growth needs n >= 4");
    {
        std::vector<int> check = order;
        std::sort(check.begin(), check.end());
        if (static_cast<int>(check.size()) != n)
            throw std::invalid_argument("order must cover all vertices");
        for (int v = 0; v < n; ++v)
            if (check[v] != v) throw std::invalid_argument("order must cover all vertices");
    }
    if (opts.provider == Provider::OracleExact && n > kEnumerationCap)
        throw CapacityError("exact provider capped at n <= " + std::to_string(kEnumerationCap));

    const CostFn c = reduce_to_tsp(g);
    GrowthState state =
        initial_state(c, std::vector<int>(order.begin(), order.begin() + 4), opts.provider);

    for (int m = 4; m < n; ++m) {
        const int v = order[m];
        const InsertionContext ctx = insertion_context(state, c, v);
        const unsigned predicted = predict_cost(state.optimum, state.edge_set, ctx);
        ConstructionResult built = construct_tour(state, c, v, ctx, predicted);
        const unsigned constructed = tour_cost(c, built.tour);

        RebuildResult rebuilt = rebuild_edge_set(opts.provider, c, built.tour, opts.closure);
        const bool mismatch = constructed != (opts.provider == Provider::OracleExact
                                                  ? rebuilt.optimum
                                                  : predicted);

        state.subset.push_back(v);
        state.optimum = rebuilt.optimum;
        state.edge_set = std::move(rebuilt.edge_set);
        state.current = built.tour.canonical();
        state.trace.push_back(TraceRow{m + 1, ctx.d_star, ctx.omega.size(), state.optimum,
                                       state.edge_set.edges.size(), predicted, constructed,
                                       mismatch, built.fallback, rebuilt.budget_exhausted});
        if (observer) observer(state, ctx);
    }
    return state;
}

inline GrowthState grow(const Graph& g, GrowthOptions opts = {},
                        const StepObserver& observer = {}) {
    const CostFn c = reduce_to_tsp(g);
    auto sel = select_initial_quad(c, g.n());
    if (!sel) throw InvariantViolation("grow called on an all-zero-quad graph");
    return grow(g, default_order(*sel, g.n()), opts, observer);
}

// ---------------------------------------------------------------------------
// The decision procedure
// ---------------------------------------------------------------------------

namespace detail {

inline void verify_cycle_witness(const Graph& g, const Tour& t) {
    const int m = static_cast<int>(t.size());
    if (m != g.n()) throw InvariantViolation("witness does not cover the graph");
    const auto& o = t.order();
    for (int i = 0; i < m; ++i)
        if (!g.has_edge(o[i], o[(i + 1) % m]))
            throw InvariantViolation("witness uses a non-edge");
}

inline Tour zero_cost_tour(const GrowthState& state, const CostFn& c) {
    if (tour_cost(c, state.current) == 0) return state.current;
    for (const auto& [e, w] : state.edge_set.witnesses)
        if (tour_cost(c, w) == 0) return w;
    throw InvariantViolation("zero optimum without a cost-0 tour");
}

} // namespace detail

// n < 3 and n = 3 are settled directly; otherwise the quad shortcut is
// consulted and the growth loop runs. A Hamiltonian verdict always carries a
// witness re-verified against the input graph's adjacency; the shortcut
// verdict and NotHamiltonian are the algorithm's unverified claims.
inline Decision decide_hamiltonian(const Graph& g,
                                   const std::optional<std::vector<int>>& order = std::nullopt,
                                   GrowthOptions opts = {}) {
    const int n = g.n();
    if (n < 3) return Decision{Verdict::NotHamiltonian, std::nullopt, std::nullopt, std::nullopt};
    if (n == 3) {
        const unsigned cost = 3 - static_cast<unsigned>(g.edge_count());
        if (cost == 0) {
            Tour t(std::vector<int>{0, 1, 2});
            detail::verify_cycle_witness(g, t);
            return Decision{Verdict::Hamiltonian, t, 0u, std::nullopt};
        }
        return Decision{Verdict::NotHamiltonian, std::nullopt, cost, std::nullopt};
    }

    const CostFn c = reduce_to_tsp(g);
    auto sel = select_initial_quad(c, n);
    if (!sel)
        return Decision{Verdict::HamiltonianByQuadShortcut, std::nullopt, std::nullopt,
                        std::nullopt};

    GrowthState state = order ? grow(g, *order, opts) : grow(g, default_order(*sel, n), opts);
    if (state.optimum == 0) {
        Tour witness = detail::zero_cost_tour(state, c);
        detail::verify_cycle_witness(g, witness);
        return Decision{Verdict::Hamiltonian, witness, 0u, std::move(state)};
    }
    const unsigned cost = state.optimum;
    return Decision{Verdict::NotHamiltonian, std::nullopt, cost, std::move(state)};
}

} // namespace hamgrow
