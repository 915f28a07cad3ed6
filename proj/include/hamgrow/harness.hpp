#pragma once

#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hamgrow/closure.hpp"
#include "hamgrow/generators.hpp"
#include "hamgrow/growth.hpp"
#include "hamgrow/oracle.hpp"
#include "hamgrow/records.hpp"
#include "hamgrow/rng.hpp"

namespace hamgrow {

enum class Campaign { Table1, Closure, EndToEnd, QuadShortcut, Connectivity };
enum class OrderPolicy { Default, Shuffle };

inline const char* campaign_name(Campaign c) {
    switch (c) {
        case Campaign::Table1: return "table1";
        case Campaign::Closure: return "closure";
        case Campaign::EndToEnd: return "end_to_end";
        case Campaign::QuadShortcut: return "quad_shortcut";
        case Campaign::Connectivity: return "connectivity";
    }
    return "?";
}

inline std::optional<Campaign> campaign_from_name(const std::string& s) {
    if (s == "table1") return Campaign::Table1;
    if (s == "closure") return Campaign::Closure;
    if (s == "end_to_end") return Campaign::EndToEnd;
    if (s == "quad_shortcut") return Campaign::QuadShortcut;
    if (s == "connectivity") return Campaign::Connectivity;
    return std::nullopt;
}

struct GeneratorSpec {
    enum class Kind { Gnp, PlantedHamiltonian, Exhaustive } kind = Kind::Gnp;
    double p = 0.5; // inclusion probability (Gnp) or extra-edge probability (Planted)
};

inline std::string generator_name(const GeneratorSpec& gen) {
    switch (gen.kind) {
        case GeneratorSpec::Kind::Gnp: return "gnp(p=" + format_rate(gen.p) + ")";
        case GeneratorSpec::Kind::PlantedHamiltonian:
            return "planted(extra_p=" + format_rate(gen.p) + ")";
        case GeneratorSpec::Kind::Exhaustive: return "exhaustive";
    }
    return "?";
}

struct ExperimentConfig {
    Campaign campaign = Campaign::Table1;
    int n_lo = 5;
    int n_hi = 5;
    GeneratorSpec generator;
    std::uint64_t trials = 0; // ignored by the exhaustive generator
    std::uint64_t master_seed = 0;
    OrderPolicy order_policy = OrderPolicy::Default;
    ClosureConfig closure;
};

inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed ^ index);
}

enum class TrialOutcome { Agreement, Discrepant, SkipCapacity, SkipShortcut, SkipNotApplicable };

struct TrialResult {
    TrialOutcome outcome = TrialOutcome::Agreement;
    std::vector<DiscrepancyRecord> records;
    std::uint64_t budget_exhausted_steps = 0;
};

namespace detail {

inline DiscrepancyRecord base_record(Campaign camp, const std::string& kind, std::uint64_t seed,
                                     const Graph& g, const std::vector<int>& order,
                                     std::optional<int> step_m) {
    DiscrepancyRecord r;
    r.campaign = campaign_name(camp);
    r.kind = kind;
    r.trial_seed = seed;
    r.n = g.n();
    r.graph_edges = g.edges();
    r.vertex_order = order;
    r.step_m = step_m;
    r.witness = json::object();
    return r;
}

inline TrialResult finish(std::vector<DiscrepancyRecord> records,
                          std::uint64_t budget_steps = 0) {
    TrialResult tr;
    tr.outcome = records.empty() ? TrialOutcome::Agreement : TrialOutcome::Discrepant;
    tr.records = std::move(records);
    tr.budget_exhausted_steps = budget_steps;
    return tr;
}

inline TrialResult skip(TrialOutcome outcome) { return TrialResult{outcome, {}, 0}; }

} // namespace detail

// ---------------------------------------------------------------------------
// verify_table1: the predictor against the exact oracle, step by step, with
// the exact edge set at every prefix so closure quality cannot interfere.
// ---------------------------------------------------------------------------

inline TrialResult verify_table1(const Graph& g, std::optional<std::vector<int>> order,
                                 std::uint64_t seed) {
    const int n = g.n();
    if (n < 4 || n > kEnumerationCap) return detail::skip(TrialOutcome::SkipCapacity);
    const CostFn c = reduce_to_tsp(g);
    auto sel = select_initial_quad(c, n);
    if (!sel) return detail::skip(TrialOutcome::SkipShortcut);
    const std::vector<int> ord = order ? *order : default_order(*sel, n);

    std::vector<DiscrepancyRecord> records;
    std::vector<int> prefix(ord.begin(), ord.begin() + 4);
    for (int m = 4; m < n; ++m) {
        OptimizingEdgeSet es = exact_optimizing_edges(c, prefix);
        const int v = ord[m];
        const InsertionContext ctx = insertion_context(prefix, es.optimum, c, v);
        const unsigned predicted = predict_cost(es.optimum, es, ctx);
        std::vector<int> grown = prefix;
        grown.push_back(v);
        const unsigned actual = held_karp(c, grown);
        if (predicted != actual) {
            DiscrepancyRecord r =
                detail::base_record(Campaign::Table1, "cost_mismatch", seed, g, ord, m + 1);
            r.expected = actual;
            r.actual = predicted;
            r.witness = {{"c_m", es.optimum},
                         {"d_star", ctx.d_star},
                         {"omega_size", ctx.omega.size()},
                         {"h_size", es.edges.size()}};
            records.push_back(std::move(r));
        }
        prefix = std::move(grown);
    }
    return detail::finish(std::move(records));
}

// ---------------------------------------------------------------------------
// verify_closure: grow with the closure provider and compare each step's
// edge set against the exact one. A closure edge outside the exact set would
// break the witness soundness argument and aborts the process.
// ---------------------------------------------------------------------------

inline TrialResult verify_closure(const Graph& g, std::optional<std::vector<int>> order,
                                  std::uint64_t seed, const ClosureConfig& cc = {}) {
    const int n = g.n();
    if (n < 4 || n > kEnumerationCap) return detail::skip(TrialOutcome::SkipCapacity);
    const CostFn c = reduce_to_tsp(g);
    auto sel = select_initial_quad(c, n);
    if (!sel) return detail::skip(TrialOutcome::SkipShortcut);
    const std::vector<int> ord = order ? *order : default_order(*sel, n);

    std::vector<DiscrepancyRecord> records;
    std::uint64_t budget_steps = 0;
    GrowthOptions opts{Provider::Closure, cc};
    grow(g, ord, opts, [&](const GrowthState& state, const InsertionContext&) {
        const TraceRow& row = state.trace.back();
        if (row.budget_exhausted) {
            ++budget_steps;
            return; // completeness cannot be judged on a truncated closure
        }
        OptimizingEdgeSet exact = exact_optimizing_edges(c, state.edge_set.subset);
        if (state.optimum != exact.optimum) {
            DiscrepancyRecord r =
                detail::base_record(Campaign::Closure, "cost_mismatch", seed, g, ord, row.m);
            r.expected = exact.optimum;
            r.actual = state.optimum;
            r.witness = {{"predicted", row.predicted}, {"constructed", row.constructed}};
            records.push_back(std::move(r));
            return;
        }
        std::vector<Edge> missing, extra;
        std::set_difference(exact.edges.begin(), exact.edges.end(), state.edge_set.edges.begin(),
                            state.edge_set.edges.end(), std::back_inserter(missing));
        std::set_difference(state.edge_set.edges.begin(), state.edge_set.edges.end(),
                            exact.edges.begin(), exact.edges.end(), std::back_inserter(extra));
        if (!extra.empty())
            throw InvariantViolation("closure produced an edge outside the exact optimizing set");
        if (!missing.empty()) {
            DiscrepancyRecord r = detail::base_record(Campaign::Closure, "closure_incomplete",
                                                      seed, g, ord, row.m);
            r.expected = edges_to_json(exact.edges);
            r.actual = edges_to_json(state.edge_set.edges);
            r.witness = {{"missing", edges_to_json(missing)}};
            records.push_back(std::move(r));
        }
    });
    return detail::finish(std::move(records), budget_steps);
}

// ---------------------------------------------------------------------------
// verify_connectivity: the exact positive-regime edge set at every prefix of
// the default order must form a connected graph on its endpoints.
// ---------------------------------------------------------------------------

inline TrialResult verify_connectivity(const Graph& g, std::uint64_t seed) {
    const int n = g.n();
    if (n < 4 || n > kEnumerationCap) return detail::skip(TrialOutcome::SkipCapacity);
    const CostFn c = reduce_to_tsp(g);
    auto sel = select_initial_quad(c, n);
    if (!sel) return detail::skip(TrialOutcome::SkipShortcut);
    const std::vector<int> ord = default_order(*sel, n);

    std::vector<DiscrepancyRecord> records;
    for (int m = 4; m <= n; ++m) {
        const std::vector<int> prefix(ord.begin(), ord.begin() + m);
        OptimizingEdgeSet es = exact_optimizing_edges(c, prefix);
        if (es.optimum == 0) continue; // zero regime: the claim is about H_m only
        const OptGraph og = opt_graph(es);
        const auto comps = opt_components(og);
        if (comps.size() > 1) {
            DiscrepancyRecord r = detail::base_record(Campaign::Connectivity,
                                                      "optgraph_disconnected", seed, g, ord, m);
            r.expected = 1;
            r.actual = comps.size();
            json jc = json::array();
            for (const auto& comp : comps) jc.push_back(comp);
            r.witness = {{"components", jc}};
            records.push_back(std::move(r));
        }
    }
    return detail::finish(std::move(records));
}

// ---------------------------------------------------------------------------
// verify_quad_shortcut: when every quad has a cost-0 tour the shortcut
// claims multiple Hamiltonian cycles; the oracle counts them.
// ---------------------------------------------------------------------------

inline TrialResult verify_quad_shortcut(const Graph& g, std::uint64_t seed) {
    const int n = g.n();
    if (n < 4 || n > 10) return detail::skip(TrialOutcome::SkipCapacity);
    const CostFn c = reduce_to_tsp(g);
    if (select_initial_quad(c, n)) return detail::skip(TrialOutcome::SkipNotApplicable);

    const auto [count, first] = count_hamiltonian_cycles(g);
    if (count >= 2) return detail::finish({});

    std::vector<DiscrepancyRecord> records;
    const bool none = count == 0;
    DiscrepancyRecord r =
        detail::base_record(Campaign::QuadShortcut,
                            none ? "verdict_mismatch" : "shortcut_claim_violated", seed, g, {},
                            std::nullopt);
    r.expected = none ? 1 : 2; // the claim needs at least this many cycles
    r.actual = count;
    if (first) r.witness = {{"cycle", first->order()}};
    records.push_back(std::move(r));
    return detail::finish(std::move(records));
}

// ---------------------------------------------------------------------------
// verify_end_to_end: the full decision procedure against the backtracking
// oracle, plus every construction mismatch the growth loop logged.
// ---------------------------------------------------------------------------

inline TrialResult verify_end_to_end(const Graph& g, std::optional<std::vector<int>> order,
                                     std::uint64_t seed, const ClosureConfig& cc = {}) {
    const int n = g.n();
    if (n > kHeldKarpCap) return detail::skip(TrialOutcome::SkipCapacity);

    std::vector<int> ord;
    if (order) {
        ord = *order;
    } else if (n >= 4) {
        const CostFn c = reduce_to_tsp(g);
        if (auto sel = select_initial_quad(c, n)) ord = default_order(*sel, n);
    }
    if (ord.empty()) {
        ord.resize(n);
        std::iota(ord.begin(), ord.end(), 0);
    }

    GrowthOptions opts{Provider::Closure, cc};
    const Decision decision =
        n >= 4 ? decide_hamiltonian(g, ord, opts) : decide_hamiltonian(g, std::nullopt, opts);
    const auto [oracle_ham, oracle_witness] = hc_exists(g);

    std::vector<DiscrepancyRecord> records;
    std::uint64_t budget_steps = 0;
    const bool claim_ham = decision.verdict != Verdict::NotHamiltonian;
    if (claim_ham != oracle_ham) {
        DiscrepancyRecord r = detail::base_record(Campaign::EndToEnd, "verdict_mismatch", seed, g,
                                                  ord, std::nullopt);
        r.expected = oracle_ham;
        r.actual = verdict_name(decision.verdict);
        r.witness = {{"final_cost", decision.final_cost ? json(*decision.final_cost) : json()}};
        records.push_back(std::move(r));
    }
    if (decision.state) {
        for (const TraceRow& row : decision.state->trace) {
            if (row.budget_exhausted) ++budget_steps;
            if (!row.construction_mismatch) continue;
            DiscrepancyRecord r = detail::base_record(Campaign::EndToEnd, "construction_mismatch",
                                                      seed, g, ord, row.m);
            r.expected = row.constructed;
            r.actual = row.predicted;
            r.witness = {{"d_star", row.d_star},
                         {"c_star", row.c_star},
                         {"fallback", row.fallback}};
            records.push_back(std::move(r));
        }
    }
    return detail::finish(std::move(records), budget_steps);
}

// ---------------------------------------------------------------------------
// Campaign driver
// ---------------------------------------------------------------------------

inline TrialResult run_verify(Campaign camp, const Graph& g,
                              std::optional<std::vector<int>> order, std::uint64_t seed,
                              const ClosureConfig& cc = {}) {
    switch (camp) {
        case Campaign::Table1: return verify_table1(g, std::move(order), seed);
        case Campaign::Closure: return verify_closure(g, std::move(order), seed, cc);
        case Campaign::Connectivity: return verify_connectivity(g, seed);
        case Campaign::QuadShortcut: return verify_quad_shortcut(g, seed);
        case Campaign::EndToEnd: return verify_end_to_end(g, std::move(order), seed, cc);
    }
    throw std::invalid_argument("unknown campaign");
}

inline std::vector<int> shuffled_order(int n, SplitMix64& rng) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[static_cast<int>(rng.next_below(i + 1))]);
    return order;
}

inline void tally_trial(CampaignReport& rep, const TrialResult& tr) {
    ++rep.trials_run;
    rep.budget_exhausted_steps += tr.budget_exhausted_steps;
    switch (tr.outcome) {
        case TrialOutcome::Agreement: ++rep.agreements; break;
        case TrialOutcome::Discrepant: ++rep.discrepant_trials; break;
        case TrialOutcome::SkipCapacity: ++rep.skip_capacity; break;
        case TrialOutcome::SkipShortcut: ++rep.skip_shortcut; break;
        case TrialOutcome::SkipNotApplicable: ++rep.skip_not_applicable; break;
    }
    for (const DiscrepancyRecord& r : tr.records) ++rep.records_by_kind[r.kind];
}

namespace detail {

inline std::optional<std::vector<int>> draw_order(OrderPolicy policy, int n, SplitMix64& rng) {
    if (policy == OrderPolicy::Default) return std::nullopt;
    return shuffled_order(n, rng);
}

inline void emit(std::ostream& sink, const TrialResult& tr) {
    for (const DiscrepancyRecord& r : tr.records) {
        sink << record_to_line(r);
        if (!sink.good()) throw std::runtime_error("record sink write failure");
    }
}

// All labeled graphs on n vertices in mask order, connected ones only.
template <class F>
void for_each_connected_labeled(int n, F&& f) {
    std::vector<Edge> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    const std::uint64_t masks = 1ull << pairs.size();
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        std::vector<Edge> edges;
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (mask & (1ull << k)) edges.push_back(pairs[k]);
        Graph g(n, std::move(edges));
        if (graph_connected(g)) f(std::move(g));
    }
}

} // namespace detail

// Runs every trial in index order, appends records to the sink as JSONL, and
// aggregates the report. Identical configs produce identical bytes; runtime
// appears only in the report.
inline CampaignReport run_campaign(const ExperimentConfig& cfg, std::ostream& sink) {
    CampaignReport rep;
    rep.campaign = campaign_name(cfg.campaign);
    rep.generator = generator_name(cfg.generator);
    rep.n_lo = cfg.n_lo;
    rep.n_hi = cfg.n_hi;
    rep.trials_requested = cfg.trials;
    rep.master_seed = cfg.master_seed;
    rep.order_policy = cfg.order_policy == OrderPolicy::Default ? "default" : "shuffle";

    if (cfg.n_lo < 1 || cfg.n_hi < cfg.n_lo) throw std::invalid_argument("bad n range");
    const auto start = std::chrono::steady_clock::now();

    if (cfg.generator.kind == GeneratorSpec::Kind::Exhaustive) {
        if (cfg.n_hi > 8) throw std::invalid_argument("exhaustive generator capped at n <= 8");
        std::uint64_t index = 0;
        for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
            detail::for_each_connected_labeled(n, [&](Graph g) {
                const std::uint64_t seed = trial_seed(cfg.master_seed, index);
                SplitMix64 rng(seed);
                auto order = detail::draw_order(cfg.order_policy, n, rng);
                TrialResult tr = run_verify(cfg.campaign, g, std::move(order), seed, cfg.closure);
                tally_trial(rep, tr);
                detail::emit(sink, tr);
                ++index;
            });
        }
    } else {
        const int span = cfg.n_hi - cfg.n_lo + 1;
        for (std::uint64_t i = 0; i < cfg.trials; ++i) {
            const std::uint64_t seed = trial_seed(cfg.master_seed, i);
            SplitMix64 rng(seed);
            const int n = cfg.n_lo + static_cast<int>(i % static_cast<std::uint64_t>(span));
            const std::uint64_t gen_seed = rng.next();
            Graph g = cfg.generator.kind == GeneratorSpec::Kind::Gnp
                          ? gen_gnp(n, cfg.generator.p, gen_seed)
                          : gen_planted_hamiltonian(n, cfg.generator.p, gen_seed);
            auto order = detail::draw_order(cfg.order_policy, n, rng);
            TrialResult tr = run_verify(cfg.campaign, g, std::move(order), seed, cfg.closure);
            tally_trial(rep, tr);
            detail::emit(sink, tr);
        }
    }

    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

struct ReplayResult {
    bool reproduced = false;
    std::string message;
};

// Re-runs the embedded trial and looks for a regenerated record identical to
// the original. Budget-sensitive campaigns replay at the default budget, the
// only one the CLI emits.
inline ReplayResult replay(const DiscrepancyRecord& record) {
    const auto camp = campaign_from_name(record.campaign);
    if (!camp) return {false, "unknown campaign " + record.campaign};
    Graph g = graph_from_record(record);
    std::optional<std::vector<int>> order;
    if (static_cast<int>(record.vertex_order.size()) == record.n) order = record.vertex_order;

    TrialResult tr = run_verify(*camp, g, std::move(order), record.trial_seed);
    for (const DiscrepancyRecord& r : tr.records)
        if (records_equal(r, record)) return {true, "reproduced"};
    return {false, "no regenerated record matches (got " + std::to_string(tr.records.size()) +
                       " records)"};
}

} // namespace hamgrow
