#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamgrow/graph.hpp"

namespace hamgrow {

using json = nlohmann::ordered_json;

inline constexpr int kRecordSchemaVersion = 1;

// One self-contained disagreement: everything needed to re-run the trial is
// embedded, so a record file outlives its generating config.
struct DiscrepancyRecord {
    int schema_version = kRecordSchemaVersion;
    std::string campaign;
    std::string kind;
    std::uint64_t trial_seed = 0;
    int n = 0;
    std::vector<Edge> graph_edges;
    std::vector<int> vertex_order;
    std::optional<int> step_m;
    json expected;
    json actual;
    json witness;
};

inline json edges_to_json(const std::vector<Edge>& edges) {
    json arr = json::array();
    for (const Edge& e : edges) arr.push_back(json::array({e.u, e.v}));
    return arr;
}

inline std::vector<Edge> edges_from_json(const json& arr) {
    std::vector<Edge> edges;
    for (const auto& pair : arr) edges.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
    return edges;
}

inline json record_to_json(const DiscrepancyRecord& r) {
    json j;
    j["schema_version"] = r.schema_version;
    j["campaign"] = r.campaign;
    j["kind"] = r.kind;
    j["trial_seed"] = r.trial_seed;
    j["n"] = r.n;
    j["graph_edges"] = edges_to_json(r.graph_edges);
    j["vertex_order"] = r.vertex_order;
    j["step_m"] = r.step_m ? json(*r.step_m) : json(nullptr);
    j["expected"] = r.expected;
    j["actual"] = r.actual;
    j["witness"] = r.witness;
    return j;
}

inline DiscrepancyRecord record_from_json(const json& j) {
    DiscrepancyRecord r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kRecordSchemaVersion)
        throw ParseError(0, "unsupported schema_version " + std::to_string(r.schema_version));
    r.campaign = j.at("campaign").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    r.trial_seed = j.at("trial_seed").get<std::uint64_t>();
    r.n = j.at("n").get<int>();
    r.graph_edges = edges_from_json(j.at("graph_edges"));
    r.vertex_order = j.at("vertex_order").get<std::vector<int>>();
    if (!j.at("step_m").is_null()) r.step_m = j.at("step_m").get<int>();
    r.expected = j.at("expected");
    r.actual = j.at("actual");
    r.witness = j.at("witness");
    return r;
}

inline std::string record_to_line(const DiscrepancyRecord& r) {
    return record_to_json(r).dump() + "\n";
}

inline bool records_equal(const DiscrepancyRecord& a, const DiscrepancyRecord& b) {
    return record_to_json(a) == record_to_json(b);
}

inline Graph graph_from_record(const DiscrepancyRecord& r) {
    return Graph(r.n, r.graph_edges);
}

// ---------------------------------------------------------------------------
// Campaign report
// ---------------------------------------------------------------------------

struct CampaignReport {
    std::string campaign;
    std::string generator;
    int n_lo = 0;
    int n_hi = 0;
    std::uint64_t trials_requested = 0;
    std::uint64_t master_seed = 0;
    std::string order_policy;

    std::uint64_t trials_run = 0;
    std::uint64_t agreements = 0;
    std::uint64_t discrepant_trials = 0;
    std::map<std::string, std::uint64_t> records_by_kind;
    std::uint64_t skip_capacity = 0;
    std::uint64_t skip_shortcut = 0;
    std::uint64_t skip_not_applicable = 0;
    std::uint64_t budget_exhausted_steps = 0;
    double runtime_seconds = 0.0; // the one nondeterministic field, printed last
};

inline std::string format_rate(double rate) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", rate);
    return buf;
}

inline std::string report_to_text(const CampaignReport& rep) {
    const std::uint64_t judged = rep.agreements + rep.discrepant_trials;
    const double rate = judged == 0 ? 1.0 : static_cast<double>(rep.agreements) / judged;
    std::string out;
    out += "campaign: " + rep.campaign + "\n";
    out += "generator: " + rep.generator + "\n";
    out += "n_range: " + std::to_string(rep.n_lo) + ".." + std::to_string(rep.n_hi) + "\n";
    out += "trials_requested: " + std::to_string(rep.trials_requested) + "\n";
    out += "master_seed: " + std::to_string(rep.master_seed) + "\n";
    out += "order_policy: " + rep.order_policy + "\n";
    out += "trials_run: " + std::to_string(rep.trials_run) + "\n";
    out += "agreements: " + std::to_string(rep.agreements) + "\n";
    out += "discrepant_trials: " + std::to_string(rep.discrepant_trials) + "\n";
    out += "skips: capacity=" + std::to_string(rep.skip_capacity) +
           " shortcut=" + std::to_string(rep.skip_shortcut) +
           " not_applicable=" + std::to_string(rep.skip_not_applicable) + "\n";
    out += "records:";
    if (rep.records_by_kind.empty()) out += " none";
    for (const auto& [kind, count] : rep.records_by_kind)
        out += " " + kind + "=" + std::to_string(count);
    out += "\n";
    out += "budget_exhausted_steps: " + std::to_string(rep.budget_exhausted_steps) + "\n";
    out += "agreement_rate: " + format_rate(rate) + "\n";
    out += "runtime_seconds: " + format_rate(rep.runtime_seconds) + "\n";
    return out;
}

} // namespace hamgrow
