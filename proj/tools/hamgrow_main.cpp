#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hamgrow/generators.hpp"
#include "hamgrow/graph.hpp"
#include "hamgrow/growth.hpp"
#include "hamgrow/harness.hpp"
#include "hamgrow/oracle.hpp"
#include "hamgrow/records.hpp"

namespace {

using namespace hamgrow;

constexpr int kExitSuccess = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDiscrepancies = 2;
constexpr int kExitInvariant = 3;

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

std::optional<std::vector<int>> parse_order_flag(const std::string& flag, int n) {
    if (flag == "default") return std::nullopt;
    const std::string prefix = "shuffle:";
    if (flag.rfind(prefix, 0) != 0)
        throw std::runtime_error("--order expects 'default' or 'shuffle:SEED'");
    const std::uint64_t seed = std::stoull(flag.substr(prefix.size()));
    SplitMix64 rng(seed);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[static_cast<int>(rng.next_below(i + 1))]);
    return order;
}

void parse_n_range(const std::string& text, int& lo, int& hi) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        lo = hi = std::stoi(text);
        return;
    }
    lo = std::stoi(text.substr(0, dots));
    hi = std::stoi(text.substr(dots + 2));
}

// ---------------------------------------------------------------------------

struct GenArgs {
    std::string model;
    int n = 0;
    double p = 0.5;
    double extra_p = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    Graph g = [&] {
        if (a.model == "gnp") return gen_gnp(a.n, a.p, a.seed);
        if (a.model == "planted") return gen_planted_hamiltonian(a.n, a.extra_p, a.seed);
        if (a.model == "path") return path_graph(a.n);
        if (a.model == "cycle") return cycle_graph(a.n);
        if (a.model == "complete") return complete_graph(a.n);
        if (a.model == "petersen") return petersen_graph();
        throw std::runtime_error("unknown model " + a.model);
    }();
    const std::string text = serialize_graph(g);
    if (a.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(a.out);
        if (!out) throw std::runtime_error("cannot write " + a.out);
        out << text;
    }
    return kExitSuccess;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
    std::string in;
    std::string order = "default";
    std::string provider = "closure";
    bool trace = false;
    bool strict = false;
};

int cmd_solve(const SolveArgs& a) {
    Graph g = load_graph(a.in);
    GrowthOptions opts;
    opts.provider = a.provider == "oracle" ? Provider::OracleExact : Provider::Closure;
    const auto order = parse_order_flag(a.order, g.n());
    const Decision d = decide_hamiltonian(g, order, opts);

    std::cout << "verdict: " << verdict_name(d.verdict) << "\n";
    if (d.final_cost) std::cout << "final_cost: " << *d.final_cost << "\n";
    if (d.witness) {
        std::cout << "witness:";
        for (int v : d.witness->order()) std::cout << ' ' << v;
        std::cout << "\n";
    }
    bool mismatch = false;
    if (d.state) {
        for (const TraceRow& row : d.state->trace) mismatch |= row.construction_mismatch;
        if (a.trace) {
            std::cout << "trace: m d_star omega_size c_star h_size predicted constructed"
                         " mismatch fallback budget_exhausted\n";
            for (const TraceRow& row : d.state->trace)
                std::cout << row.m << ' ' << row.d_star << ' ' << row.omega_size << ' '
                          << row.c_star << ' ' << row.h_size << ' ' << row.predicted << ' '
                          << row.constructed << ' ' << int(row.construction_mismatch) << ' '
                          << int(row.fallback) << ' ' << int(row.budget_exhausted) << "\n";
        }
    }
    if (a.strict && mismatch) {
        std::cerr << "strict: construction mismatch\n";
        return kExitInvariant;
    }
    return kExitSuccess;
}

// ---------------------------------------------------------------------------

struct OracleArgs {
    std::string in;
    bool hc = false;
    bool tsp = false;
};

int cmd_oracle(const OracleArgs& a) {
    if (!a.hc && !a.tsp) throw std::runtime_error("oracle needs --hc and/or --tsp");
    Graph g = load_graph(a.in);
    if (a.hc) std::cout << "hc_exists: " << (hc_exists(g).first ? "true" : "false") << "\n";
    if (a.tsp) {
        std::vector<int> all(g.n());
        std::iota(all.begin(), all.end(), 0);
        std::cout << "tsp_optimum: " << held_karp(reduce_to_tsp(g), all) << "\n";
    }
    return kExitSuccess;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string check = "endtoend";
    std::string n_range = "5..8";
    std::uint64_t trials = 100;
    std::uint64_t seed = 0;
    std::string generator = "gnp";
    double p = 0.5;
    std::string order_policy = "default";
    std::string out;
    std::vector<std::string> inputs;
    bool strict = false;
};

Campaign check_to_campaign(const std::string& check) {
    if (check == "table1") return Campaign::Table1;
    if (check == "closure") return Campaign::Closure;
    if (check == "quad") return Campaign::QuadShortcut;
    if (check == "connectivity") return Campaign::Connectivity;
    if (check == "endtoend") return Campaign::EndToEnd;
    throw std::runtime_error("unknown check " + check);
}

int finish_verify(const CampaignReport& rep, const std::vector<DiscrepancyRecord>& records,
                  const std::string& out_path, bool strict) {
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        for (const DiscrepancyRecord& r : records) out << record_to_line(r);
    }
    std::cout << report_to_text(rep);
    if (strict)
        for (const DiscrepancyRecord& r : records)
            if (r.kind == "construction_mismatch")
                throw InvariantViolation("strict: construction mismatch recorded");
    std::uint64_t discrepancies = 0;
    for (const auto& [kind, count] : rep.records_by_kind) discrepancies += count;
    return discrepancies == 0 ? kExitSuccess : kExitDiscrepancies;
}

int cmd_verify(const VerifyArgs& a) {
    const Campaign camp = check_to_campaign(a.check);

    if (!a.inputs.empty()) {
        // File-based trials: one per input, in argument order.
        CampaignReport rep;
        rep.campaign = campaign_name(camp);
        rep.generator = "files";
        rep.trials_requested = a.inputs.size();
        rep.master_seed = a.seed;
        rep.order_policy = a.order_policy;
        std::vector<DiscrepancyRecord> records;
        int lo = 0, hi = 0;
        for (std::size_t i = 0; i < a.inputs.size(); ++i) {
            Graph g = load_graph(a.inputs[i]);
            lo = i == 0 ? g.n() : std::min(lo, g.n());
            hi = std::max(hi, g.n());
            const std::uint64_t seed = trial_seed(a.seed, i);
            SplitMix64 rng(seed);
            std::optional<std::vector<int>> order;
            if (a.order_policy == "shuffle") order = shuffled_order(g.n(), rng);
            TrialResult tr = run_verify(camp, g, std::move(order), seed);
            tally_trial(rep, tr);
            for (DiscrepancyRecord& r : tr.records) records.push_back(std::move(r));
        }
        rep.n_lo = lo;
        rep.n_hi = hi;
        return finish_verify(rep, records, a.out, a.strict);
    }

    ExperimentConfig cfg;
    cfg.campaign = camp;
    parse_n_range(a.n_range, cfg.n_lo, cfg.n_hi);
    cfg.trials = a.trials;
    cfg.master_seed = a.seed;
    cfg.order_policy = a.order_policy == "shuffle" ? OrderPolicy::Shuffle : OrderPolicy::Default;
    if (a.generator == "gnp") {
        cfg.generator = {GeneratorSpec::Kind::Gnp, a.p};
    } else if (a.generator == "planted") {
        cfg.generator = {GeneratorSpec::Kind::PlantedHamiltonian, a.p};
    } else if (a.generator == "exhaustive") {
        cfg.generator = {GeneratorSpec::Kind::Exhaustive, 0.0};
    } else {
        throw std::runtime_error("unknown generator " + a.generator);
    }

    std::ostringstream sink;
    CampaignReport rep = run_campaign(cfg, sink);

    // Re-parse for strict handling and persistence.
    std::vector<DiscrepancyRecord> records;
    std::istringstream lines(sink.str());
    for (std::string line; std::getline(lines, line);)
        if (!line.empty()) records.push_back(record_from_json(json::parse(line)));
    return finish_verify(rep, records, a.out, a.strict);
}

// ---------------------------------------------------------------------------

struct ReplayArgs {
    std::string in;
    int index = -1;
};

int cmd_replay(const ReplayArgs& a) {
    std::ifstream in(a.in);
    if (!in) throw std::runtime_error("cannot open " + a.in);
    std::vector<DiscrepancyRecord> records;
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        records.push_back(record_from_json(json::parse(line)));
    }
    if (a.index >= 0 && a.index >= static_cast<int>(records.size()))
        throw std::runtime_error("--index out of range");

    std::size_t failures = 0, run = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (a.index >= 0 && static_cast<std::size_t>(a.index) != i) continue;
        const ReplayResult res = replay(records[i]);
        ++run;
        if (res.reproduced)
            std::cout << "record " << i << ": reproduced\n";
        else
            std::cout << "record " << i << ": FAILED (" << res.message << ")\n";
        if (!res.reproduced) ++failures;
    }
    std::cout << "replay: " << (run - failures) << "/" << run << " reproduced\n";
    return failures == 0 ? kExitSuccess : kExitInvariant;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vertex-growth Hamiltonicity tester and falsification harness"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* cgen = app.add_subcommand("gen", "generate a graph file");
    cgen->add_option("--model", gen.model, "gnp|planted|path|cycle|complete|petersen")
        ->required();
    cgen->add_option("--n", gen.n, "vertex count");
    cgen->add_option("--p", gen.p, "edge probability (gnp)");
    cgen->add_option("--extra-p", gen.extra_p, "extra edge probability (planted)");
    cgen->add_option("--seed", gen.seed, "generator seed");
    cgen->add_option("--out", gen.out, "output path (default stdout)");

    SolveArgs solve;
    auto* csolve = app.add_subcommand("solve", "run the growth decision procedure");
    csolve->add_option("--in", solve.in, "graph file")->required();
    csolve->add_option("--order", solve.order, "default|shuffle:SEED");
    csolve->add_option("--provider", solve.provider, "closure|oracle");
    csolve->add_flag("--trace", solve.trace, "print per-step trace");
    csolve->add_flag("--strict", solve.strict, "construction mismatch becomes exit 3");

    OracleArgs oracle;
    auto* coracle = app.add_subcommand("oracle", "exact oracles");
    coracle->add_option("--in", oracle.in, "graph file")->required();
    coracle->add_flag("--hc", oracle.hc, "print hc_exists");
    coracle->add_flag("--tsp", oracle.tsp, "print the exact tour optimum");

    VerifyArgs verify;
    auto* cverify = app.add_subcommand("verify", "run a verification campaign");
    cverify->add_option("--check", verify.check, "table1|closure|quad|connectivity|endtoend")
        ->required();
    cverify->add_option("--n-range", verify.n_range, "A..B");
    cverify->add_option("--trials", verify.trials, "trial count (ignored for exhaustive)");
    cverify->add_option("--seed", verify.seed, "master seed");
    cverify->add_option("--generator", verify.generator, "gnp|planted|exhaustive");
    cverify->add_option("--p", verify.p, "gnp p / planted extra_p");
    cverify->add_option("--order-policy", verify.order_policy, "default|shuffle");
    cverify->add_option("--out", verify.out, "JSONL records path");
    cverify->add_option("--in", verify.inputs, "graph files (replaces the generator)");
    cverify->add_flag("--strict", verify.strict, "construction mismatch becomes exit 3");

    VerifyArgs hunt;
    hunt.check = "endtoend";
    hunt.n_range = "5..12";
    hunt.trials = 1000;
    auto* chunt = app.add_subcommand("hunt", "end-to-end counterexample hunt");
    chunt->add_option("--n-range", hunt.n_range, "A..B");
    chunt->add_option("--trials", hunt.trials, "trial count");
    chunt->add_option("--seed", hunt.seed, "master seed");
    chunt->add_option("--generator", hunt.generator, "gnp|planted|exhaustive");
    chunt->add_option("--p", hunt.p, "gnp p / planted extra_p");
    chunt->add_option("--order-policy", hunt.order_policy, "default|shuffle");
    chunt->add_option("--out", hunt.out, "JSONL records path");
    chunt->add_flag("--strict", hunt.strict, "construction mismatch becomes exit 3");

    ReplayArgs rep;
    auto* creplay = app.add_subcommand("replay", "re-run recorded discrepancies");
    creplay->add_option("--in", rep.in, "records.jsonl")->required();
    creplay->add_option("--index", rep.index, "replay a single record");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        if (cgen->parsed()) return cmd_gen(gen);
        if (csolve->parsed()) return cmd_solve(solve);
        if (coracle->parsed()) return cmd_oracle(oracle);
        if (cverify->parsed()) return cmd_verify(verify);
        if (chunt->parsed()) return cmd_verify(hunt);
        if (creplay->parsed()) return cmd_replay(rep);
        return kExitUsage;
    } catch (const hamgrow::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
