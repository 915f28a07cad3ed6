#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hamgrow/generators.hpp"
#include "hamgrow/records.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("hamgrow_cli_" + std::to_string(static_cast<unsigned>(::getpid())));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(HAMGROW_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult res;
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out);
    res.err = slurp(err);
    std::remove(out.string().c_str());
    std::remove(err.string().c_str());
    return res;
}

fs::path write_graph(const std::string& name, const hamgrow::Graph& g) {
    const fs::path p = scratch_dir() / name;
    std::ofstream out(p);
    out << hamgrow::serialize_graph(g);
    return p;
}

} // namespace

TEST_CASE("cli generates graphs") {
    RunResult r = run_cli("gen --model path --n 6");
    REQUIRE(r.code == 0);
    REQUIRE(r.out == hamgrow::serialize_graph(hamgrow::path_graph(6)));

    const fs::path p = scratch_dir() / "gen_cycle.txt";
    REQUIRE(run_cli("gen --model cycle --n 5 --out " + p.string()).code == 0);
    REQUIRE(slurp(p) == hamgrow::serialize_graph(hamgrow::cycle_graph(5)));

    RunResult gnp1 = run_cli("gen --model gnp --n 8 --p 0.5 --seed 9");
    RunResult gnp2 = run_cli("gen --model gnp --n 8 --p 0.5 --seed 9");
    REQUIRE(gnp1.out == gnp2.out);

    REQUIRE(run_cli("gen --model bogus --n 4").code == 1);
}

TEST_CASE("cli solves instances") {
    const fs::path c5 = write_graph("c5.txt", hamgrow::cycle_graph(5));
    RunResult r = run_cli("solve --in " + c5.string());
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("verdict: hamiltonian\n") != std::string::npos);
    REQUIRE(r.out.find("witness: 0 1 2 3 4") != std::string::npos);

    const fs::path p5 = write_graph("p5.txt", hamgrow::path_graph(5));
    RunResult miss = run_cli("solve --in " + p5.string() + " --trace");
    REQUIRE(miss.code == 0);
    REQUIRE(miss.out.find("verdict: not_hamiltonian") != std::string::npos);
    REQUIRE(miss.out.find("final_cost: 1") != std::string::npos);
    REQUIRE(miss.out.find("trace: m d_star") != std::string::npos);

    const fs::path k6 = write_graph("k6.txt", hamgrow::complete_graph(6));
    REQUIRE(run_cli("solve --in " + k6.string()).out.find("hamiltonian_by_quad_shortcut") !=
            std::string::npos);

    REQUIRE(run_cli("solve --in " + p5.string() + " --provider oracle").code == 0);
    REQUIRE(run_cli("solve --in " + p5.string() + " --order shuffle:42").code == 0);
    REQUIRE(run_cli("solve --in " + p5.string() + " --order sideways").code == 1);
    REQUIRE(run_cli("solve --in " + (scratch_dir() / "absent.txt").string()).code == 1);
}

TEST_CASE("cli rejects malformed graph files") {
    const fs::path bad = scratch_dir() / "bad.txt";
    std::ofstream(bad) << "3 1\n0 0\n";
    RunResult r = run_cli("solve --in " + bad.string());
    REQUIRE(r.code == 1);
    REQUIRE(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("cli oracle answers") {
    const fs::path pet = write_graph("petersen.txt", hamgrow::petersen_graph());
    RunResult r = run_cli("oracle --in " + pet.string() + " --hc --tsp");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("hc_exists: false") != std::string::npos);
    REQUIRE(r.out.find("tsp_optimum: 1") != std::string::npos);

    REQUIRE(run_cli("oracle --in " + pet.string()).code == 1);
}

TEST_CASE("cli verify campaign with records and replay") {
    const fs::path recs = scratch_dir() / "quad.jsonl";
    RunResult v = run_cli("verify --check quad --generator exhaustive --n-range 4..4 --seed 13 "
                          "--out " +
                          recs.string());
    REQUIRE(v.code == 2);
    REQUIRE(v.out.find("campaign: quad_shortcut") != std::string::npos);
    REQUIRE(v.out.find("agreement_rate") != std::string::npos);

    const std::string body = slurp(recs);
    REQUIRE_FALSE(body.empty());
    REQUIRE(body.find("shortcut_claim_violated") != std::string::npos);

    RunResult rep = run_cli("replay --in " + recs.string());
    REQUIRE(rep.code == 0);
    REQUIRE(rep.out.find("record 0: reproduced") != std::string::npos);
    REQUIRE(rep.out.find("FAILED") == std::string::npos);

    REQUIRE(run_cli("replay --in " + recs.string() + " --index 0").code == 0);
    REQUIRE(run_cli("replay --in " + recs.string() + " --index 9999").code == 1);

    SECTION("tampered records fail to replay") {
        std::istringstream lines(body);
        std::string first;
        std::getline(lines, first);
        hamgrow::json j = hamgrow::json::parse(first);
        j["actual"] = 999;
        const fs::path broken = scratch_dir() / "broken.jsonl";
        std::ofstream(broken) << j.dump() << "\n";
        RunResult bad = run_cli("replay --in " + broken.string());
        REQUIRE(bad.code == 3);
        REQUIRE(bad.out.find("FAILED") != std::string::npos);
    }
}

TEST_CASE("cli verify emits identical bytes for identical configs") {
    const fs::path a = scratch_dir() / "run_a.jsonl";
    const fs::path b = scratch_dir() / "run_b.jsonl";
    const std::string base =
        "verify --check endtoend --generator gnp --p 0.5 --n-range 5..7 --trials 12 --seed 3 ";
    RunResult ra = run_cli(base + "--out " + a.string());
    RunResult rb = run_cli(base + "--out " + b.string());
    REQUIRE(ra.code == rb.code);
    REQUIRE((ra.code == 0 || ra.code == 2));
    REQUIRE(slurp(a) == slurp(b));
}

TEST_CASE("cli verify over graph files") {
    const fs::path p6 = write_graph("p6.txt", hamgrow::path_graph(6));
    const fs::path c6 = write_graph("c6.txt", hamgrow::cycle_graph(6));
    RunResult r =
        run_cli("verify --check table1 --in " + p6.string() + " --in " + c6.string());
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("trials_run: 2") != std::string::npos);
}

TEST_CASE("cli hunt is a preconfigured end-to-end verify") {
    RunResult r = run_cli("hunt --n-range 5..6 --trials 6 --seed 2");
    REQUIRE((r.code == 0 || r.code == 2));
    REQUIRE(r.out.find("campaign: end_to_end") != std::string::npos);
}

TEST_CASE("cli usage errors") {
    REQUIRE(run_cli("").code == 1);
    REQUIRE(run_cli("frobnicate").code == 1);
    REQUIRE(run_cli("verify --check nonsense --trials 1").code == 1);
    REQUIRE(run_cli("--help").code == 0);
}
