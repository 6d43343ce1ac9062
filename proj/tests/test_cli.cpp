#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "dcsched/csv.hpp"

// Paths injected by the build: the CLI binary and the in-repo configs.
#ifndef DCSCHED_CLI_PATH
#error "DCSCHED_CLI_PATH must be defined"
#endif
#ifndef DCSCHED_CONFIG_DIR
#error "DCSCHED_CONFIG_DIR must be defined"
#endif

namespace fs = std::filesystem;

namespace {

const std::string cli = DCSCHED_CLI_PATH;
const std::string config_dir = DCSCHED_CONFIG_DIR;

int run(const std::string& args) {
    const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "dcsched_cli_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("gen-data and plan are byte-reproducible") {
    const fs::path dir = fresh_dir("repro");
    const std::string spec = config_dir + "/ci_generator.json";
    const std::string config = config_dir + "/ci_fleet.json";

    REQUIRE(run("gen-data --spec " + spec + " --n 12 --out " + (dir / "a").string()) == 0);
    REQUIRE(run("gen-data --spec " + spec + " --n 12 --out " + (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "samples.csv") == slurp(dir / "b" / "samples.csv"));

    REQUIRE(run("plan --config " + config + " --samples " + (dir / "a").string() +
                " --out " + (dir / "plan_a").string()) == 0);
    REQUIRE(run("plan --config " + config + " --samples " + (dir / "b").string() +
                " --out " + (dir / "plan_b").string()) == 0);
    CHECK(slurp(dir / "plan_a" / "schedule.csv") == slurp(dir / "plan_b" / "schedule.csv"));
    CHECK(slurp(dir / "plan_a" / "vcc.csv") == slurp(dir / "plan_b" / "vcc.csv"));
    CHECK(slurp(dir / "plan_a" / "verify.txt") == "certified");
}

TEST_CASE("simulate: greedy placements execute at the submission hour") {
    const fs::path dir = fresh_dir("simulate");
    const std::string spec = config_dir + "/ci_generator.json";
    const std::string config = config_dir + "/ci_fleet.json";

    REQUIRE(run("gen-data --spec " + spec + " --n 12 --out " + (dir / "data").string()) == 0);
    REQUIRE(run("plan --config " + config + " --samples " + (dir / "data").string() +
                " --out " + (dir / "plan").string()) == 0);
    REQUIRE(run("simulate --plan " + (dir / "plan").string() + " --scenario " +
                (dir / "data").string() + " --config " + config +
                " --policy greedy --mode soft --jobs-per-cell 5 --seed 3 --out " +
                (dir / "sim").string()) == 0);

    const auto stream = dcsched::load_jobs_csv((dir / "sim" / "jobs.csv").string());
    std::map<long, int> submit_hour;
    for (const auto& job : stream.jobs) submit_hour[job.id] = job.submit_hour;

    std::ifstream placements(dir / "sim" / "placements.csv");
    std::string line;
    std::getline(placements, line);
    CHECK(line == "job_id,d,t");
    int rows = 0;
    while (std::getline(placements, line)) {
        const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
        const long id = std::stol(line.substr(0, c1));
        const int t = std::stoi(line.substr(c2 + 1));
        CHECK(t == submit_hour.at(id));
        ++rows;
    }
    CHECK(rows == static_cast<int>(stream.jobs.size()));

    SUBCASE("re-running the simulation reproduces every CSV") {
        REQUIRE(run("simulate --plan " + (dir / "plan").string() + " --scenario " +
                    (dir / "data").string() + " --config " + config +
                    " --policy greedy --mode soft --jobs-per-cell 5 --seed 3 --out " +
                    (dir / "sim2").string()) == 0);
        for (const char* name : {"jobs.csv", "executed.csv", "queue.csv", "placements.csv"})
            CHECK(slurp(dir / "sim" / name) == slurp(dir / "sim2" / name));
    }
}

TEST_CASE("exit codes distinguish failure classes") {
    const fs::path dir = fresh_dir("exits");
    const std::string spec = config_dir + "/ci_generator.json";
    const std::string config = config_dir + "/ci_fleet.json";

    SUBCASE("usage error") {
        CHECK(run("plan --no-such-flag") == 2);
        CHECK(run("definitely-not-a-command") == 2);
    }
    SUBCASE("missing input file") {
        CHECK(run("plan --config /nonexistent.json --samples /nonexistent --out " +
                  (dir / "x").string()) == 5);
    }
    SUBCASE("invalid generator spec names the field") {
        const fs::path bad = dir / "bad_spec.json";
        std::ofstream out(bad);
        out << R"({"submission_hours": 6, "classes": [{"base": 0.1, "amplitude": 0.9}]})";
        out.close();
        CHECK(run("gen-data --spec " + bad.string() + " --n 3 --out " +
                  (dir / "y").string()) == 2);
    }
    SUBCASE("infeasible plan") {
        REQUIRE(run("gen-data --spec " + spec + " --n 8 --out " + (dir / "data").string()) ==
                0);
        const fs::path tight = dir / "tight.json";
        std::ofstream out(tight);
        out << R"({
          "submission_hours": 6, "clusters": 2,
          "classes": [{"delay_tolerance": 2, "allowed_clusters": [1]},
                       {"delay_tolerance": 2, "allowed_clusters": [1, 2]}],
          "true_capacity": 0.0,
          "carbon_price": {"base": 1.0, "amplitude": 0.5},
          "infra_price": 2.0, "beta": 0.2, "epsilon": 0.008})";
        out.close();
        CHECK(run("plan --config " + tight.string() + " --samples " + (dir / "data").string() +
                  " --out " + (dir / "z").string()) == 3);
    }
}

TEST_CASE("plan manifest records the effective parameters and inputs stay intact") {
    const fs::path dir = fresh_dir("manifest");
    const std::string spec = config_dir + "/ci_generator.json";
    const std::string config = config_dir + "/ci_fleet.json";
    REQUIRE(run("gen-data --spec " + spec + " --n 8 --out " + (dir / "data").string()) == 0);
    const std::string samples_before = slurp(dir / "data" / "samples.csv");

    REQUIRE(run("plan --config " + config + " --samples " + (dir / "data").string() +
                " --out " + (dir / "plan").string()) == 0);
    const std::string manifest = slurp(dir / "plan" / "manifest.json");
    // Config defaults: beta = 0.2, epsilon = 8e-3.
    CHECK(manifest.find("\"beta\": 0.2") != std::string::npos);
    CHECK(manifest.find("\"epsilon\": 0.008") != std::string::npos);
    CHECK(manifest.find("\"tier\": \"full\"") != std::string::npos);

    // Commands never mutate their inputs.
    CHECK(slurp(dir / "data" / "samples.csv") == samples_before);
}

TEST_CASE("compare emits the documented schema") {
    const fs::path dir = fresh_dir("compare");
    const std::string spec = config_dir + "/ci_generator.json";
    const std::string config = config_dir + "/ci_fleet.json";
    REQUIRE(run("gen-data --spec " + spec + " --n 10 --out " + (dir / "data").string() +
                " --split-fraction 0.6 --split-seed 2") == 0);
    REQUIRE(run("compare --config " + config + " --samples " +
                (dir / "data" / "train").string() + " --validation " +
                (dir / "data" / "validation").string() + " --jobs-per-cell 5 --out " +
                (dir / "out").string()) == 0);
    std::ifstream table(dir / "out" / "comparison.csv");
    std::string header;
    REQUIRE(std::getline(table, header));
    CHECK(header == "scenario_id,oracle_cost,dro_cost,greedy_cost,dro_pct,greedy_pct");
    int rows = 0;
    std::string row;
    while (std::getline(table, row)) ++rows;
    CHECK(rows == 4); // one per validation scenario
}

TEST_CASE("sweep emits the grid table") {
    const fs::path dir = fresh_dir("sweep");
    const std::string spec = config_dir + "/ci_generator.json";
    const std::string config = config_dir + "/ci_fleet.json";
    REQUIRE(run("gen-data --spec " + spec + " --n 10 --out " + (dir / "data").string() +
                " --split-fraction 0.5 --split-seed 2") == 0);
    REQUIRE(run("sweep --param epsilon --grid 0.002 --config " + config + " --samples " +
                (dir / "data" / "train").string() + " --validation " +
                (dir / "data" / "validation").string() + " --out " +
                (dir / "out").string()) == 0);
    std::ifstream table(dir / "out" / "sweep.csv");
    std::string header, row;
    REQUIRE(std::getline(table, header));
    CHECK(header == "epsilon,objective,violation_count,max_violation");
    REQUIRE(std::getline(table, row));  // single grid point -> single row
    CHECK_FALSE(std::getline(table, row));
}
