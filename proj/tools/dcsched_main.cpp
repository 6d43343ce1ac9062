// dcsched: day-ahead planning and real-time placement for carbon-aware
// data-center fleets. Subcommands cover synthetic data generation, the
// distributionally robust planner, the fleet simulator, baseline comparison,
// parameter sweeps and radius calibration.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>

#include "dcsched/calibration.hpp"
#include "dcsched/csv.hpp"
#include "dcsched/json_io.hpp"
#include "dcsched/planner.hpp"
#include "dcsched/realtime.hpp"
#include "dcsched/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dcsched;

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 2 usage/config, 3 infeasible, 4 solver, 5 I/O.
enum ExitCode { kOk = 0, kUsage = 2, kInfeasible = 3, kSolver = 4, kIo = 5 };

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot hash missing file " + path);
    std::uint64_t hash = 1469598103934665603ULL;
    char buf[1 << 14];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 1099511628211ULL;
        }
    }
    return hash;
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Manifest: one per output directory; carries everything needed to re-run.
struct Manifest {
    std::string command;
    json parameters = json::object();
    json inputs = json::array();
    json outputs = json::array();
    json timings_ms = json::object();

    void add_input(const std::string& path) {
        inputs.push_back({{"path", path}, {"fnv1a64", hex64(fnv1a64_file(path))}});
    }
    void add_output(const std::string& name) { outputs.push_back(name); }
    void write(const fs::path& dir) const {
        json doc;
        doc["tool"] = "dcsched";
        doc["version"] = kVersion;
        doc["command"] = command;
        doc["parameters"] = parameters;
        doc["inputs"] = inputs;
        doc["outputs"] = outputs;
        doc["timings_ms"] = timings_ms;
        std::ofstream out(dir / "manifest.json");
        if (!out) throw IoError("cannot write manifest in " + dir.string());
        out << doc.dump(2) << "\n";
    }
};

class Stopwatch {
  public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string samples_file(const std::string& path) {
    if (fs::is_directory(path)) return (fs::path(path) / "samples.csv").string();
    return path;
}

SupportKind support_for(const std::string& choice, Tier tier) {
    if (choice == "box") return SupportKind::Box;
    if (choice == "sum") return SupportKind::Sum;
    if (choice == "auto") return tier == Tier::Reduced ? SupportKind::Sum : SupportKind::Box;
    throw ConfigError("unknown support '" + choice + "' (auto, box, sum)");
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            grid.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("grid entry '" + item + "' is not a number");
        }
    }
    if (grid.empty()) throw ConfigError("empty grid");
    return grid;
}

json violation_summary(const std::vector<ViolationEvent>& events) {
    double max_magnitude = 0.0;
    for (const auto& e : events) max_magnitude = std::max(max_magnitude, e.magnitude);
    return {{"count", events.size()}, {"max_magnitude", max_magnitude}};
}

// Validation violations of a plan: cells where the scheduled load under a
// scenario exceeds the VCC.
std::pair<long, double> plan_violations(const Plan& plan, const SampleSet& scenarios,
                                        double tol = 1e-9) {
    long count = 0;
    double max_magnitude = 0.0;
    for (const LoadGrid& s : scenarios.samples) {
        const ClusterGrid load = aggregate_load(plan.schedule, s);
        for (int d = 1; d <= load.clusters(); ++d)
            for (int t = 1; t <= load.horizon(); ++t) {
                const double over = load.at(t, d) - plan.vcc.at(t, d);
                if (over > tol) {
                    ++count;
                    max_magnitude = std::max(max_magnitude, over);
                }
            }
    }
    return {count, max_magnitude};
}

struct PlanFlags {
    double beta = -1.0;    // < 0 means: keep the config value
    double epsilon = -1.0;
    std::string tier = "full";
    std::string support = "auto";
    double margin = 0.5;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--beta", beta, "CVaR level in (0,1]; overrides the config");
        cmd->add_option("--epsilon", epsilon, "ambiguity radius >= 0; overrides the config");
        cmd->add_option("--tier", tier, "model tier: full, reduced, conservative")
            ->check(CLI::IsMember({"full", "reduced", "conservative"}));
        cmd->add_option("--support", support, "support set: auto, box, sum")
            ->check(CLI::IsMember({"auto", "box", "sum"}));
        cmd->add_option("--margin", margin, "support margin above the sample envelope");
    }

    void apply(ProblemConfig& cfg) const {
        if (beta >= 0.0) cfg.beta = beta;
        if (epsilon >= 0.0) cfg.epsilon = epsilon;
    }
    Tier tier_value() const { return tier_from_string(tier); }
    SupportKind support_value() const { return support_for(support, tier_value()); }
    json to_json(const ProblemConfig& effective) const {
        return {{"beta", effective.beta}, {"epsilon", effective.epsilon},
                {"tier", tier},           {"support", support == "auto"
                                                          ? (tier_value() == Tier::Reduced
                                                                 ? "sum"
                                                                 : "box")
                                                          : support},
                {"margin", margin}};
    }
};

// --- gen-data ---------------------------------------------------------------

int cmd_gen_data(const std::string& spec_path, int n, const std::string& out,
                 double split_fraction, std::uint64_t split_seed) {
    const GeneratorSpec spec = generator_from_json_file(spec_path);
    fs::create_directories(out);
    Stopwatch watch;
    const SampleSet samples = generate_load_samples(spec, n);
    write_samples_csv((fs::path(out) / "samples.csv").string(), samples);

    Manifest manifest;
    manifest.command = "gen-data";
    manifest.parameters = {{"spec", spec_path},
                           {"n", n},
                           {"seed", spec.seed},
                           {"split_fraction", split_fraction},
                           {"split_seed", split_seed}};
    manifest.add_input(spec_path);
    manifest.add_output("samples.csv");

    if (split_fraction > 0.0) {
        auto [train, validation] = split_train_validation(samples, split_fraction, split_seed);
        fs::create_directories(fs::path(out) / "train");
        fs::create_directories(fs::path(out) / "validation");
        write_samples_csv((fs::path(out) / "train" / "samples.csv").string(), train);
        write_samples_csv((fs::path(out) / "validation" / "samples.csv").string(), validation);
        manifest.add_output("train/samples.csv");
        manifest.add_output("validation/samples.csv");
    }
    manifest.timings_ms["total"] = watch.ms();
    manifest.write(out);
    std::cout << "wrote " << samples.count() << " samples to " << out << "\n";
    return kOk;
}

// --- plan -------------------------------------------------------------------

int cmd_plan(const std::string& config_path, const std::string& samples_path,
             const std::string& out, const PlanFlags& flags, bool export_lp) {
    ProblemConfig cfg = config_from_json_file(config_path);
    flags.apply(cfg);
    const std::string sfile = samples_file(samples_path);
    const SampleSet samples = load_samples_csv(sfile);
    const SupportSet support = build_support_set(samples, flags.margin, flags.support_value());

    PlannerOptions options;
    options.tier = flags.tier_value();

    Stopwatch watch;
    const Plan plan = plan_day_ahead(cfg, samples, support, options);
    const double solve_ms = watch.ms();

    fs::create_directories(out);
    write_plan_files(plan, out);
    const VerificationReport report = verify_certificate(plan, samples, support, cfg);
    {
        std::ofstream verify_out(fs::path(out) / "verify.txt");
        verify_out << report.summary();
    }
    if (export_lp) {
        const DayAheadModel model = build_dro_lp(cfg, samples, support, options.tier);
        model.lp.write_lp_file((fs::path(out) / "model.lp").string());
    }

    Manifest manifest;
    manifest.command = "plan";
    manifest.parameters = flags.to_json(cfg);
    manifest.parameters["config"] = config_path;
    manifest.parameters["samples"] = sfile;
    manifest.add_input(config_path);
    manifest.add_input(sfile);
    manifest.add_output("plan.json");
    manifest.add_output("schedule.csv");
    manifest.add_output("vcc.csv");
    manifest.add_output("verify.txt");
    if (export_lp) manifest.add_output("model.lp");
    manifest.timings_ms["solve"] = solve_ms;
    manifest.write(out);

    std::cout << "objective " << plan.objective << ", cvar certificate "
              << plan.cvar_certificate << ", " << (report.ok() ? "certified" : "NOT certified")
              << "\n";
    return report.ok() ? kOk : kSolver;
}

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const std::string& plan_dir, const std::string& scenario_path,
                 const std::string& config_path, const std::string& policy_name,
                 const std::string& mode_name, int jobs_per_cell, double sigma,
                 std::uint64_t seed, const std::string& out) {
    const ProblemConfig cfg = config_from_json_file(config_path);
    const Plan plan = load_plan_files(plan_dir);
    const SampleSet scenarios = load_samples_csv(samples_file(scenario_path));
    if (scenarios.count() < 1) throw IoError("scenario file holds no samples");
    const LoadGrid& scenario = scenarios.samples.front();

    const Policy policy = policy_name == "tracking" ? Policy::Tracking : Policy::Greedy;
    const VccMode mode = mode_name == "soft" ? VccMode::Soft : VccMode::Hard;

    Stopwatch watch;
    const JobStream stream =
        generate_job_stream(scenario, uniform_counts(scenario, jobs_per_cell), sigma, seed);
    const SimTrace trace = simulate_day(stream, policy, mode, plan.schedule, plan.vcc, cfg);

    fs::create_directories(out);
    write_jobs_csv((fs::path(out) / "jobs.csv").string(), stream);
    write_executed_csv((fs::path(out) / "executed.csv").string(), trace.executed);
    write_queue_csv((fs::path(out) / "queue.csv").string(), trace.queue_length);
    write_placements_csv((fs::path(out) / "placements.csv").string(), trace.placements);

    json summary;
    summary["policy"] = policy_name;
    summary["mode"] = mode_name;
    summary["plan_cost"] = plan.objective;
    summary["realized_cost"] = trace.realized_cost;
    summary["vcc_violations"] = violation_summary(trace.vcc_violations);
    summary["capacity_violations"] = violation_summary(trace.capacity_violations);
    summary["unserved_volume"] = trace.unserved_volume;
    summary["unserved_jobs"] = trace.unserved_jobs;
    summary["jobs"] = stream.jobs.size();
    {
        std::ofstream sout(fs::path(out) / "summary.json");
        sout << summary.dump(2) << "\n";
    }

    Manifest manifest;
    manifest.command = "simulate";
    manifest.parameters = {{"plan", plan_dir},       {"scenario", scenario_path},
                           {"config", config_path},  {"policy", policy_name},
                           {"mode", mode_name},      {"jobs_per_cell", jobs_per_cell},
                           {"sigma", sigma},         {"seed", seed}};
    manifest.add_input(config_path);
    manifest.add_input(samples_file(scenario_path));
    manifest.add_input((fs::path(plan_dir) / "plan.json").string());
    for (const char* name : {"jobs.csv", "executed.csv", "queue.csv", "placements.csv",
                             "summary.json"})
        manifest.add_output(name);
    manifest.timings_ms["total"] = watch.ms();
    manifest.write(out);

    std::cout << "realized cost " << trace.realized_cost << " (plan cost " << plan.objective
              << "), vcc violations " << trace.vcc_violations.size() << "\n";
    return kOk;
}

// --- compare ----------------------------------------------------------------

int cmd_compare(const std::string& config_path, const std::string& samples_path,
                const std::string& validation_path, const std::string& out,
                const PlanFlags& flags, int jobs_per_cell, double sigma,
                std::uint64_t seed) {
    ProblemConfig cfg = config_from_json_file(config_path);
    flags.apply(cfg);
    const SampleSet train = load_samples_csv(samples_file(samples_path));
    const SampleSet validation = load_samples_csv(samples_file(validation_path));
    const SupportSet support = build_support_set(train, flags.margin, flags.support_value());

    PlannerOptions options;
    options.tier = flags.tier_value();

    Stopwatch watch;
    const Plan dro = plan_day_ahead(cfg, train, support, options);
    const double plan_ms = watch.ms();

    fs::create_directories(out);
    std::ofstream table(fs::path(out) / "comparison.csv");
    if (!table) throw IoError("cannot write comparison.csv");
    table << "scenario_id,oracle_cost,dro_cost,greedy_cost,dro_pct,greedy_pct\n";

    std::vector<double> dro_pcts, greedy_pcts;
    char buf[64];
    auto fmt = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (int i = 0; i < validation.count(); ++i) {
        const LoadGrid& scenario = validation.samples[i];
        const Plan oracle = plan_perfect_forecast(cfg, scenario, options.solver);
        const JobStream stream = generate_job_stream(
            scenario, uniform_counts(scenario, jobs_per_cell), sigma, seed + i);
        const SimTrace dro_trace =
            simulate_day(stream, Policy::Tracking, VccMode::Soft, dro.schedule, dro.vcc, cfg);
        const SimTrace greedy_trace =
            simulate_day(stream, Policy::Greedy, VccMode::Soft, dro.schedule, dro.vcc, cfg);

        const double dro_pct =
            100.0 * (dro_trace.realized_cost - oracle.objective) / oracle.objective;
        const double greedy_pct =
            100.0 * (greedy_trace.realized_cost - oracle.objective) / oracle.objective;
        dro_pcts.push_back(dro_pct);
        greedy_pcts.push_back(greedy_pct);
        table << (i + 1) << ',' << fmt(oracle.objective) << ','
              << fmt(dro_trace.realized_cost) << ',' << fmt(greedy_trace.realized_cost) << ','
              << fmt(dro_pct) << ',' << fmt(greedy_pct) << '\n';
    }
    table.close();

    auto mean = [](const std::vector<double>& v) {
        return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    };
    auto stddev = [&](const std::vector<double>& v) {
        const double m = mean(v);
        double acc = 0.0;
        for (double x : v) acc += (x - m) * (x - m);
        return std::sqrt(acc / v.size());
    };

    json summary;
    summary["scenarios"] = validation.count();
    summary["dro"] = {{"mean_pct", mean(dro_pcts)}, {"std_pct", stddev(dro_pcts)}};
    summary["greedy"] = {{"mean_pct", mean(greedy_pcts)}, {"std_pct", stddev(greedy_pcts)}};
    summary["dro_objective"] = dro.objective;
    {
        std::ofstream sout(fs::path(out) / "compare_summary.json");
        sout << summary.dump(2) << "\n";
    }

    Manifest manifest;
    manifest.command = "compare";
    manifest.parameters = flags.to_json(cfg);
    manifest.parameters["config"] = config_path;
    manifest.parameters["jobs_per_cell"] = jobs_per_cell;
    manifest.parameters["sigma"] = sigma;
    manifest.parameters["seed"] = seed;
    manifest.add_input(config_path);
    manifest.add_input(samples_file(samples_path));
    manifest.add_input(samples_file(validation_path));
    manifest.add_output("comparison.csv");
    manifest.add_output("compare_summary.json");
    manifest.timings_ms["plan"] = plan_ms;
    manifest.timings_ms["total"] = watch.ms();
    manifest.write(out);

    std::cout << "mean cost increase over oracle: dro " << mean(dro_pcts) << "%, greedy "
              << mean(greedy_pcts) << "%\n";
    return kOk;
}

// --- sweep ------------------------------------------------------------------

int cmd_sweep(const std::string& param, const std::string& grid_text,
              const std::string& config_path, const std::string& samples_path,
              const std::string& validation_path, const std::string& out,
              const PlanFlags& flags) {
    if (param != "beta" && param != "epsilon")
        throw ConfigError("--param must be beta or epsilon");
    const std::vector<double> grid = parse_grid(grid_text);
    ProblemConfig base = config_from_json_file(config_path);
    flags.apply(base);
    const SampleSet train = load_samples_csv(samples_file(samples_path));
    const SampleSet validation = load_samples_csv(samples_file(validation_path));
    const SupportSet support = build_support_set(train, flags.margin, flags.support_value());

    PlannerOptions options;
    options.tier = flags.tier_value();

    Stopwatch watch;
    fs::create_directories(out);
    std::ofstream table(fs::path(out) / "sweep.csv");
    if (!table) throw IoError("cannot write sweep.csv");
    table << param << ",objective,violation_count,max_violation\n";
    char buf[64];
    auto fmt = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };

    std::vector<double> objectives;
    std::vector<long> violations;
    for (double value : grid) {
        ProblemConfig cfg = base;
        if (param == "beta") cfg.beta = value;
        else cfg.epsilon = value;
        const Plan plan = plan_day_ahead(cfg, train, support, options);
        const auto [count, magnitude] = plan_violations(plan, validation);
        objectives.push_back(plan.objective);
        violations.push_back(count);
        table << fmt(value) << ',' << fmt(plan.objective) << ',' << count << ','
              << fmt(magnitude) << '\n';
    }
    table.close();

    auto nondecreasing = [](const auto& v) {
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i] < v[i - 1]) return false;
        return true;
    };
    auto nonincreasing = [](const auto& v) {
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i] > v[i - 1]) return false;
        return true;
    };

    json summary;
    summary["param"] = param;
    summary["grid"] = grid;
    summary["objective_nondecreasing"] = nondecreasing(objectives);
    summary["objective_nonincreasing"] = nonincreasing(objectives);
    summary["violations_nondecreasing"] = nondecreasing(violations);
    {
        std::ofstream sout(fs::path(out) / "sweep_summary.json");
        sout << summary.dump(2) << "\n";
    }

    Manifest manifest;
    manifest.command = "sweep";
    manifest.parameters = flags.to_json(base);
    manifest.parameters["param"] = param;
    manifest.parameters["grid"] = grid;
    manifest.parameters["config"] = config_path;
    manifest.add_input(config_path);
    manifest.add_input(samples_file(samples_path));
    manifest.add_input(samples_file(validation_path));
    manifest.add_output("sweep.csv");
    manifest.add_output("sweep_summary.json");
    manifest.timings_ms["total"] = watch.ms();
    manifest.write(out);

    std::cout << "swept " << grid.size() << " values of " << param << "\n";
    return kOk;
}

// --- calibrate ----------------------------------------------------------------

int cmd_calibrate(const std::string& config_path, const std::string& train_path,
                  const std::string& holdout_path, const std::string& grid_text,
                  double target, const std::string& out, const PlanFlags& flags) {
    const std::vector<double> grid = parse_grid(grid_text);
    ProblemConfig cfg = config_from_json_file(config_path);
    flags.apply(cfg);
    const SampleSet train = load_samples_csv(samples_file(train_path));
    const SampleSet holdout = load_samples_csv(samples_file(holdout_path));
    const SupportSet support = build_support_set(train, flags.margin, flags.support_value());

    PlannerOptions options;
    options.tier = flags.tier_value();

    Stopwatch watch;
    const CalibrationResult result =
        calibrate_radius(train, holdout, grid, target, cfg, support, options);

    fs::create_directories(out);
    write_calibration_csv((fs::path(out) / "calibration.csv").string(), result);
    json chosen;
    chosen["epsilon"] = result.epsilon;
    chosen["qualified"] = result.qualified;
    chosen["target_violation_rate"] = target;
    {
        std::ofstream cout_(fs::path(out) / "chosen.json");
        cout_ << chosen.dump(2) << "\n";
    }

    Manifest manifest;
    manifest.command = "calibrate";
    manifest.parameters = flags.to_json(cfg);
    manifest.parameters["grid"] = grid;
    manifest.parameters["target"] = target;
    manifest.parameters["config"] = config_path;
    manifest.add_input(config_path);
    manifest.add_input(samples_file(train_path));
    manifest.add_input(samples_file(holdout_path));
    manifest.add_output("calibration.csv");
    manifest.add_output("chosen.json");
    manifest.timings_ms["total"] = watch.ms();
    manifest.write(out);

    std::cout << "chosen epsilon " << result.epsilon
              << (result.qualified ? "" : " (no grid point met the target)") << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"carbon-aware data-center fleet planning and simulation"};
    app.require_subcommand(1);

    // gen-data
    auto* gen = app.add_subcommand("gen-data", "generate synthetic load samples");
    std::string gen_spec, gen_out;
    int gen_n = 75;
    double gen_split = 0.0;
    std::uint64_t gen_split_seed = 1;
    gen->add_option("--spec", gen_spec, "generator spec JSON")->required();
    gen->add_option("--n", gen_n, "number of samples");
    gen->add_option("--out", gen_out, "output directory")->required();
    gen->add_option("--split-fraction", gen_split,
                    "also write train/validation subdirectories");
    gen->add_option("--split-seed", gen_split_seed, "shuffle seed for the split");

    // plan
    auto* plan = app.add_subcommand("plan", "solve the day-ahead problem");
    std::string plan_config, plan_samples, plan_out;
    bool plan_export_lp = false;
    PlanFlags plan_flags;
    plan->add_option("--config", plan_config, "problem config JSON")->required();
    plan->add_option("--samples", plan_samples, "training samples (dir or CSV)")->required();
    plan->add_option("--out", plan_out, "output directory")->required();
    plan_flags.add_to(plan);
    plan->add_flag("--export-lp", plan_export_lp, "also write model.lp");

    // simulate
    auto* sim = app.add_subcommand("simulate", "simulate one day of placements");
    std::string sim_plan, sim_scenario, sim_config, sim_out;
    std::string sim_policy = "tracking", sim_mode = "soft";
    int sim_jobs = 20;
    double sim_sigma = 0.1;
    std::uint64_t sim_seed = 1;
    sim->add_option("--plan", sim_plan, "plan directory")->required();
    sim->add_option("--scenario", sim_scenario, "scenario samples (dir or CSV)")->required();
    sim->add_option("--config", sim_config, "problem config JSON")->required();
    sim->add_option("--policy", sim_policy, "tracking or greedy")
        ->check(CLI::IsMember({"tracking", "greedy"}));
    sim->add_option("--mode", sim_mode, "soft or hard VCC mode")
        ->check(CLI::IsMember({"soft", "hard"}));
    sim->add_option("--jobs-per-cell", sim_jobs, "jobs per (hour, class) cell");
    sim->add_option("--sigma", sim_sigma, "relative volume sd");
    sim->add_option("--seed", sim_seed, "stream seed");
    sim->add_option("--out", sim_out, "output directory")->required();

    // compare
    auto* cmp = app.add_subcommand("compare", "DRO vs greedy vs perfect forecast");
    std::string cmp_config, cmp_samples, cmp_validation, cmp_out;
    int cmp_jobs = 20;
    double cmp_sigma = 0.1;
    std::uint64_t cmp_seed = 1;
    PlanFlags cmp_flags;
    cmp->add_option("--config", cmp_config, "problem config JSON")->required();
    cmp->add_option("--samples", cmp_samples, "training samples (dir or CSV)")->required();
    cmp->add_option("--validation", cmp_validation, "validation samples (dir or CSV)")
        ->required();
    cmp->add_option("--out", cmp_out, "output directory")->required();
    cmp_flags.add_to(cmp);
    cmp->add_option("--jobs-per-cell", cmp_jobs, "jobs per (hour, class) cell");
    cmp->add_option("--sigma", cmp_sigma, "relative volume sd");
    cmp->add_option("--seed", cmp_seed, "stream seed base");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "objective/violations across a grid");
    std::string sweep_param, sweep_grid, sweep_config, sweep_samples, sweep_validation,
        sweep_out;
    PlanFlags sweep_flags;
    sweep->add_option("--param", sweep_param, "beta or epsilon")->required();
    sweep->add_option("--grid", sweep_grid, "comma-separated values")->required();
    sweep->add_option("--config", sweep_config, "problem config JSON")->required();
    sweep->add_option("--samples", sweep_samples, "training samples")->required();
    sweep->add_option("--validation", sweep_validation, "validation samples")->required();
    sweep->add_option("--out", sweep_out, "output directory")->required();
    sweep_flags.add_to(sweep);

    // calibrate
    auto* cal = app.add_subcommand("calibrate", "cross-validate the ambiguity radius");
    std::string cal_config, cal_train, cal_holdout, cal_grid, cal_out;
    double cal_target = 0.2;
    PlanFlags cal_flags;
    cal->add_option("--config", cal_config, "problem config JSON")->required();
    cal->add_option("--train", cal_train, "training samples")->required();
    cal->add_option("--holdout", cal_holdout, "holdout samples")->required();
    cal->add_option("--grid", cal_grid, "comma-separated epsilon grid")->required();
    cal->add_option("--target", cal_target, "target holdout violation rate");
    cal->add_option("--out", cal_out, "output directory")->required();
    cal_flags.add_to(cal);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen_data(gen_spec, gen_n, gen_out, gen_split, gen_split_seed);
        if (plan->parsed())
            return cmd_plan(plan_config, plan_samples, plan_out, plan_flags, plan_export_lp);
        if (sim->parsed())
            return cmd_simulate(sim_plan, sim_scenario, sim_config, sim_policy, sim_mode,
                                sim_jobs, sim_sigma, sim_seed, sim_out);
        if (cmp->parsed())
            return cmd_compare(cmp_config, cmp_samples, cmp_validation, cmp_out, cmp_flags,
                               cmp_jobs, cmp_sigma, cmp_seed);
        if (sweep->parsed())
            return cmd_sweep(sweep_param, sweep_grid, sweep_config, sweep_samples,
                             sweep_validation, sweep_out, sweep_flags);
        if (cal->parsed())
            return cmd_calibrate(cal_config, cal_train, cal_holdout, cal_grid, cal_target,
                                 cal_out, cal_flags);
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kSolver;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    } catch (const ConfigError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
