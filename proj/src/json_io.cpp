#include "dcsched/json_io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

#include "dcsched/csv.hpp"

namespace dcsched {

using nlohmann::json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
}

void save_json(const json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("write failed for " + path);
}

[[noreturn]] void field_error(const std::string& path, const std::string& field,
                              const std::string& what) {
    throw IoError(path + ": field '" + field + "': " + what);
}

ClusterGrid parse_cluster_grid(const json& value, int T, int D, const std::string& path,
                               const std::string& field) {
    if (value.is_number()) return ClusterGrid(T, D, value.get<double>());
    if (value.is_array() && !value.empty() && value.front().is_number()) {
        if (static_cast<int>(value.size()) != D)
            field_error(path, field, "per-cluster list must have " + std::to_string(D) +
                                         " entries");
        ClusterGrid grid(T, D);
        for (int d = 1; d <= D; ++d)
            for (int t = 1; t <= T; ++t) grid.at(t, d) = value[d - 1].get<double>();
        return grid;
    }
    if (value.is_array()) {
        if (static_cast<int>(value.size()) != T)
            field_error(path, field, "grid must have " + std::to_string(T) + " rows (t)");
        ClusterGrid grid(T, D);
        for (int t = 1; t <= T; ++t) {
            const json& row = value[t - 1];
            if (!row.is_array() || static_cast<int>(row.size()) != D)
                field_error(path, field, "row " + std::to_string(t) + " must have " +
                                             std::to_string(D) + " entries (d)");
            for (int d = 1; d <= D; ++d) grid.at(t, d) = row[d - 1].get<double>();
        }
        return grid;
    }
    field_error(path, field, "expected number, list or grid");
}

} // namespace

ProblemConfig config_from_json_file(const std::string& path) {
    const json doc = load_json(path);
    ProblemConfig cfg;
    try {
        cfg.submission_hours = doc.at("submission_hours").get<int>();
        cfg.clusters = doc.at("clusters").get<int>();
        int id = 1;
        for (const json& jc : doc.at("classes")) {
            FlexClass fc;
            fc.id = id++;
            fc.delay_tolerance = jc.at("delay_tolerance").get<int>();
            fc.allowed_clusters = jc.at("allowed_clusters").get<std::vector<int>>();
            std::sort(fc.allowed_clusters.begin(), fc.allowed_clusters.end());
            cfg.classes.push_back(std::move(fc));
        }
        cfg.beta = doc.value("beta", 0.2);
        cfg.epsilon = doc.value("epsilon", 8e-3);
        const int T = cfg.horizon(), D = cfg.clusters;
        cfg.true_capacity = parse_cluster_grid(doc.at("true_capacity"), T, D, path,
                                               "true_capacity");
        const json& carbon = doc.at("carbon_price");
        if (carbon.is_object()) {
            CostSignalParams params;
            params.base = carbon.at("base").get<double>();
            params.amplitude = carbon.at("amplitude").get<double>();
            if (carbon.contains("phase_hours"))
                params.phase_hours = carbon.at("phase_hours").get<std::vector<double>>();
            cfg.carbon_price = generate_cost_signals(T, D, params).first;
        } else {
            cfg.carbon_price = parse_cluster_grid(carbon, T, D, path, "carbon_price");
        }
        const json& infra = doc.at("infra_price");
        if (infra.is_number())
            cfg.infra_price.assign(D, infra.get<double>());
        else
            cfg.infra_price = infra.get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    cfg.validate();
    return cfg;
}

void config_to_json_file(const ProblemConfig& config, const std::string& path) {
    json doc;
    doc["submission_hours"] = config.submission_hours;
    doc["clusters"] = config.clusters;
    doc["classes"] = json::array();
    for (const FlexClass& fc : config.classes)
        doc["classes"].push_back({{"delay_tolerance", fc.delay_tolerance},
                                  {"allowed_clusters", fc.allowed_clusters}});
    const int T = config.horizon(), D = config.clusters;
    json capacity = json::array(), carbon = json::array();
    for (int t = 1; t <= T; ++t) {
        json crow = json::array(), prow = json::array();
        for (int d = 1; d <= D; ++d) {
            crow.push_back(config.true_capacity.at(t, d));
            prow.push_back(config.carbon_price.at(t, d));
        }
        capacity.push_back(crow);
        carbon.push_back(prow);
    }
    doc["true_capacity"] = capacity;
    doc["carbon_price"] = carbon;
    doc["infra_price"] = config.infra_price;
    doc["beta"] = config.beta;
    doc["epsilon"] = config.epsilon;
    save_json(doc, path);
}

GeneratorSpec generator_from_json_file(const std::string& path) {
    const json doc = load_json(path);
    GeneratorSpec spec;
    try {
        spec.submission_hours = doc.at("submission_hours").get<int>();
        spec.seed = doc.value("seed", 0ULL);
        for (const json& jc : doc.at("classes")) {
            ClassShape shape;
            shape.base = jc.value("base", 1.0);
            shape.amplitude = jc.value("amplitude", 0.0);
            shape.phase_hours = jc.value("phase_hours", 0.0);
            shape.noise_scale = jc.value("noise_scale", 0.0);
            shape.daily_volume = jc.value("daily_volume", 1.0);
            shape.jobs_per_hour = jc.value("jobs_per_hour", 1);
            spec.classes.push_back(shape);
        }
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    spec.validate();
    return spec;
}

void generator_to_json_file(const GeneratorSpec& spec, const std::string& path) {
    json doc;
    doc["submission_hours"] = spec.submission_hours;
    doc["seed"] = spec.seed;
    doc["classes"] = json::array();
    for (const ClassShape& shape : spec.classes)
        doc["classes"].push_back({{"base", shape.base},
                                  {"amplitude", shape.amplitude},
                                  {"phase_hours", shape.phase_hours},
                                  {"noise_scale", shape.noise_scale},
                                  {"daily_volume", shape.daily_volume},
                                  {"jobs_per_hour", shape.jobs_per_hour}});
    save_json(doc, path);
}

void write_plan_files(const Plan& plan, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    json doc;
    doc["kind"] = to_string(plan.kind);
    doc["tier"] = to_string(plan.tier);
    doc["beta"] = plan.beta;
    doc["epsilon"] = plan.epsilon;
    doc["num_samples"] = plan.num_samples;
    doc["objective"] = plan.objective;
    doc["q"] = plan.q;
    doc["lambda"] = plan.lambda;
    doc["p"] = plan.p;
    doc["eta"] = plan.eta;
    doc["cvar_certificate"] = plan.cvar_certificate;
    doc["solver"] = {{"status", to_string(plan.solver_status)},
                     {"iterations", plan.iterations},
                     {"seconds", plan.solve_seconds}};
    doc["dims"] = {{"K", plan.schedule.hours()},
                   {"C", plan.schedule.num_classes()},
                   {"T", plan.schedule.horizon()},
                   {"D", plan.schedule.clusters()}};
    save_json(doc, (fs::path(out_dir) / "plan.json").string());
    write_schedule_csv((fs::path(out_dir) / "schedule.csv").string(), plan.schedule);
    write_vcc_csv((fs::path(out_dir) / "vcc.csv").string(), plan.vcc);
}

Plan load_plan_files(const std::string& dir) {
    namespace fs = std::filesystem;
    const json doc = load_json((fs::path(dir) / "plan.json").string());
    Plan plan;
    try {
        const std::string kind = doc.at("kind").get<std::string>();
        if (kind == "dro") plan.kind = PlanKind::Dro;
        else if (kind == "saa") plan.kind = PlanKind::Saa;
        else if (kind == "perfect_forecast") plan.kind = PlanKind::PerfectForecast;
        else throw IoError(dir + "/plan.json: unknown kind '" + kind + "'");
        plan.tier = tier_from_string(doc.at("tier").get<std::string>());
        plan.beta = doc.at("beta").get<double>();
        plan.epsilon = doc.at("epsilon").get<double>();
        plan.num_samples = doc.at("num_samples").get<int>();
        plan.objective = doc.at("objective").get<double>();
        plan.q = doc.at("q").get<double>();
        plan.lambda = doc.at("lambda").get<double>();
        plan.p = doc.at("p").get<std::vector<double>>();
        plan.eta = doc.at("eta").get<std::vector<double>>();
        plan.cvar_certificate = doc.at("cvar_certificate").get<double>();
        const json& dims = doc.at("dims");
        const Dims dm{dims.at("K").get<int>(), dims.at("C").get<int>(),
                      dims.at("T").get<int>(), dims.at("D").get<int>()};
        plan.schedule = load_schedule_csv((fs::path(dir) / "schedule.csv").string(), dm);
        plan.vcc = load_vcc_csv((fs::path(dir) / "vcc.csv").string());
        plan.solver_status = SolveStatus::Optimal;
    } catch (const json::exception& e) {
        throw IoError(dir + "/plan.json: " + e.what());
    }
    return plan;
}

} // namespace dcsched
