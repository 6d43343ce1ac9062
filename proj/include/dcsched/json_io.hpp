#pragma once

#include <string>

#include "dcsched/planner.hpp"
#include "dcsched/scenario.hpp"
#include "dcsched/types.hpp"

namespace dcsched {

// JSON documents for configs, generator specs and plan metadata. The config
// schema accepts compact forms for the grids:
//   true_capacity: constant | [per-cluster] | [[row t across d] ...]
//   carbon_price:  constant | [[...]] | {base, amplitude, phase_hours?}
//   infra_price:   constant | [per-cluster]

ProblemConfig config_from_json_file(const std::string& path);
void config_to_json_file(const ProblemConfig& config, const std::string& path);

GeneratorSpec generator_from_json_file(const std::string& path);
void generator_to_json_file(const GeneratorSpec& spec, const std::string& path);

/// plan.json alongside schedule.csv and vcc.csv makes a plan directory.
void write_plan_files(const Plan& plan, const std::string& out_dir);
Plan load_plan_files(const std::string& dir);

} // namespace dcsched
