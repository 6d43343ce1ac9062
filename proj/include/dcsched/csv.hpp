#pragma once

#include <string>
#include <vector>

#include "dcsched/calibration.hpp"
#include "dcsched/realtime.hpp"
#include "dcsched/types.hpp"

namespace dcsched {

// CSV interchange. All floating-point values are written with 17 significant
// digits so write-then-read round-trips exactly; readers validate schemas and
// cite 1-based row numbers (header included) in error messages.

void write_samples_csv(const std::string& path, const SampleSet& samples);
SampleSet load_samples_csv(const std::string& path);

void write_schedule_csv(const std::string& path, const ScheduleTensor& schedule);
ScheduleTensor load_schedule_csv(const std::string& path, const Dims& dims);

void write_vcc_csv(const std::string& path, const ClusterGrid& vcc);
ClusterGrid load_vcc_csv(const std::string& path);

void write_jobs_csv(const std::string& path, const JobStream& stream);
JobStream load_jobs_csv(const std::string& path);

void write_executed_csv(const std::string& path, const ClusterGrid& executed);
void write_queue_csv(const std::string& path, const ClusterGrid& queue_length);
void write_placements_csv(const std::string& path, const std::vector<Placement>& placements);

void write_calibration_csv(const std::string& path, const CalibrationResult& result);

} // namespace dcsched
