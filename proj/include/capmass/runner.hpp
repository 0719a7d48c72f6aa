#pragma once

// Executes scenarios: builds the metric of every sweep point, runs the
// requested checks in dependency order and assembles the report.

#include <string>

#include "capmass/report.hpp"
#include "capmass/scenario.hpp"

namespace capmass {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunOptions {
  int jobs = 1;          // concurrent sweep points
  bool timing = false;   // record wall time in the report
};

/// Hypothesis violations are recorded, failed assertions become Fail
/// records; solver errors propagate as Error.
Report run_scenario(const Scenario& scenario, const RunOptions& options = {});
Report run_scenario_file(const std::string& path, const RunOptions& options = {});

/// Runs a single expanded point (no sweep).
PointRecord run_point(const Scenario& point, std::size_t index);

}  // namespace capmass
