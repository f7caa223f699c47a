#pragma once

#include "auvctl/metrics.hpp"
#include "auvctl/scenario.hpp"
#include "auvctl/sim_engine.hpp"

namespace auvctl {

struct RunResult {
    TrajectoryLog log;
    MetricsReport metrics;
};

/// Wire the configured controller stack, run the multi-rate loop and compute
/// the per-channel metrics. Throws SimDivergedError if the divergence guard
/// trips.
RunResult run_scenario(const Scenario& scenario);
RunResult run_scenario(const std::filesystem::path& config_file);

/// Write <name>_trajectory.csv and <name>_metrics.json into out_dir.
void write_outputs(const RunResult& result, const std::filesystem::path& out_dir);

} // namespace auvctl
