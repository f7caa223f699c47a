#pragma once

#include <optional>
#include <string>
#include <vector>

#include "auvctl/sim_engine.hpp"

namespace auvctl {

/// Root-mean-square of (signal - reference) over the logged grid.
double rmse(const std::vector<double>& signal, const std::vector<double>& reference);

/// Wrap-aware variant for angle channels; the result is in degrees.
double rmse_angle_deg(const std::vector<double>& signal,
                      const std::vector<double>& reference);

struct ChannelMetrics {
    double rmse = 0.0;
    double max_abs_err = 0.0;
};

struct MetricsReport {
    static constexpr int kSchemaVersion = 1;
    std::string scenario;
    std::string controller;
    std::string mode;
    std::uint64_t seed = 0;
    long ticks = 0;
    double duration_s = 0.0;
    std::optional<ChannelMetrics> psi_deg;
    std::optional<ChannelMetrics> z_m;
    std::optional<ChannelMetrics> theta_deg;
    long solver_solves = 0;
    long solver_failures = 0;
    long solver_iterations = 0;

    std::string to_json() const;
    static MetricsReport from_json_file(const std::filesystem::path& file);
    void write_json(const std::filesystem::path& file) const;
};

/// Per-channel RMSE metrics from a trajectory log (z skipped in path mode).
MetricsReport compute_metrics(const TrajectoryLog& log, bool include_z);

struct CompareRow {
    std::string channel;
    std::optional<double> a;
    std::optional<double> b;
    std::string winner; // "a", "b", "tie" or "n/a"
};

/// Side-by-side per-channel RMSE ordering of two reports.
std::vector<CompareRow> compare(const MetricsReport& a, const MetricsReport& b);

std::string format_compare_table(const MetricsReport& a, const MetricsReport& b);

} // namespace auvctl
