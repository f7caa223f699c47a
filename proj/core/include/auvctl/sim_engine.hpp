#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "auvctl/hydrodynamics.hpp"
#include "auvctl/integrator.hpp"

namespace auvctl {

/// Fixed-step multi-rate loop configuration. f_inner must be an integer
/// multiple of f_outer; h = 1/f_inner.
struct SimConfig {
    double t_end = 0.0;
    double f_inner = 20.0;
    double f_outer = 2.0;
    std::uint64_t seed = 0;
    OceanCurrent current;
    double sigma_V = 0.0;    // m/s
    double sigma_beta = 0.0; // rad
    double sigma_W = 0.0;    // m/s
    ControlLimits limits;

    double h() const { return 1.0 / f_inner; }
    int rate_ratio() const;
    void validate() const;
};

/// One logged tick.
struct LogRow {
    double t = 0.0;
    Vector6d eta = Vector6d::Zero();
    Vector6d nu = Vector6d::Zero();
    ControlInput ctrl;
    double psi_d = 0.0;
    double theta_d = 0.0;
    double z_d = 0.0;
    double beta_c_hat = 0.0;
    double alpha_c_hat = 0.0;
    bool solver_ok = true;
};

/// Uniform-grid trajectory record; exportable as CSV with shortest
/// round-trip float formatting.
struct TrajectoryLog {
    double h = 0.0;
    std::vector<LogRow> rows;

    std::string to_csv() const;
    void write_csv(const std::filesystem::path& file) const;
};

/// Zero-mean Gaussian perturbation of the current at each tick; V_c clamped
/// to >= 0. Deterministic for a fixed RNG state.
OceanCurrent perturb_current(const OceanCurrent& nominal, double sigma_V,
                             double sigma_beta, double sigma_W, std::mt19937_64& rng);

/// Divergence guard thresholds (abort criteria).
bool diverged(const VehicleState& s);

} // namespace auvctl
