#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "auvctl/data_matrix.hpp"
#include "auvctl/deepc_controller.hpp"
#include "auvctl/guidance.hpp"
#include "auvctl/pid.hpp"

namespace auvctl {

enum class ControllerKind { Deepc, Pid };
enum class ScenarioMode { Setpoint, Path };

struct ReferenceSpec {
    double step_time_s = 10.0;
    double psi_step_deg = 60.0;
    double z_step_m = 30.0;
    bool sinusoid = false;
    double sinusoid_onset_s = 100.0;
    double psi_amp_deg = 10.0;
    double psi_period_s = 60.0;
    double z_amp_m = 3.0;
    double z_period_s = 120.0;

    double psi_ref(double t) const;
    double z_ref(double t) const;
};

struct CurrentSpec {
    double V_c = 0.0;
    double beta_c_deg = 0.0;
    double W_c = 0.0;
    double sigma_V = 0.0;
    double sigma_beta_deg = 0.0;
    double sigma_W = 0.0;
};

struct DeepcChannelSpec {
    DeePCConfig cfg;
    std::filesystem::path dataset; // resolved against the scenario file dir
};

struct GuidanceSpec {
    double Delta_h = 5.0;
    double Delta_v = 5.0;
    double gamma_h = 0.006;
    double gamma_v = 0.006;
    double R_switch = 10.0;
    double observer_wn = 1.0;
};

/// Declarative experiment description (validated on load).
struct Scenario {
    std::string name;
    ControllerKind controller = ControllerKind::Pid;
    ScenarioMode mode = ScenarioMode::Setpoint;
    double duration_s = 0.0;
    std::uint64_t seed = 0;
    double f_inner = 20.0;
    double f_outer = 2.0;
    std::filesystem::path params_file;
    double n_p = 1000.0;
    double initial_speed = -1.0; // < 0: solve the trim speed
    CurrentSpec current;
    ReferenceSpec references;
    double wn_psi = 0.5;
    double wn_z = 0.1;
    GuidanceSpec guidance;
    std::vector<Eigen::Vector3d> waypoints;
    // PID gains, defaults from the benchmark configuration
    PidGains pid_psi{7.5, 0.75, 15.0};
    PidGains pid_z{0.1, 1e-3, 0.0};
    PidGains pid_theta{5.0, 0.3, 2.0};
    // DeePC channels (required when controller == Deepc)
    std::optional<DeepcChannelSpec> deepc_psi;
    std::optional<DeepcChannelSpec> deepc_theta;
    std::optional<DeepcChannelSpec> deepc_z;
    std::string theta_d_hold = "interp";

    std::filesystem::path base_dir; // directory of the scenario file
};

/// Parse and validate a scenario JSON file; unknown keys and type errors are
/// reported with their field path.
Scenario load_scenario(const std::filesystem::path& file);

/// Parse from an already-loaded JSON string (base_dir resolves datasets).
Scenario parse_scenario(const std::string& json_text,
                        const std::filesystem::path& base_dir);

} // namespace auvctl
