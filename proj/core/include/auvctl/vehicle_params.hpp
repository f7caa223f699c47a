#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace auvctl {

enum class CrossflowPairing {
    Standard, ///< pitch moment from the heave-plane integrand, yaw from the sway-plane one
    Paper     ///< pairing as printed in the source model (pitch<->sway, yaw<->heave)
};

/// Piecewise-linear coefficient curve, clamped at the table ends.
struct CoefficientTable {
    std::vector<double> alpha_deg;
    std::vector<double> value;

    double eval(double alpha_rad) const;
};

/// REMUS-100 mass, geometry, hydrodynamic and actuator coefficients.
/// Immutable after load; values are data sourced from the open MSS toolbox.
struct VehicleParams {
    double m = 0.0;      // kg
    double L_AUV = 0.0;  // m
    double D_AUV = 0.0;  // m
    double rho = 0.0;    // kg/m^3
    double g0 = 9.81;    // m/s^2
    Eigen::Vector3d r_bG = Eigen::Vector3d::Zero(); // CG offset from body origin (m)
    double r44 = 0.0;    // roll added-inertia factor (-)
    double T1 = 0.0, T2 = 0.0, T3 = 0.0, T4 = 0.0, T5 = 0.0, T6 = 0.0; // s
    double A_r = 0.0, A_s = 0.0;                 // fin areas (m^2)
    double C_L_delta_r = 0.0, C_L_delta_s = 0.0; // fin lift slopes (1/rad)
    double x_r = 0.0, x_s = 0.0;                 // fin x-positions (m)
    double alpha_X = 0.0, beta_X = 0.0;          // thrust polynomial (N/rpm^2, N/rpm)
    double alpha_K = 0.0, beta_K = 0.0;          // torque polynomial (N*m/rpm^2, N*m/rpm)
    double S = 0.0;                              // reference area (m^2)
    double C_d_2D = 0.0;                         // 2-D cross-flow drag coefficient (-)
    CoefficientTable C_L; // lift coefficient vs angle of attack
    CoefficientTable C_D; // drag coefficient vs angle of attack
    CrossflowPairing crossflow_pairing = CrossflowPairing::Standard;
    // Bare-hull Munk moments (the linear-velocity added-mass coupling in
    // C_A). The runtime this model is calibrated against cancels them: the
    // fin model carries no fixed-fin weathervane restoring, so the full
    // coupling destabilizes yaw/pitch beyond small rates. Off zeroes both
    // coupling blocks, keeping C_A skew-symmetric and power-neutral.
    bool munk_moment = false;
};

/// Parse and validate a flat-key JSON parameter file. Unknown keys and
/// invariant violations (non-positive mass, Na, ...) raise ConfigError
/// naming the offending field.
VehicleParams load_params(const std::filesystem::path& file);

/// Canonical serialization: sorted keys, two-space indent, shortest
/// round-trip floats. save(load(f)) is byte-identical for canonical files.
std::string save_params(const VehicleParams& p);
void save_params(const VehicleParams& p, const std::filesystem::path& file);

} // namespace auvctl
