#pragma once

#include <Eigen/Dense>

#include "auvctl/rotation.hpp"
#include "auvctl/vehicle_params.hpp"

namespace auvctl {

/// Twelve-state simulation truth: NED pose eta and body velocity nu.
struct VehicleState {
    Vector6d eta = Vector6d::Zero(); // [x_p, y_p, z_p, phi, theta, psi]
    Vector6d nu = Vector6d::Zero();  // [u, v, w, p, q, r]

    Vector12d packed() const {
        Vector12d x;
        x << eta, nu;
        return x;
    }
    static VehicleState from_packed(const Vector12d& x) {
        VehicleState s;
        s.eta = x.head<6>();
        s.nu = x.tail<6>();
        return s;
    }
};

struct ControlInput {
    double delta_s = 0.0; // stern-plane deflection (rad)
    double delta_r = 0.0; // rudder deflection (rad)
    double n_p = 0.0;     // propeller speed (rpm), >= 0
};

struct OceanCurrent {
    double V_c = 0.0;    // horizontal magnitude (m/s), >= 0
    double beta_c = 0.0; // horizontal direction in NED (rad)
    double W_c = 0.0;    // vertical (down) component (m/s)

    Eigen::Vector3d ned() const {
        return {V_c * std::cos(beta_c), V_c * std::sin(beta_c), W_c};
    }
};

struct LambFactors {
    double e = 0.0;      // eccentricity, sqrt(1 - (b/a)^2)
    double alpha0 = 0.0;
    double beta0 = 0.0;
    double k1 = 0.0;     // longitudinal added-mass factor
    double k2 = 0.0;     // transverse added-mass factor
    double kprime = 0.0; // rotational added-inertia factor
};

/// Quantities derived once from VehicleParams: spheroid geometry, Lamb
/// factors, inertia and its inverse, linear damping coefficients.
struct DerivedHydro {
    double a = 0.0, b = 0.0; // spheroid semi-axes (m)
    LambFactors lamb;
    double I_x = 0.0, I_y = 0.0, I_z = 0.0; // rigid-body inertias (kg m^2)
    // added-mass coefficients (Fossen sign convention, X_du = -m*k1 etc.)
    double X_du = 0.0, Y_dv = 0.0, Z_dw = 0.0, K_dp = 0.0, M_dq = 0.0, N_dr = 0.0;
    Matrix6d M = Matrix6d::Zero();
    Matrix6d M_inv = Matrix6d::Zero();
    // linear damping coefficients, X_u = -m11/T1 ... N_r = -m66/T6
    double X_u = 0.0, Y_v = 0.0, Z_w = 0.0, K_p = 0.0, M_q = 0.0, N_r = 0.0;
};

/// Spheroid semi-axes for the hull: fineness ratio a/b = L/D preserved and
/// the semi-axes rescaled so m = (4/3) pi rho a b^2 holds. Solved by
/// bisection on b with a eliminated; both residuals < 1e-10 on return.
std::pair<double, double> spheroid_geometry(const VehicleParams& params);

/// Lamb k-factors for a prolate spheroid with semi-axes a > b.
LambFactors lamb_factors(double a, double b);

/// Total inertia M = M_RB + M_A and its inverse.
/// M_RB = H(r_bG)^T diag{m,m,m,I_x,I_y,I_z} H(r_bG).
std::pair<Matrix6d, Matrix6d> inertia_matrix(const VehicleParams& params,
                                             const DerivedHydro& derived);

/// Full derivation pipeline from a parameter set.
DerivedHydro derive_hydro(const VehicleParams& params);

/// C(nu_r) = C_RB(nu_r) + C_A(nu_r).
Matrix6d coriolis_matrix(const Vector6d& nu_r, const VehicleParams& params,
                         const DerivedHydro& derived);

/// Diagonal damping; surge/sway entries decay exponentially with the total
/// relative speed U_r.
Matrix6d damping_matrix(const Vector6d& nu_r, const DerivedHydro& derived);

/// Gravity/buoyancy restoring vector for a neutrally buoyant vehicle.
/// Force rows are zero; moments depend on roll/pitch only.
Vector6d restoring_forces(const Vector6d& eta, const VehicleParams& params);

/// Fin lift/drag plus propeller thrust and torque. n_p must be >= 0.
Vector6d actuator_forces(const ControlInput& ctrl, const Vector6d& nu_r,
                         const VehicleParams& params);

/// Hull lift/drag resolved into surge/heave from the angle of attack.
/// Returns zero below a relative-speed epsilon where alpha is undefined.
Vector6d lift_drag_forces(const Vector6d& nu_r, const VehicleParams& params);

/// Strip-theory cross-flow drag integrals (composite Simpson, 21 nodes).
Vector6d crossflow_drag(const Vector6d& nu_r, const VehicleParams& params);

/// Same, with an explicit node count (odd, >= 3) for refinement checks.
Vector6d crossflow_drag(const Vector6d& nu_r, const VehicleParams& params, int nodes);

/// Ocean current rotated into the body frame.
Eigen::Vector3d current_to_body(const OceanCurrent& current, const Vector6d& eta);

/// d/dt of the body-frame current: -S([p,q,r]) * nu_c_b.
Eigen::Vector3d current_derivative(const Eigen::Vector3d& nu_c_b, double p, double q,
                                   double r);

/// Full 12-state derivative [eta_dot; nu_dot] of the relative-velocity
/// dynamics with current compensation.
Vector12d state_derivative(const VehicleState& state, const ControlInput& ctrl,
                           const OceanCurrent& current, const VehicleParams& params,
                           const DerivedHydro& derived);

} // namespace auvctl
