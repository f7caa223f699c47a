#include "auvctl/hydrodynamics.hpp"

#include <cmath>
#include <sstream>

#include "auvctl/errors.hpp"

namespace auvctl {

namespace {

constexpr double kSpeedEps = 1e-6; // below this U_r, angle of attack is undefined

double sq(double x) { return x * x; }

} // namespace

std::pair<double, double> spheroid_geometry(const VehicleParams& params) {
    // a/b = L/D and a*b^2 = 3m/(4 pi rho); eliminate a and bisect on b.
    const double ratio = params.L_AUV / params.D_AUV;
    const double vol_c = 3.0 * params.m / (4.0 * kPi * params.rho);
    auto f = [&](double b) { return ratio * b * b * b - vol_c; };

    double lo = 1e-6, hi = 10.0 * params.L_AUV;
    if (f(lo) > 0.0 || f(hi) < 0.0) {
        throw ConfigError("spheroid_geometry: bracket failure for given m, rho, L, D");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) <= 0.0 ? lo : hi) = mid;
    }
    const double b = 0.5 * (lo + hi);
    const double a = ratio * b;

    const double res_mass = std::abs(4.0 / 3.0 * kPi * params.rho * a * b * b - params.m) /
                            params.m;
    const double res_shape = std::abs(a / b - ratio) / ratio;
    if (res_mass > 1e-10 || res_shape > 1e-10) {
        std::ostringstream os;
        os << "spheroid_geometry: root-finder residuals too large (mass " << res_mass
           << ", shape " << res_shape << ")";
        throw ConfigError(os.str());
    }
    return {a, b};
}

LambFactors lamb_factors(double a, double b) {
    if (!(a > b && b > 0.0)) {
        throw ConfigError("lamb_factors: requires prolate spheroid a > b > 0");
    }
    LambFactors f;
    const double e2 = 1.0 - sq(b / a);
    f.e = std::sqrt(e2);
    const double e = f.e;
    // log1p keeps (0.5*log((1+e)/(1-e)) - e) accurate near the sphere limit
    const double lg = std::log1p(e) - std::log1p(-e);
    f.alpha0 = 2.0 * (1.0 - e2) / (e2 * e) * (0.5 * lg - e);
    f.beta0 = 1.0 / e2 - (1.0 - e2) / (2.0 * e2 * e) * lg;
    f.k1 = f.alpha0 / (2.0 - f.alpha0);
    f.k2 = f.beta0 / (2.0 - f.beta0);
    const double d = f.beta0 - f.alpha0;
    f.kprime = e2 * e2 * d / ((2.0 - e2) * (2.0 * e2 - (2.0 - e2) * d));
    return f;
}

std::pair<Matrix6d, Matrix6d> inertia_matrix(const VehicleParams& params,
                                             const DerivedHydro& derived) {
    Matrix6d m_cg = Matrix6d::Zero();
    m_cg.diagonal() << params.m, params.m, params.m, derived.I_x, derived.I_y, derived.I_z;
    const Matrix6d h = h_matrix(params.r_bG);
    const Matrix6d m_rb = h.transpose() * m_cg * h;

    Matrix6d m_a = Matrix6d::Zero();
    m_a.diagonal() << -derived.X_du, -derived.Y_dv, -derived.Z_dw, -derived.K_dp,
        -derived.M_dq, -derived.N_dr;

    const Matrix6d m = m_rb + m_a;
    Eigen::FullPivLU<Matrix6d> lu(m);
    if (!lu.isInvertible()) {
        throw ConfigError("inertia_matrix: singular total inertia");
    }
    return {m, lu.inverse()};
}

DerivedHydro derive_hydro(const VehicleParams& params) {
    DerivedHydro d;
    std::tie(d.a, d.b) = spheroid_geometry(params);
    d.lamb = lamb_factors(d.a, d.b);

    d.I_x = 2.0 / 5.0 * params.m * sq(d.b);
    d.I_y = 1.0 / 5.0 * params.m * (sq(d.a) + sq(d.b));
    d.I_z = d.I_y;

    d.X_du = -params.m * d.lamb.k1;
    d.Y_dv = -params.m * d.lamb.k2;
    d.Z_dw = -params.m * d.lamb.k2;
    d.K_dp = -params.r44 * d.I_x;
    d.M_dq = -d.lamb.kprime * d.I_y;
    d.N_dr = -d.lamb.kprime * d.I_y;

    std::tie(d.M, d.M_inv) = inertia_matrix(params, d);

    d.X_u = -d.M(0, 0) / params.T1;
    d.Y_v = -d.M(1, 1) / params.T2;
    d.Z_w = -d.M(2, 2) / params.T3;
    d.K_p = -d.M(3, 3) / params.T4;
    d.M_q = -d.M(4, 4) / params.T5;
    d.N_r = -d.M(5, 5) / params.T6;
    return d;
}

Matrix6d coriolis_matrix(const Vector6d& nu_r, const VehicleParams& params,
                         const DerivedHydro& derived) {
    const Eigen::Vector3d v1 = nu_r.head<3>(); // relative linear velocity
    const Eigen::Vector3d v2 = nu_r.tail<3>(); // angular rates

    // rigid body, about CG then shifted by H(r_bG)
    Matrix6d c_cg = Matrix6d::Zero();
    c_cg.block<3, 3>(0, 0) = params.m * skew(v2);
    Eigen::Vector3d iw(derived.I_x * v2.x(), derived.I_y * v2.y(), derived.I_z * v2.z());
    c_cg.block<3, 3>(3, 3) = -skew(iw);
    const Matrix6d h = h_matrix(params.r_bG);
    const Matrix6d c_rb = h.transpose() * c_cg * h;

    // added mass, diagonal M_A
    const Eigen::Vector3d a2(-derived.K_dp * v2.x(), -derived.M_dq * v2.y(),
                             -derived.N_dr * v2.z());
    Matrix6d c_a = Matrix6d::Zero();
    c_a.block<3, 3>(3, 3) = -skew(a2);
    if (params.munk_moment) {
        const Eigen::Vector3d a1(-derived.X_du * v1.x(), -derived.Y_dv * v1.y(),
                                 -derived.Z_dw * v1.z());
        c_a.block<3, 3>(0, 3) = -skew(a1);
        c_a.block<3, 3>(3, 0) = -skew(a1);
    }

    return c_rb + c_a;
}

Matrix6d damping_matrix(const Vector6d& nu_r, const DerivedHydro& derived) {
    const double u_r = nu_r.head<3>().norm();
    const double decay = std::exp(-3.0 * u_r);
    Matrix6d d = Matrix6d::Zero();
    d.diagonal() << -derived.X_u * decay, -derived.Y_v * decay, -derived.Z_w,
        -derived.K_p, -derived.M_q, -derived.N_r;
    return d;
}

Vector6d restoring_forces(const Vector6d& eta, const VehicleParams& params) {
    const double phi = eta(3), theta = eta(4);
    const double w = params.m * params.g0;
    const double xg = params.r_bG.x(), yg = params.r_bG.y(), zg = params.r_bG.z();
    const double cth = std::cos(theta), sth = std::sin(theta);
    const double cphi = std::cos(phi), sphi = std::sin(phi);

    Vector6d g = Vector6d::Zero();
    g(3) = zg * w * cth * sphi - yg * w * cth * cphi;
    g(4) = zg * w * sth + xg * w * cth * cphi;
    g(5) = xg * w * cth * sphi - yg * w * sth;
    return g;
}

Vector6d actuator_forces(const ControlInput& ctrl, const Vector6d& nu_r,
                         const VehicleParams& params) {
    if (ctrl.n_p < 0.0) {
        throw ConfigError("actuator_forces: reverse thrust (n_p < 0) is unmodeled");
    }
    const double u_rh2 = sq(nu_r(0)) + sq(nu_r(1));
    const double u_rv2 = sq(nu_r(0)) + sq(nu_r(2));

    const double qr = 0.5 * params.rho * u_rh2 * params.A_r * params.C_L_delta_r;
    const double qs = 0.5 * params.rho * u_rv2 * params.A_s * params.C_L_delta_s;

    const double x_r_force = -qr * sq(ctrl.delta_r);
    const double x_s_force = -qs * sq(ctrl.delta_s);
    const double y_r = -qr * ctrl.delta_r;
    const double z_s = -qs * ctrl.delta_s;

    const double x_prop = params.alpha_X * sq(ctrl.n_p) + params.beta_X * ctrl.n_p;
    const double k_prop = params.alpha_K * sq(ctrl.n_p) + params.beta_K * ctrl.n_p;

    Vector6d tau;
    tau << x_prop + x_r_force + x_s_force, y_r, z_s, k_prop, -params.x_s * z_s,
        params.x_r * y_r;
    return tau;
}

Vector6d lift_drag_forces(const Vector6d& nu_r, const VehicleParams& params) {
    const double u_r = nu_r.head<3>().norm();
    Vector6d tau = Vector6d::Zero();
    if (u_r < kSpeedEps) return tau;

    const double alpha = std::atan2(nu_r(2), nu_r(0));
    const double q_dyn = 0.5 * params.rho * sq(u_r) * params.S;
    const double f_lift = q_dyn * params.C_L.eval(alpha);
    const double f_drag = q_dyn * params.C_D.eval(alpha);

    const double ca = std::cos(alpha), sa = std::sin(alpha);
    tau(0) = -f_drag * ca + f_lift * sa;
    tau(2) = -f_drag * sa - f_lift * ca;
    return tau;
}

Vector6d crossflow_drag(const Vector6d& nu_r, const VehicleParams& params) {
    return crossflow_drag(nu_r, params, 21);
}

Vector6d crossflow_drag(const Vector6d& nu_r, const VehicleParams& params, int nodes) {
    if (nodes < 3 || nodes % 2 == 0) {
        throw ConfigError("crossflow_drag: Simpson rule needs an odd node count >= 3");
    }
    const double v_r = nu_r(1), w_r = nu_r(2), q = nu_r(4), r = nu_r(5);
    const double l = params.L_AUV;
    const double half = 0.5 * l;
    const double hstep = l / static_cast<double>(nodes - 1);

    double iy = 0.0, iz = 0.0, ixy = 0.0, ixz = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double x = -half + hstep * i;
        const double wgt = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        const double fy = std::abs(v_r + x * r) * (v_r + x * r);
        const double fz = std::abs(w_r + x * q) * (w_r + x * q);
        iy += wgt * fy;
        iz += wgt * fz;
        ixy += wgt * x * fy;
        ixz += wgt * x * fz;
    }
    const double scale = -0.5 * params.rho * params.D_AUV * params.C_d_2D * hstep / 3.0;

    Vector6d tau = Vector6d::Zero();
    tau(1) = scale * iy;
    tau(2) = scale * iz;
    if (params.crossflow_pairing == CrossflowPairing::Standard) {
        tau(4) = scale * ixz; // pitch moment from the heave-plane strips
        tau(5) = scale * ixy; // yaw moment from the sway-plane strips
    } else {
        tau(4) = scale * ixy;
        tau(5) = scale * ixz;
    }
    return tau;
}

Eigen::Vector3d current_to_body(const OceanCurrent& current, const Vector6d& eta) {
    return rotation_matrix(eta(3), eta(4), eta(5)).transpose() * current.ned();
}

Eigen::Vector3d current_derivative(const Eigen::Vector3d& nu_c_b, double p, double q,
                                   double r) {
    return -skew(Eigen::Vector3d(p, q, r)) * nu_c_b;
}

Vector12d state_derivative(const VehicleState& state, const ControlInput& ctrl,
                           const OceanCurrent& current, const VehicleParams& params,
                           const DerivedHydro& derived) {
    const Eigen::Vector3d nu_c_b = current_to_body(current, state.eta);
    Vector6d nu_r = state.nu;
    nu_r.head<3>() -= nu_c_b;

    const Vector6d tau = actuator_forces(ctrl, nu_r, params);
    const Vector6d tau_ld = lift_drag_forces(nu_r, params);
    const Vector6d tau_cf = crossflow_drag(nu_r, params);
    const Matrix6d c = coriolis_matrix(nu_r, params, derived);
    const Matrix6d d = damping_matrix(nu_r, derived);
    const Vector6d g = restoring_forces(state.eta, params);

    const Vector6d nu_r_dot =
        derived.M_inv * (tau + tau_ld + tau_cf - c * nu_r - d * nu_r - g);

    Vector6d nu_dot = nu_r_dot;
    nu_dot.head<3>() +=
        current_derivative(nu_c_b, state.nu(3), state.nu(4), state.nu(5));

    Vector12d out;
    out << kinematics(state.eta, state.nu), nu_dot;
    return out;
}

} // namespace auvctl
