#pragma once

#include "auvctl/angles.hpp"

namespace auvctl {

struct PidGains {
    double Kp = 0.0;
    double Ki = 0.0;
    double Kd = 0.0;
};

/// Trapezoidal-rule integrator state. No anti-windup: the integral keeps
/// accumulating while the output saturates.
struct IntegratorState {
    double integral = 0.0;
    double prev_error = 0.0;
    bool primed = false;

    double advance(double error, double h) {
        if (primed) {
            integral += 0.5 * h * (error + prev_error);
        }
        prev_error = error;
        primed = true;
        return integral;
    }
};

/// Heading PID: delta_r = -Kp*ssa(psi - psi_d) - Kd*r - Ki*integral,
/// saturated at +-delta_max.
inline double pid_heading(double psi, double psi_d, double r, IntegratorState& integ,
                          const PidGains& g, double h,
                          double delta_max = deg2rad(20.0)) {
    const double e = ssa(psi - psi_d);
    const double i = integ.advance(e, h);
    const double delta = -g.Kp * e - g.Kd * r - g.Ki * i;
    return clamp_abs(delta, delta_max);
}

struct DepthCascadeState {
    IntegratorState outer;
    IntegratorState inner;
};

struct DepthCascadeGains {
    PidGains z;     // outer PI (Kd unused)
    PidGains theta; // inner PID
};

struct DepthCascadeOutput {
    double theta_d = 0.0;
    double delta_s = 0.0;
};

/// Cascaded depth control: outer PI maps depth error to a pitch reference
/// (clamped to +-theta_d_max); the inner pitch PID commands the stern plane.
/// The inner loop uses the stabilizing sign for the tau(5) = -x_s*Z_s moment
/// convention with fins astern (x_s < 0): positive stern deflection pitches
/// the nose down.
inline DepthCascadeOutput cascaded_depth(double z, double z_d, double theta, double q,
                                         DepthCascadeState& st,
                                         const DepthCascadeGains& g, double h,
                                         double delta_max = deg2rad(20.0),
                                         double theta_d_max = deg2rad(30.0)) {
    const double e_z = z - z_d;
    const double iz = st.outer.advance(e_z, h);
    DepthCascadeOutput out;
    out.theta_d = clamp_abs(g.z.Kp * e_z + g.z.Ki * iz, theta_d_max);

    const double e_th = ssa(theta - out.theta_d);
    const double it = st.inner.advance(e_th, h);
    out.delta_s = clamp_abs(g.theta.Kp * e_th + g.theta.Kd * q + g.theta.Ki * it,
                            delta_max);
    return out;
}

} // namespace auvctl
