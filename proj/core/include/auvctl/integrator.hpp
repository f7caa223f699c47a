#pragma once

#include "auvctl/hydrodynamics.hpp"

namespace auvctl {

/// One classical RK4 step of x' = f(x) with step h.
template <typename Vec, typename F>
Vec rk4_step(const Vec& x, double h, F&& f) {
    const Vec k1 = f(x);
    const Vec k2 = f(Vec(x + 0.5 * h * k1));
    const Vec k3 = f(Vec(x + 0.5 * h * k2));
    const Vec k4 = f(Vec(x + h * k3));
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct ControlLimits {
    double delta_max = deg2rad(20.0); // stern/rudder deflection bound
    double theta_d_max = deg2rad(30.0); // pitch reference clamp
};

inline ControlInput saturate(const ControlInput& ctrl, const ControlLimits& lim) {
    ControlInput out = ctrl;
    out.delta_s = clamp_abs(ctrl.delta_s, lim.delta_max);
    out.delta_r = clamp_abs(ctrl.delta_r, lim.delta_max);
    return out;
}

/// RK4 step of the vehicle dynamics with zero-order-hold input and constant
/// current over the step. Saturates the input first; throws
/// SimDivergedError on NaN.
VehicleState integrate_step(const VehicleState& state, const ControlInput& ctrl,
                            const OceanCurrent& current, double h,
                            const VehicleParams& params, const DerivedHydro& derived,
                            const ControlLimits& limits = {}, double t_now = 0.0);

} // namespace auvctl
