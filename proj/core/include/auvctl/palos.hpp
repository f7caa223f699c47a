#pragma once

#include <vector>

#include "auvctl/guidance.hpp"
#include "auvctl/hydrodynamics.hpp"

namespace auvctl {

struct PalosReferences {
    std::vector<double> psi_d;   // T_fut samples
    std::vector<double> theta_d; // T_fut samples
};

/// Predictive ALOS: iterates the guidance law over the horizon assuming the
/// commanded angles are tracked perfectly and the body velocities stay
/// constant. The position propagates with step r_f*h through
/// p <- p + h_eff * R(phi, theta_d, psi_d) * [u, v, w], with predictive
/// waypoint switching on a cloned path. Live guidance state is not mutated.
PalosReferences palos_references(const VehicleState& state, const GuidanceState& gs,
                                 int T_fut, double h, int r_f);

} // namespace auvctl
