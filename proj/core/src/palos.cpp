#include "auvctl/palos.hpp"

#include "auvctl/errors.hpp"
#include "auvctl/rotation.hpp"

namespace auvctl {

PalosReferences palos_references(const VehicleState& state, const GuidanceState& gs,
                                 int T_fut, double h, int r_f) {
    if (T_fut < 1) throw ConfigError("palos: T_fut must be >= 1");
    if (r_f < 1) throw ConfigError("palos: r_f must be >= 1");

    GuidanceState clone = gs;
    Eigen::Vector3d p = state.eta.head<3>();
    const double phi = state.eta(3); // actual roll held constant over the horizon
    const Eigen::Vector3d v_body = state.nu.head<3>();
    const double h_eff = static_cast<double>(r_f) * h;

    PalosReferences refs;
    refs.psi_d.reserve(static_cast<std::size_t>(T_fut));
    refs.theta_d.reserve(static_cast<std::size_t>(T_fut));

    for (int i = 0; i < T_fut; ++i) {
        const GuidanceOutput out = guidance_step(clone, p, h_eff);
        refs.psi_d.push_back(out.psi_d);
        refs.theta_d.push_back(out.theta_d);
        p += h_eff * rotation_matrix(phi, out.theta_d, out.psi_d) * v_body;
    }
    return refs;
}

} // namespace auvctl
