#include "auvctl/sim_engine.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "auvctl/csv_io.hpp"
#include "auvctl/errors.hpp"

namespace auvctl {

int SimConfig::rate_ratio() const {
    return static_cast<int>(std::llround(f_inner / f_outer));
}

void SimConfig::validate() const {
    if (f_inner <= 0.0 || f_outer <= 0.0) throw ConfigError("rates must be positive");
    const double r = f_inner / f_outer;
    if (std::abs(r - std::round(r)) > 1e-9) {
        throw ConfigError("f_inner must be an integer multiple of f_outer");
    }
    if (t_end < 0.0) throw ConfigError("t_end must be >= 0");
}

VehicleState integrate_step(const VehicleState& state, const ControlInput& ctrl,
                            const OceanCurrent& current, double h,
                            const VehicleParams& params, const DerivedHydro& derived,
                            const ControlLimits& limits, double t_now) {
    if (h <= 0.0) throw ConfigError("integrate_step: h must be positive");
    const ControlInput sat = saturate(ctrl, limits);
    auto f = [&](const Vector12d& x) {
        return state_derivative(VehicleState::from_packed(x), sat, current, params,
                                derived);
    };
    const Vector12d next = rk4_step(state.packed(), h, f);
    if (!next.allFinite()) {
        std::ostringstream os;
        os << "simulation diverged (NaN in derivative) at t = " << t_now << " s";
        throw SimDivergedError(os.str(), t_now);
    }
    return VehicleState::from_packed(next);
}

OceanCurrent perturb_current(const OceanCurrent& nominal, double sigma_V,
                             double sigma_beta, double sigma_W, std::mt19937_64& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    OceanCurrent c = nominal;
    c.V_c = std::max(0.0, nominal.V_c + sigma_V * n01(rng));
    c.beta_c = nominal.beta_c + sigma_beta * n01(rng);
    c.W_c = nominal.W_c + sigma_W * n01(rng);
    return c;
}

bool diverged(const VehicleState& s) {
    return !s.eta.allFinite() || !s.nu.allFinite() || s.nu.norm() > 50.0 ||
           std::abs(s.eta(4)) > deg2rad(85.0);
}

std::string TrajectoryLog::to_csv() const {
    std::ostringstream os;
    os << "t,x,y,z,phi,theta,psi,u,v,w,p,q,r,delta_s,delta_r,n_p,"
          "psi_d,theta_d,z_d,beta_c_hat,alpha_c_hat,solver_ok\n";
    for (const auto& r : rows) {
        os << format_double(r.t);
        for (int i = 0; i < 6; ++i) os << ',' << format_double(r.eta(i));
        for (int i = 0; i < 6; ++i) os << ',' << format_double(r.nu(i));
        os << ',' << format_double(r.ctrl.delta_s) << ',' << format_double(r.ctrl.delta_r)
           << ',' << format_double(r.ctrl.n_p);
        os << ',' << format_double(r.psi_d) << ',' << format_double(r.theta_d) << ','
           << format_double(r.z_d);
        os << ',' << format_double(r.beta_c_hat) << ',' << format_double(r.alpha_c_hat);
        os << ',' << (r.solver_ok ? 1 : 0) << "\n";
    }
    return os.str();
}

void TrajectoryLog::write_csv(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + file.string());
    out << to_csv();
}

} // namespace auvctl
