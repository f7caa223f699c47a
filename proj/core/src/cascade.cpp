#include "auvctl/cascade.hpp"

#include "auvctl/errors.hpp"

namespace auvctl {

CascadeController::CascadeController(DataBlocks outer_blocks, DataBlocks inner_blocks,
                                     CascadeConfig cfg)
    : cfg_(cfg),
      outer_(std::move(outer_blocks), cfg.outer),
      inner_(std::move(inner_blocks), cfg.inner) {
    if (cfg_.r_f < 1) throw ConfigError("cascade: r_f must be >= 1");
}

double CascadeController::theta_d_at(long tick) const {
    if (cfg_.hold == ThetaDHold::Zoh) return theta_d_next_;
    const double slope = (theta_d_next_ - theta_d_current_) / static_cast<double>(cfg_.r_f);
    return theta_d_current_ + slope * static_cast<double>(tick - ramp_start_);
}

Eigen::VectorXd CascadeController::theta_d_ref_seq(long tick) const {
    Eigen::VectorXd refs(cfg_.inner.T_fut);
    for (int i = 0; i < cfg_.inner.T_fut; ++i) {
        refs(i) = theta_d_at(tick + 1 + i);
    }
    return refs;
}

void CascadeController::outer_update(const DepthRefProvider& z_d_seq) {
    if (!outer_.ready()) return;
    const Eigen::VectorXd refs = z_d_seq(cfg_.outer.T_fut);
    const auto sol = outer_.solve_only(refs);
    ++outer_solves_;
    // even on failure the ramp origin moves so the reference stays continuous
    theta_d_current_ = theta_d_at(tick_);
    ramp_start_ = tick_;
    if (sol.solver_ok) {
        theta_d_next_ = sol.u(0); // theta_d[k + r_f], already clamped by the box
    }
    last_outer_ok_ = sol.solver_ok;
}

CascadeController::Output CascadeController::step(double z_meas, double theta_meas,
                                                  const DepthRefProvider& z_d_seq) {
    Output out;
    if (tick_ % cfg_.r_f == 0) {
        const long before = outer_solves_;
        outer_update(z_d_seq);
        out.outer_solved = outer_solves_ > before;
        out.outer_ok = last_outer_ok_;
    }

    out.theta_d = theta_d_at(tick_);
    const Eigen::VectorXd refs = theta_d_ref_seq(tick_);
    const auto inner_out = inner_.step(Eigen::VectorXd::Constant(1, theta_meas), refs);
    out.delta_s = inner_out.u(0);
    out.inner_ok = inner_out.solver_ok;

    // outer windows: (theta, z) pairs sampled at ticks == r_f - 1 (mod r_f)
    if (tick_ % cfg_.r_f == cfg_.r_f - 1) {
        outer_.record(Eigen::VectorXd::Constant(1, theta_meas),
                      Eigen::VectorXd::Constant(1, z_meas));
    }
    ++tick_;
    return out;
}

} // namespace auvctl
