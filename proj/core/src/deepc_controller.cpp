#include "auvctl/deepc_controller.hpp"

#include <cmath>

#include "auvctl/errors.hpp"

namespace auvctl {

void DeePCConfig::validate() const {
    if (T_fut < 1 || T_ini < 1) throw ConfigError("deepc: horizons must be >= 1");
    if (T_d < 1) throw ConfigError("deepc: T_d must be >= 1");
    if (!(lambda_ini > 0.0) || !(lambda_g > 0.0)) {
        throw ConfigError("deepc: regularization weights must be positive");
    }
    if (!(Q_scalar > 0.0) || !(R_scalar > 0.0)) {
        throw ConfigError("deepc: Q and R must be positive");
    }
    if (u_min > u_max || y_min > y_max) throw ConfigError("deepc: empty box constraint");
}

bool DeePCConfig::has_input_box() const {
    return std::isfinite(u_min) || std::isfinite(u_max);
}

bool DeePCConfig::has_output_box() const {
    return std::isfinite(y_min) || std::isfinite(y_max);
}

namespace {

BoxQp build_qp(const DataBlocks& b, const DeePCConfig& cfg, const Eigen::VectorXd& u_ini,
               const Eigen::VectorXd& y_ini, const Eigen::VectorXd& r_traj) {
    const Eigen::Index c = b.cols();
    BoxQp qp;
    qp.P = 2.0 * (cfg.Q_scalar * (b.Y_f.transpose() * b.Y_f) +
                  cfg.R_scalar * (b.U_f.transpose() * b.U_f) +
                  cfg.lambda_ini * (b.Y_p.transpose() * b.Y_p));
    qp.P.diagonal().array() += 2.0 * cfg.lambda_g;
    qp.q = -2.0 * (cfg.Q_scalar * (b.Y_f.transpose() * r_traj) +
                   cfg.lambda_ini * (b.Y_p.transpose() * y_ini));
    qp.A_eq = b.U_p;
    qp.b_eq = u_ini;

    Eigen::Index n_box = 0;
    if (cfg.has_input_box()) n_box += b.U_f.rows();
    if (cfg.has_output_box()) n_box += b.Y_f.rows();
    qp.G.resize(n_box, c);
    qp.l.resize(n_box);
    qp.u.resize(n_box);
    Eigen::Index at = 0;
    if (cfg.has_input_box()) {
        qp.G.middleRows(at, b.U_f.rows()) = b.U_f;
        qp.l.segment(at, b.U_f.rows()).setConstant(cfg.u_min);
        qp.u.segment(at, b.U_f.rows()).setConstant(cfg.u_max);
        at += b.U_f.rows();
    }
    if (cfg.has_output_box()) {
        qp.G.middleRows(at, b.Y_f.rows()) = b.Y_f;
        qp.l.segment(at, b.Y_f.rows()).setConstant(cfg.y_min);
        qp.u.segment(at, b.Y_f.rows()).setConstant(cfg.y_max);
    }
    return qp;
}

DeePCSolution extract_solution(const DataBlocks& b, const DeePCConfig& cfg,
                               const Eigen::VectorXd& y_ini,
                               const Eigen::VectorXd& r_traj, const QpResult& res) {
    DeePCSolution s;
    s.g = res.z;
    s.u_opt = b.U_f * s.g;
    if (cfg.has_input_box()) {
        s.u_opt = s.u_opt.cwiseMax(cfg.u_min).cwiseMin(cfg.u_max);
    }
    s.y_pred = b.Y_f * s.g;
    s.sigma_y = b.Y_p * s.g - y_ini;
    s.objective = cfg.Q_scalar * (r_traj - s.y_pred).squaredNorm() +
                  cfg.R_scalar * (b.U_f * s.g).squaredNorm() +
                  cfg.lambda_g * s.g.squaredNorm() +
                  cfg.lambda_ini * s.sigma_y.squaredNorm();
    s.stats.iterations = res.iterations;
    s.stats.primal_residual = res.primal_residual;
    s.stats.dual_residual = res.dual_residual;
    s.stats.converged = res.status == QpStatus::Converged;
    return s;
}

void check_dims(const DataBlocks& b, const DeePCConfig& cfg, const Eigen::VectorXd& u_ini,
                const Eigen::VectorXd& y_ini, const Eigen::VectorXd& r_traj) {
    if (b.T_ini != cfg.T_ini || b.N != cfg.T_fut) {
        throw ConfigError("deepc: blocks and config horizons disagree");
    }
    if (u_ini.size() != static_cast<Eigen::Index>(cfg.T_ini) * b.m) {
        throw ConfigError("deepc: u_ini length must be T_ini*m");
    }
    if (y_ini.size() != static_cast<Eigen::Index>(cfg.T_ini) * b.p) {
        throw ConfigError("deepc: y_ini length must be T_ini*p");
    }
    if (r_traj.size() != static_cast<Eigen::Index>(cfg.T_fut) * b.p) {
        throw ConfigError("deepc: reference length must be T_fut*p");
    }
}

} // namespace

DeePCSolution solve_deepc(const DataBlocks& blocks, const Eigen::VectorXd& u_ini,
                          const Eigen::VectorXd& y_ini, const Eigen::VectorXd& r_traj,
                          const DeePCConfig& cfg) {
    cfg.validate();
    check_dims(blocks, cfg, u_ini, y_ini, r_traj);

    // With fewer columns than U_p rows the equality system can be
    // inconsistent; report that instead of stalling in ADMM.
    if (blocks.cols() >= blocks.U_p.rows()) {
        // wide U_p from PE data is full row rank; consistency is automatic
    } else {
        const Eigen::VectorXd g_ls = blocks.U_p.completeOrthogonalDecomposition().solve(u_ini);
        const double res = (blocks.U_p * g_ls - u_ini).lpNorm<Eigen::Infinity>();
        if (res > 1e-8 * std::max(1.0, u_ini.lpNorm<Eigen::Infinity>())) {
            throw InfeasibleError("deepc: past-input equality constraints inconsistent");
        }
    }

    const QpResult res = qp_solve(build_qp(blocks, cfg, u_ini, y_ini, r_traj));
    return extract_solution(blocks, cfg, y_ini, r_traj, res);
}

DeepcController::DeepcController(DataBlocks blocks, DeePCConfig cfg)
    : blocks_(std::move(blocks)), cfg_(cfg) {
    cfg_.validate();
    if (blocks_.T_ini != cfg_.T_ini || blocks_.N != cfg_.T_fut) {
        throw ConfigError("deepc controller: blocks and config horizons disagree");
    }
    last_u_ = Eigen::VectorXd::Zero(blocks_.m);
    const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(blocks_.U_p.rows());
    const Eigen::VectorXd y0 = Eigen::VectorXd::Zero(blocks_.Y_p.rows());
    const Eigen::VectorXd r0 = Eigen::VectorXd::Zero(blocks_.Y_f.rows());
    solver_ = std::make_unique<AdmmSolver>(build_qp(blocks_, cfg_, u0, y0, r0));
    yf_q_ = cfg_.Q_scalar * blocks_.Y_f.transpose();
    yp_l_ = cfg_.lambda_ini * blocks_.Y_p.transpose();
}

bool DeepcController::ready() const {
    return static_cast<int>(u_win_.size()) == cfg_.T_ini;
}

void DeepcController::record(const Eigen::VectorXd& u, const Eigen::VectorXd& y) {
    if (u.size() != blocks_.m || y.size() != blocks_.p) {
        throw ConfigError("deepc controller: record dimension mismatch");
    }
    u_win_.push_back(u);
    y_win_.push_back(y);
    while (static_cast<int>(u_win_.size()) > cfg_.T_ini) u_win_.pop_front();
    while (static_cast<int>(y_win_.size()) > cfg_.T_ini) y_win_.pop_front();
    last_u_ = u;
}

Eigen::VectorXd DeepcController::stack_window(bool inputs) const {
    const auto& win = inputs ? u_win_ : y_win_;
    const int d = inputs ? blocks_.m : blocks_.p;
    Eigen::VectorXd out(static_cast<Eigen::Index>(win.size()) * d);
    Eigen::Index at = 0;
    for (const auto& v : win) {
        out.segment(at, d) = v;
        at += d;
    }
    return out;
}

DeepcController::StepOutput DeepcController::solve_internal(const Eigen::VectorXd& r_traj) {
    StepOutput out;
    if (!ready()) {
        out.u = last_u_;
        out.solver_ok = true;
        out.solved = false;
        return out;
    }
    if (r_traj.size() != blocks_.Y_f.rows()) {
        throw ConfigError("deepc controller: reference length must be T_fut*p");
    }
    const Eigen::VectorXd u_ini = stack_window(true);
    const Eigen::VectorXd y_ini = stack_window(false);
    const Eigen::VectorXd q = -2.0 * (yf_q_ * r_traj + yp_l_ * y_ini);

    Eigen::Index n_box = 0;
    if (cfg_.has_input_box()) n_box += blocks_.U_f.rows();
    if (cfg_.has_output_box()) n_box += blocks_.Y_f.rows();
    Eigen::VectorXd l(n_box), u(n_box);
    Eigen::Index at = 0;
    if (cfg_.has_input_box()) {
        l.segment(at, blocks_.U_f.rows()).setConstant(cfg_.u_min);
        u.segment(at, blocks_.U_f.rows()).setConstant(cfg_.u_max);
        at += blocks_.U_f.rows();
    }
    if (cfg_.has_output_box()) {
        l.segment(at, blocks_.Y_f.rows()).setConstant(cfg_.y_min);
        u.segment(at, blocks_.Y_f.rows()).setConstant(cfg_.y_max);
    }
    solver_->update(q, u_ini, l, u);
    const QpResult res = solver_->solve(warm_);
    warm_ = true;

    ++totals_.solves;
    totals_.iterations += res.iterations;

    out.solved = true;
    out.stats.iterations = res.iterations;
    out.stats.primal_residual = res.primal_residual;
    out.stats.dual_residual = res.dual_residual;
    out.stats.converged = res.status == QpStatus::Converged;
    if (!out.stats.converged) {
        ++totals_.failures;
        out.solver_ok = false;
        out.u = last_u_; // hold previous input
        return out;
    }
    Eigen::VectorXd u_opt = blocks_.U_f * res.z;
    if (cfg_.has_input_box()) {
        u_opt = u_opt.cwiseMax(cfg_.u_min).cwiseMin(cfg_.u_max);
    }
    out.u = u_opt.head(blocks_.m);
    out.solver_ok = true;
    return out;
}

DeepcController::StepOutput DeepcController::step(const Eigen::VectorXd& y_measured,
                                                  const Eigen::VectorXd& r_traj) {
    StepOutput out = solve_internal(r_traj);
    record(out.u, y_measured);
    return out;
}

DeepcController::StepOutput DeepcController::solve_only(const Eigen::VectorXd& r_traj) {
    return solve_internal(r_traj);
}

} // namespace auvctl
