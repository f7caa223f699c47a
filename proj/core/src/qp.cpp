#include "auvctl/qp.hpp"

#include <cmath>

#include "auvctl/errors.hpp"

namespace auvctl {

namespace {

constexpr double kRhoEqFactor = 1e3; // stiffer rho on equality rows
constexpr double kRhoMin = 1e-6;
constexpr double kRhoMax = 1e6;
constexpr int kRhoCheckInterval = 25;

double inf_norm(const Eigen::VectorXd& v) {
    return v.size() > 0 ? v.lpNorm<Eigen::Infinity>() : 0.0;
}

} // namespace

AdmmSolver::AdmmSolver(BoxQp problem, QpSettings settings) : settings_(settings) {
    n_ = problem.P.rows();
    if (problem.P.cols() != n_ || problem.q.size() != n_) {
        throw ConfigError("qp: inconsistent P/q dimensions");
    }
    n_eq_ = problem.A_eq.rows();
    const Eigen::Index n_in = problem.G.rows();
    n_rows_ = n_eq_ + n_in;
    if (n_eq_ > 0 && problem.A_eq.cols() != n_) throw ConfigError("qp: A_eq column mismatch");
    if (n_in > 0 && problem.G.cols() != n_) throw ConfigError("qp: G column mismatch");
    if (problem.b_eq.size() != n_eq_) throw ConfigError("qp: b_eq size mismatch");
    if (problem.l.size() != n_in || problem.u.size() != n_in) {
        throw ConfigError("qp: box bound size mismatch");
    }
    for (Eigen::Index i = 0; i < n_in; ++i) {
        if (problem.l(i) > problem.u(i)) {
            throw InfeasibleError("qp: box constraint with l > u");
        }
    }

    A_.resize(n_rows_, n_);
    if (n_eq_ > 0) A_.topRows(n_eq_) = problem.A_eq;
    if (n_in > 0) A_.bottomRows(n_in) = problem.G;

    // Ruiz equilibration of [P A'; A 0] plus objective scaling.
    d_scale_ = Eigen::VectorXd::Ones(n_);
    e_scale_ = Eigen::VectorXd::Ones(n_rows_);
    P_ = problem.P;
    for (int it = 0; it < settings_.scaling_iterations; ++it) {
        Eigen::VectorXd dv(n_), ev(n_rows_);
        for (Eigen::Index j = 0; j < n_; ++j) {
            double m = P_.col(j).lpNorm<Eigen::Infinity>();
            if (n_rows_ > 0) m = std::max(m, A_.col(j).lpNorm<Eigen::Infinity>());
            dv(j) = m > 0.0 ? 1.0 / std::sqrt(m) : 1.0;
        }
        for (Eigen::Index i = 0; i < n_rows_; ++i) {
            const double m = A_.row(i).lpNorm<Eigen::Infinity>();
            ev(i) = m > 0.0 ? 1.0 / std::sqrt(m) : 1.0;
        }
        P_ = dv.asDiagonal() * P_ * dv.asDiagonal();
        if (n_rows_ > 0) A_ = ev.asDiagonal() * A_ * dv.asDiagonal();
        d_scale_ = d_scale_.cwiseProduct(dv);
        e_scale_ = e_scale_.cwiseProduct(ev);
    }
    double pnorm = 0.0;
    for (Eigen::Index j = 0; j < n_; ++j) pnorm += P_.col(j).lpNorm<Eigen::Infinity>();
    pnorm /= static_cast<double>(n_);
    const double qnorm = inf_norm(problem.q.cwiseProduct(d_scale_));
    const double denom = std::max(pnorm, qnorm);
    c_scale_ = denom > 0.0 ? 1.0 / denom : 1.0;
    P_ *= c_scale_;

    rho_ = Eigen::VectorXd::Constant(n_rows_, settings_.rho0);
    rho_.head(n_eq_) *= kRhoEqFactor;

    update(problem.q, problem.b_eq, problem.l, problem.u);
    factorize();
}

void AdmmSolver::update(const Eigen::VectorXd& q, const Eigen::VectorXd& b_eq,
                        const Eigen::VectorXd& l, const Eigen::VectorXd& u) {
    if (q.size() != n_ || b_eq.size() != n_eq_ ||
        l.size() != n_rows_ - n_eq_ || u.size() != n_rows_ - n_eq_) {
        throw ConfigError("qp update: size mismatch");
    }
    q_ = c_scale_ * q.cwiseProduct(d_scale_);
    lo_.resize(n_rows_);
    hi_.resize(n_rows_);
    for (Eigen::Index i = 0; i < n_eq_; ++i) {
        lo_(i) = hi_(i) = e_scale_(i) * b_eq(i);
    }
    for (Eigen::Index i = 0; i < n_rows_ - n_eq_; ++i) {
        const double s = e_scale_(n_eq_ + i);
        lo_(n_eq_ + i) = s * l(i);
        hi_(n_eq_ + i) = s * u(i);
    }
}

void AdmmSolver::factorize() {
    Eigen::MatrixXd k = P_;
    if (n_rows_ > 0) {
        k.diagonal().array() += settings_.sigma;
        k += A_.transpose() * rho_.asDiagonal() * A_;
    }
    kkt_.compute(k);
    if (kkt_.info() != Eigen::Success) {
        throw ConfigError("qp: KKT factorization failed (P not positive definite?)");
    }
}

void AdmmSolver::project(Eigen::VectorXd& w) const {
    w = w.cwiseMax(lo_).cwiseMin(hi_);
}

QpResult AdmmSolver::solve(bool warm) {
    if (!warm || !have_iterates_) {
        z_ = Eigen::VectorXd::Zero(n_);
        w_ = Eigen::VectorXd::Zero(n_rows_);
        project(w_);
        y_ = Eigen::VectorXd::Zero(n_rows_);
    } else {
        // previous w may violate updated bounds
        project(w_);
    }

    QpResult res;
    if (n_rows_ == 0) {
        // unconstrained: direct solve with one refinement step
        z_ = -kkt_.solve(q_);
        z_ -= kkt_.solve(P_ * z_ + q_);
        have_iterates_ = true;
        res.z = z_.cwiseProduct(d_scale_);
        res.dual.resize(0);
        res.status = QpStatus::Converged;
        res.iterations = 1;
        res.dual_residual = inf_norm(P_ * z_ + q_);
        return res;
    }

    const double alpha = settings_.alpha;
    int it = 0;
    double rp = 0.0, rd = 0.0;
    for (it = 1; it <= settings_.max_iterations; ++it) {
        const Eigen::VectorXd rhs =
            settings_.sigma * z_ - q_ + A_.transpose() * (rho_.cwiseProduct(w_) - y_);
        const Eigen::VectorXd zhat = kkt_.solve(rhs);
        const Eigen::VectorXd azhat = A_ * zhat;

        z_ = alpha * zhat + (1.0 - alpha) * z_;
        const Eigen::VectorXd v = alpha * azhat + (1.0 - alpha) * w_;
        Eigen::VectorXd w_next = v + y_.cwiseQuotient(rho_);
        project(w_next);
        y_ += rho_.cwiseProduct(v - w_next);
        w_ = w_next;

        const Eigen::VectorXd az = A_ * z_;
        rp = inf_norm(az - w_);
        rd = inf_norm(P_ * z_ + q_ + A_.transpose() * y_);
        if (rp < settings_.eps && rd < settings_.eps) break;

        if (settings_.adaptive_rho && it % kRhoCheckInterval == 0) {
            const double prim_scale = std::max({inf_norm(az), inf_norm(w_), 1e-12});
            const double dual_scale = std::max(
                {inf_norm(P_ * z_), inf_norm(q_), inf_norm(A_.transpose() * y_), 1e-12});
            const double ratio = std::sqrt((rp / prim_scale) / (rd / dual_scale + 1e-30));
            if (ratio > 5.0 || ratio < 0.2) {
                const double base = n_rows_ > n_eq_ ? rho_(n_rows_ - 1)
                                                    : rho_(0) / kRhoEqFactor;
                const double next = std::clamp(base * ratio, kRhoMin, kRhoMax);
                rho_ = Eigen::VectorXd::Constant(n_rows_, next);
                rho_.head(n_eq_) *= kRhoEqFactor;
                factorize();
            }
        }
    }
    have_iterates_ = true;

    res.z = z_.cwiseProduct(d_scale_);
    res.dual = y_.cwiseProduct(e_scale_) / c_scale_;
    res.iterations = std::min(it, settings_.max_iterations);
    res.status = (rp < settings_.eps && rd < settings_.eps) ? QpStatus::Converged
                                                            : QpStatus::MaxIterations;
    res.primal_residual = rp;
    res.dual_residual = rd;
    return res;
}

QpResult qp_solve(const BoxQp& problem, const QpSettings& settings) {
    AdmmSolver solver(problem, settings);
    return solver.solve();
}

} // namespace auvctl
