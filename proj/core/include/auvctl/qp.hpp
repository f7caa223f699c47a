#pragma once

#include <Eigen/Dense>

namespace auvctl {

/// Strictly convex quadratic program
///   min 1/2 z'Pz + q'z
///   s.t. A_eq z = b_eq,  l <= G z <= u
/// P must be PD (the DeePC condensation guarantees this via lambda_g).
struct BoxQp {
    Eigen::MatrixXd P;
    Eigen::VectorXd q;
    Eigen::MatrixXd A_eq; // may have zero rows
    Eigen::VectorXd b_eq;
    Eigen::MatrixXd G; // may have zero rows
    Eigen::VectorXd l;
    Eigen::VectorXd u;
};

enum class QpStatus { Converged, MaxIterations };

struct QpResult {
    Eigen::VectorXd z;
    Eigen::VectorXd dual; // multipliers for the stacked [A_eq; G] rows
    QpStatus status = QpStatus::Converged;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
};

struct QpSettings {
    double eps = 1e-8;      // primal/dual residual tolerance (scaled problem)
    int max_iterations = 20000;
    double alpha = 1.6;     // over-relaxation
    double rho0 = 0.1;      // initial step parameter, adapted online
    double sigma = 1e-6;    // proximal regularization
    bool adaptive_rho = true;
    int scaling_iterations = 10; // Ruiz equilibration passes
};

/// ADMM solver with Ruiz equilibration and cached KKT factorization, so a
/// controller can re-solve with updated q / b_eq / bounds and warm starts.
class AdmmSolver {
  public:
    explicit AdmmSolver(BoxQp problem, QpSettings settings = {});

    /// Update the data that changes between receding-horizon steps.
    void update(const Eigen::VectorXd& q, const Eigen::VectorXd& b_eq,
                const Eigen::VectorXd& l, const Eigen::VectorXd& u);

    /// warm = true reuses the previous primal/dual iterates.
    QpResult solve(bool warm = false);

    Eigen::Index dimension() const { return n_; }

  private:
    void factorize();
    void project(Eigen::VectorXd& w) const;

    QpSettings settings_;
    Eigen::Index n_ = 0;
    Eigen::Index n_eq_ = 0;
    Eigen::Index n_rows_ = 0;

    // scaled problem data
    Eigen::MatrixXd P_;
    Eigen::VectorXd q_;
    Eigen::MatrixXd A_; // stacked [A_eq; G]
    Eigen::VectorXd lo_, hi_;

    // scaling
    Eigen::VectorXd d_scale_; // variable scaling
    Eigen::VectorXd e_scale_; // constraint row scaling
    double c_scale_ = 1.0;    // objective scaling

    Eigen::VectorXd rho_;
    Eigen::LLT<Eigen::MatrixXd> kkt_;

    // iterates (scaled space), kept for warm starts
    Eigen::VectorXd z_, w_, y_;
    bool have_iterates_ = false;
};

/// One-shot convenience wrapper.
QpResult qp_solve(const BoxQp& problem, const QpSettings& settings = {});

} // namespace auvctl
