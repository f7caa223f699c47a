#pragma once

#include <deque>
#include <memory>
#include <optional>

#include "auvctl/data_matrix.hpp"
#include "auvctl/qp.hpp"

namespace auvctl {

/// Horizons, weights and box constraints of the DeePC program (Table-3
/// naming: lambda_ini is the slack weight lambda_y).
struct DeePCConfig {
    int T_fut = 0;  // prediction horizon N
    int T_ini = 0;
    int T_d = 0;    // data-matrix column count
    double lambda_ini = 0.0; // slack regularization (lambda_y)
    double lambda_g = 0.0;
    double Q_scalar = 1.0;
    double R_scalar = 1.0;
    double u_min = -std::numeric_limits<double>::infinity();
    double u_max = std::numeric_limits<double>::infinity();
    double y_min = -std::numeric_limits<double>::infinity();
    double y_max = std::numeric_limits<double>::infinity();
    DataMatrixKind kind = DataMatrixKind::Page;

    void validate() const;
    bool has_input_box() const;
    bool has_output_box() const;
};

struct SolverStats {
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    bool converged = true;
};

struct DeePCSolution {
    Eigen::VectorXd u_opt;   // N*m, clamped into the input box
    Eigen::VectorXd y_pred;  // N*p, exactly Y_f * g
    Eigen::VectorXd g;
    Eigen::VectorXd sigma_y; // T_ini*p slack on the past outputs
    double objective = 0.0;
    SolverStats stats;
};

/// One regularized DeePC solve, condensed to a QP in g: u = U_f g and
/// y = Y_f g are substituted, U_p g = u_ini is kept as a hard equality and
/// sigma_y = Y_p g - y_ini stays soft.
DeePCSolution solve_deepc(const DataBlocks& blocks, const Eigen::VectorXd& u_ini,
                          const Eigen::VectorXd& y_ini, const Eigen::VectorXd& r_traj,
                          const DeePCConfig& cfg);

/// Receding-horizon wrapper: rolling T_ini windows of applied inputs and
/// measured outputs, warm-started solver, hold-last-input fallback.
class DeepcController {
  public:
    DeepcController(DataBlocks blocks, DeePCConfig cfg);

    /// Windows filled; solver can run.
    bool ready() const;

    /// Append an (input, output) pair to the rolling windows.
    void record(const Eigen::VectorXd& u, const Eigen::VectorXd& y);

    struct StepOutput {
        Eigen::VectorXd u;  // first input block (or fallback)
        bool solver_ok = true;
        bool solved = false; // false during window warm-up
        SolverStats stats;
    };

    /// Solve with the current windows against the reference sequence
    /// (length N*p) and append (applied input, measurement) afterwards.
    StepOutput step(const Eigen::VectorXd& y_measured, const Eigen::VectorXd& r_traj);

    /// Solve without touching the windows (the cascade outer loop records
    /// measured pairs itself).
    StepOutput solve_only(const Eigen::VectorXd& r_traj);

    const DataBlocks& blocks() const { return blocks_; }
    const DeePCConfig& config() const { return cfg_; }

    struct Totals {
        long solves = 0;
        long failures = 0;
        long iterations = 0;
    };
    const Totals& totals() const { return totals_; }

  private:
    Eigen::VectorXd stack_window(bool inputs) const;
    StepOutput solve_internal(const Eigen::VectorXd& r_traj);

    DataBlocks blocks_;
    DeePCConfig cfg_;
    std::deque<Eigen::VectorXd> u_win_, y_win_;
    std::unique_ptr<AdmmSolver> solver_;
    Eigen::MatrixXd yf_q_; // cached Y_f' * Q for the linear term
    Eigen::MatrixXd yp_l_; // cached Y_p' * lambda_ini
    Eigen::VectorXd last_u_;
    bool warm_ = false;
    Totals totals_;
};

} // namespace auvctl
