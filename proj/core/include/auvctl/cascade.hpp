#pragma once

#include <functional>

#include "auvctl/deepc_controller.hpp"

namespace auvctl {

enum class ThetaDHold { Interp, Zoh };

struct CascadeConfig {
    DeePCConfig outer; // z -> theta_d, runs at f_outer
    DeePCConfig inner; // theta -> delta_s, runs at f_inner
    int r_f = 10;      // f_inner / f_outer
    ThetaDHold hold = ThetaDHold::Interp;
};

/// Cascaded multi-rate DeePC depth controller. The outer loop solves once
/// every r_f inner ticks on (theta, z) windows subsampled at the outer rate;
/// between updates the pitch reference is linearly interpolated (or held)
/// and extrapolated across the inner prediction horizon.
class CascadeController {
  public:
    CascadeController(DataBlocks outer_blocks, DataBlocks inner_blocks,
                      CascadeConfig cfg);

    /// Supplier of the desired-depth sequence at outer spacing (called on
    /// outer ticks with the number of samples needed).
    using DepthRefProvider = std::function<Eigen::VectorXd(int n)>;

    struct Output {
        double delta_s = 0.0;
        double theta_d = 0.0; // reference handed to the inner loop this tick
        bool outer_ok = true;
        bool inner_ok = true;
        bool outer_solved = false;
    };

    /// One inner tick: bookkeeping, outer solve on schedule, reference
    /// propagation and the inner DeePC step.
    Output step(double z_meas, double theta_meas, const DepthRefProvider& z_d_seq);

    /// Pitch reference value at an inner tick index under the active ramp.
    double theta_d_at(long tick) const;
    /// Inner-horizon reference sequence starting at tick+1.
    Eigen::VectorXd theta_d_ref_seq(long tick) const;

    double theta_d_current() const { return theta_d_current_; }
    double theta_d_next() const { return theta_d_next_; }
    long outer_solve_count() const { return outer_solves_; }
    long tick() const { return tick_; }

    const DeepcController& outer() const { return outer_; }
    const DeepcController& inner() const { return inner_; }

  private:
    void outer_update(const DepthRefProvider& z_d_seq);

    CascadeConfig cfg_;
    DeepcController outer_;
    DeepcController inner_;
    long tick_ = 0;
    long ramp_start_ = 0;
    double theta_d_current_ = 0.0;
    double theta_d_next_ = 0.0;
    long outer_solves_ = 0;
    bool last_outer_ok_ = true;
};

} // namespace auvctl
