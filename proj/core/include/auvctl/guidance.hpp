#pragma once

#include <vector>

#include <Eigen/Dense>

#include "auvctl/angles.hpp"

namespace auvctl {

/// Ordered 3-D waypoints in NED with the active segment index.
struct WaypointPath {
    std::vector<Eigen::Vector3d> waypoints;
    std::size_t active = 0; // segment k: from waypoints[k] to waypoints[k+1]

    void validate() const;
    const Eigen::Vector3d& segment_start() const { return waypoints[active]; }
    const Eigen::Vector3d& segment_end() const { return waypoints[active + 1]; }
    bool last_segment() const { return active + 2 >= waypoints.size(); }
};

/// Direction vector of the straight segment between two waypoints.
Eigen::Vector3d path_tangent(const Eigen::Vector3d& wp_k, const Eigen::Vector3d& wp_k1);

struct PathAngles {
    double pi_h = 0.0; // path heading
    double pi_v = 0.0; // path elevation
};

/// pi_h = atan2(y', x'); pi_v = atan2(-z', sqrt(x'^2 + y'^2)). For a purely
/// vertical tangent pi_h falls back to atan2's 0 convention.
PathAngles path_angles(const Eigen::Vector3d& tangent);

struct TrackErrors {
    double x_e = 0.0; // along-track
    double y_e = 0.0; // cross-track
    double z_e = 0.0; // vertical-track
};

/// NED position error rotated into the path-tangential frame:
/// [x_e;y_e;z_e] = R_y(pi_v)' R_z(pi_h)' (p - p_s).
TrackErrors track_errors(const Eigen::Vector3d& p, const Eigen::Vector3d& wp_k,
                         double pi_h, double pi_v);

/// Adaptive LOS state: crab-angle estimates plus the fixed gains/look-aheads.
struct AlosState {
    double beta_hat = 0.0;  // horizontal crab estimate (rad)
    double alpha_hat = 0.0; // vertical crab estimate (rad)
    double gamma_h = 0.006;
    double gamma_v = 0.006;
    double Delta_h = 5.0; // m
    double Delta_v = 5.0; // m

    void validate() const;
};

struct AlosCommands {
    double psi_d = 0.0;
    double theta_d = 0.0;
};

/// Raw LOS commands, wrapped to (-pi, pi]:
/// psi_d = pi_h - beta_hat - atan(y_e/Delta_h),
/// theta_d = pi_v + alpha_hat + atan(z_e/Delta_v).
AlosCommands alos_commands(const TrackErrors& e, const AlosState& alos, double pi_h,
                           double pi_v);

/// Forward-Euler step of the adaptive crab-angle laws. The update rates are
/// bounded by gamma*Delta for any error magnitude.
AlosState crab_update(const AlosState& alos, const TrackErrors& e, double h);

/// Critically damped second-order tracker for one LOS angle channel;
/// angle-wrap aware, continuous across waypoint switches, with a rate output.
class LosObserver {
  public:
    explicit LosObserver(double wn = 1.0);

    void reset(double angle, double rate = 0.0);
    /// Track a raw angle command; returns the filtered angle (unwrapped).
    double step(double raw_angle, double h);

    double angle() const { return angle_; }
    double rate() const { return rate_; }

  private:
    double wn_;
    double angle_ = 0.0;
    double rate_ = 0.0;
};

/// Advance the active segment while the along-track coordinate exceeds the
/// segment length minus the switch radius. Never advances past the final
/// segment.
void waypoint_switch(const Eigen::Vector3d& p_est, WaypointPath& path, double r_switch);

/// Guidance state bundle used by the simulation loop and cloned by PALOS.
struct GuidanceState {
    WaypointPath path;
    AlosState alos;
    LosObserver obs_psi{1.0};
    LosObserver obs_theta{1.0};
    double r_switch = 10.0;
    bool observers_primed = false;
};

struct GuidanceOutput {
    double psi_d = 0.0;
    double theta_d = 0.0;
    double r_d = 0.0;
    double q_d = 0.0;
    TrackErrors errors;
};

/// One full live ALOS tick: waypoint switching, track errors, crab-angle
/// adaptation and observer filtering.
GuidanceOutput guidance_step(GuidanceState& gs, const Eigen::Vector3d& p, double h);

} // namespace auvctl
