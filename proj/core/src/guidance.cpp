#include "auvctl/guidance.hpp"

#include <cmath>

#include "auvctl/errors.hpp"
#include "auvctl/rotation.hpp"

namespace auvctl {

void WaypointPath::validate() const {
    if (waypoints.size() < 2) throw ConfigError("path: need at least 2 waypoints");
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        if ((waypoints[i] - waypoints[i - 1]).norm() < 1e-9) {
            throw ConfigError("path: consecutive waypoints coincide");
        }
    }
    if (active + 1 >= waypoints.size()) throw ConfigError("path: active segment out of range");
}

Eigen::Vector3d path_tangent(const Eigen::Vector3d& wp_k, const Eigen::Vector3d& wp_k1) {
    const Eigen::Vector3d t = wp_k1 - wp_k;
    if (t.norm() < 1e-9) throw ConfigError("path_tangent: coincident waypoints");
    return t;
}

PathAngles path_angles(const Eigen::Vector3d& t) {
    PathAngles a;
    a.pi_h = std::atan2(t.y(), t.x());
    a.pi_v = std::atan2(-t.z(), std::hypot(t.x(), t.y()));
    return a;
}

TrackErrors track_errors(const Eigen::Vector3d& p, const Eigen::Vector3d& wp_k,
                         double pi_h, double pi_v) {
    const double ch = std::cos(pi_h), sh = std::sin(pi_h);
    const double cv = std::cos(pi_v), sv = std::sin(pi_v);
    Eigen::Matrix3d rz, ry;
    rz << ch, -sh, 0.0, sh, ch, 0.0, 0.0, 0.0, 1.0;
    ry << cv, 0.0, sv, 0.0, 1.0, 0.0, -sv, 0.0, cv;
    const Eigen::Vector3d e = ry.transpose() * (rz.transpose() * (p - wp_k));
    return {e.x(), e.y(), e.z()};
}

void AlosState::validate() const {
    if (!(Delta_h > 0.0) || !(Delta_v > 0.0)) {
        throw ConfigError("alos: look-ahead distances must be positive");
    }
    if (!(gamma_h > 0.0) || !(gamma_v > 0.0)) {
        throw ConfigError("alos: adaptation gains must be positive");
    }
}

AlosCommands alos_commands(const TrackErrors& e, const AlosState& alos, double pi_h,
                           double pi_v) {
    AlosCommands c;
    c.psi_d = ssa(pi_h - alos.beta_hat - std::atan(e.y_e / alos.Delta_h));
    c.theta_d = ssa(pi_v + alos.alpha_hat + std::atan(e.z_e / alos.Delta_v));
    return c;
}

AlosState crab_update(const AlosState& alos, const TrackErrors& e, double h) {
    AlosState next = alos;
    next.beta_hat += h * alos.gamma_h * e.y_e * alos.Delta_h /
                     std::sqrt(alos.Delta_h * alos.Delta_h + e.y_e * e.y_e);
    next.alpha_hat += h * alos.gamma_v * e.z_e * alos.Delta_v /
                      std::sqrt(alos.Delta_v * alos.Delta_v + e.z_e * e.z_e);
    return next;
}

LosObserver::LosObserver(double wn) : wn_(wn) {
    if (!(wn > 0.0)) throw ConfigError("los observer: wn must be positive");
}

void LosObserver::reset(double angle, double rate) {
    angle_ = angle;
    rate_ = rate;
}

double LosObserver::step(double raw_angle, double h) {
    // unwrap the command relative to the internal state, then track it with
    // the exact critically damped discretization
    const double target = angle_ + ssa(raw_angle - angle_);
    const double e = std::exp(-wn_ * h);
    const double y_new = e * (1.0 + wn_ * h) * angle_ + e * h * rate_ +
                         (1.0 - e * (1.0 + wn_ * h)) * target;
    const double r_new = -e * wn_ * wn_ * h * angle_ + e * (1.0 - wn_ * h) * rate_ +
                         e * wn_ * wn_ * h * target;
    angle_ = y_new;
    rate_ = r_new;
    return angle_;
}

void waypoint_switch(const Eigen::Vector3d& p_est, WaypointPath& path, double r_switch) {
    while (!path.last_segment()) {
        const Eigen::Vector3d t = path_tangent(path.segment_start(), path.segment_end());
        const PathAngles a = path_angles(t);
        const TrackErrors e = track_errors(p_est, path.segment_start(), a.pi_h, a.pi_v);
        if (e.x_e >= t.norm() - r_switch) {
            ++path.active;
        } else {
            break;
        }
    }
}

GuidanceOutput guidance_step(GuidanceState& gs, const Eigen::Vector3d& p, double h) {
    waypoint_switch(p, gs.path, gs.r_switch);
    const Eigen::Vector3d t = path_tangent(gs.path.segment_start(), gs.path.segment_end());
    const PathAngles a = path_angles(t);

    GuidanceOutput out;
    out.errors = track_errors(p, gs.path.segment_start(), a.pi_h, a.pi_v);
    const AlosCommands raw = alos_commands(out.errors, gs.alos, a.pi_h, a.pi_v);
    gs.alos = crab_update(gs.alos, out.errors, h);

    if (!gs.observers_primed) {
        gs.obs_psi.reset(raw.psi_d);
        gs.obs_theta.reset(raw.theta_d);
        gs.observers_primed = true;
    }
    out.psi_d = gs.obs_psi.step(raw.psi_d, h);
    out.theta_d = gs.obs_theta.step(raw.theta_d, h);
    out.r_d = gs.obs_psi.rate();
    out.q_d = gs.obs_theta.rate();
    return out;
}

} // namespace auvctl
