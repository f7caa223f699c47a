#pragma once

#include <Eigen/Dense>

#include "auvctl/angles.hpp"
#include "auvctl/errors.hpp"

namespace auvctl {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Vector12d = Eigen::Matrix<double, 12, 1>;

/// Skew-symmetric matrix S(r) with S(r)*v = r x v.
inline Eigen::Matrix3d skew(const Eigen::Vector3d& r) {
    Eigen::Matrix3d s;
    s << 0.0, -r.z(), r.y(),
         r.z(), 0.0, -r.x(),
        -r.y(), r.x(), 0.0;
    return s;
}

/// Rigid-body transform H(r) = [I S(r)^T; 0 I] shifting generalized
/// forces/velocities between points offset by r.
inline Matrix6d h_matrix(const Eigen::Vector3d& r) {
    Matrix6d h = Matrix6d::Identity();
    h.block<3, 3>(0, 3) = skew(r).transpose();
    return h;
}

/// Body-to-NED rotation from ZYX Euler angles (roll, pitch, yaw).
inline Eigen::Matrix3d rotation_matrix(double phi, double theta, double psi) {
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    const double cth = std::cos(theta), sth = std::sin(theta);
    const double cpsi = std::cos(psi), spsi = std::sin(psi);
    Eigen::Matrix3d r;
    r << cpsi * cth, -spsi * cphi + cpsi * sth * sphi, spsi * sphi + cpsi * cphi * sth,
         spsi * cth, cpsi * cphi + sphi * sth * spsi, -cpsi * sphi + sth * spsi * cphi,
         -sth, cth * sphi, cth * cphi;
    return r;
}

inline constexpr double kGimbalMargin = 1e-6;

/// Body angular rates -> Euler angle rates. Undefined within kGimbalMargin
/// of theta = +-pi/2.
inline Eigen::Matrix3d angular_rate_matrix(double phi, double theta) {
    if (std::abs(theta) >= kPi / 2.0 - kGimbalMargin) {
        throw GimbalLockError("angular_rate_matrix: |theta| too close to 90 deg");
    }
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    const double cth = std::cos(theta), tth = std::tan(theta);
    Eigen::Matrix3d t;
    t << 1.0, sphi * tth, cphi * tth,
         0.0, cphi, -sphi,
         0.0, sphi / cth, cphi / cth;
    return t;
}

/// eta_dot = J(eta) * nu with J = blockdiag(R, T).
inline Vector6d kinematics(const Vector6d& eta, const Vector6d& nu) {
    Vector6d eta_dot;
    eta_dot.head<3>() = rotation_matrix(eta(3), eta(4), eta(5)) * nu.head<3>();
    eta_dot.tail<3>() = angular_rate_matrix(eta(3), eta(4)) * nu.tail<3>();
    return eta_dot;
}

} // namespace auvctl
