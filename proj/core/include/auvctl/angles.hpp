#pragma once

#include <cmath>
#include <numbers>

namespace auvctl {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg2rad(double d) { return d * kPi / 180.0; }
constexpr double rad2deg(double r) { return r * 180.0 / kPi; }

/// Smallest signed angle: maps any angle difference into (-pi, pi].
inline double ssa(double angle) {
    double a = std::fmod(angle + kPi, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    a -= kPi;
    // fmod puts exact multiples of 2*pi at -pi; convention is (-pi, pi]
    if (a == -kPi) a = kPi;
    return a;
}

inline double clamp_abs(double x, double limit) {
    if (x > limit) return limit;
    if (x < -limit) return -limit;
    return x;
}

} // namespace auvctl
