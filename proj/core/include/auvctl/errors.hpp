#pragma once

#include <stdexcept>
#include <string>

namespace auvctl {

/// Malformed or invariant-violating configuration / parameter input.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical blow-up detected by the simulation loop.
class SimDivergedError : public std::runtime_error {
  public:
    SimDivergedError(const std::string& what, double t_sim)
        : std::runtime_error(what), t(t_sim) {}
    double t; ///< simulation time at which divergence was detected (s)
};

/// Pitch too close to +-90 deg for the Euler-rate map.
class GimbalLockError : public std::runtime_error {
  public:
    explicit GimbalLockError(const std::string& what) : std::runtime_error(what) {}
};

/// Optimization problem with inconsistent constraints.
class InfeasibleError : public std::runtime_error {
  public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace auvctl
