#pragma once

#include <cstdint>
#include <vector>

#include "auvctl/angles.hpp"

namespace auvctl {

/// Chirp + PRBS excitation description.
struct ExcitationConfig {
    double amplitude = deg2rad(15.0); // chirp amplitude (rad)
    double f0 = 0.01;                 // chirp start frequency (Hz)
    double f1 = 0.5;                  // chirp end frequency (Hz)
    double duration = 300.0;          // s
    double prbs_amplitude = deg2rad(3.0);
    double prbs_bit_period = 1.0; // s
    std::uint64_t seed = 1;

    /// amplitude must fit the actuator box; f1 needs Nyquist margin.
    void validate(double box_limit, double f_sample) const;
};

/// Linear-in-time frequency sweep f0 -> f1 over the configured duration;
/// sine phase starts at zero.
double chirp(double t, const ExcitationConfig& cfg);

/// Maximal-length LFSR-driven pseudo-random binary sequence: +-amplitude,
/// constant within each bit period, deterministic for a fixed seed.
class PrbsSignal {
  public:
    explicit PrbsSignal(const ExcitationConfig& cfg);

    double value(double t);

  private:
    bool bit(std::size_t idx);

    double amplitude_;
    double bit_period_;
    std::uint16_t lfsr_;
    std::vector<bool> bits_;
};

} // namespace auvctl
