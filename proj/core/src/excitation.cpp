#include "auvctl/excitation.hpp"

#include <cmath>

#include "auvctl/errors.hpp"

namespace auvctl {

void ExcitationConfig::validate(double box_limit, double f_sample) const {
    if (!(amplitude > 0.0) || amplitude + prbs_amplitude > box_limit) {
        throw ConfigError("excitation: amplitude exceeds the actuator box");
    }
    if (!(f0 > 0.0) || !(f1 >= f0)) throw ConfigError("excitation: need 0 < f0 <= f1");
    if (f1 > f_sample / 4.0) {
        throw ConfigError("excitation: f1 must stay below f_sample/4 (Nyquist margin)");
    }
    if (!(duration > 0.0)) throw ConfigError("excitation: duration must be positive");
    if (!(prbs_bit_period > 0.0)) throw ConfigError("excitation: bit period must be positive");
}

double chirp(double t, const ExcitationConfig& cfg) {
    if (t <= 0.0) return 0.0;
    const double tc = std::min(t, cfg.duration);
    double phase = 2.0 * kPi * (cfg.f0 * tc + (cfg.f1 - cfg.f0) * tc * tc / (2.0 * cfg.duration));
    if (t > cfg.duration) {
        phase += 2.0 * kPi * cfg.f1 * (t - cfg.duration);
    }
    return cfg.amplitude * std::sin(phase);
}

PrbsSignal::PrbsSignal(const ExcitationConfig& cfg)
    : amplitude_(cfg.prbs_amplitude), bit_period_(cfg.prbs_bit_period) {
    lfsr_ = static_cast<std::uint16_t>(cfg.seed % 0xFFFFu);
    if (lfsr_ == 0) lfsr_ = 0xACE1u;
}

bool PrbsSignal::bit(std::size_t idx) {
    while (bits_.size() <= idx) {
        // 16-bit maximal-length Fibonacci LFSR, taps 16,15,13,4
        const std::uint16_t fb =
            ((lfsr_ >> 0) ^ (lfsr_ >> 1) ^ (lfsr_ >> 3) ^ (lfsr_ >> 12)) & 1u;
        lfsr_ = static_cast<std::uint16_t>((lfsr_ >> 1) | (fb << 15));
        bits_.push_back(fb != 0);
    }
    return bits_[idx];
}

double PrbsSignal::value(double t) {
    const auto idx = static_cast<std::size_t>(std::max(0.0, t) / bit_period_);
    return bit(idx) ? amplitude_ : -amplitude_;
}

} // namespace auvctl
