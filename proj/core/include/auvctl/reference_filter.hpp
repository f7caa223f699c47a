#pragma once

#include <cmath>
#include <vector>

#include "auvctl/errors.hpp"

namespace auvctl {

/// Critically damped second-order low-pass reference filter,
///   y'' = wn^2 (ref - y) - 2 wn y',
/// discretized exactly under zero-order-hold references. Unit DC gain and no
/// step overshoot by construction; iterating the h-step map r_f times equals
/// one step at r_f*h exactly.
class ReferenceFilter {
  public:
    explicit ReferenceFilter(double wn) : wn_(wn) {
        if (!(wn > 0.0)) throw ConfigError("reference filter: wn must be positive");
    }

    double value() const { return y_; }
    double rate() const { return dy_; }

    void reset(double y0, double dy0 = 0.0) {
        y_ = y0;
        dy_ = dy0;
    }

    /// Advance one step toward ref; returns the new filtered value.
    double step(double ref, double h) {
        const double e = std::exp(-wn_ * h);
        const double y_new = e * (1.0 + wn_ * h) * y_ + e * h * dy_ +
                             (1.0 - e * (1.0 + wn_ * h)) * ref;
        const double dy_new = -e * wn_ * wn_ * h * y_ + e * (1.0 - wn_ * h) * dy_ +
                              e * wn_ * wn_ * h * ref;
        y_ = y_new;
        dy_ = dy_new;
        return y_;
    }

    /// Next n filtered samples under a held reference, stepped at h, without
    /// mutating the live state.
    std::vector<double> predict(double ref, int n, double h) const {
        ReferenceFilter clone = *this;
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            out.push_back(clone.step(ref, h));
        }
        return out;
    }

  private:
    double wn_;
    double y_ = 0.0;
    double dy_ = 0.0;
};

} // namespace auvctl
