#pragma once

#include <cmath>
#include <string>

#include "dip/errors.hpp"
#include "dip/rng.hpp"

namespace dip {

// Edge delay distribution. Sampling goes through the inverse CDF so one
// uniform in [0,1) maps to one draw; that keeps draws reproducible and lets
// callers supply identity-addressed uniforms (see unit_at).
class DelayDist {
 public:
  enum class Kind { kWeibull, kDeterministic, kExponential };

  DelayDist() : DelayDist(Kind::kDeterministic, 1.0, 0.0) {}

  static DelayDist weibull(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
      throw ConfigError("weibull delay requires shape > 0 and scale > 0");
    return DelayDist(Kind::kWeibull, shape, scale);
  }

  static DelayDist deterministic(double value) {
    if (!(value >= 0.0)) throw ConfigError("deterministic delay must be >= 0");
    return DelayDist(Kind::kDeterministic, value, 0.0);
  }

  static DelayDist exponential(double rate) {
    if (!(rate > 0.0)) throw ConfigError("exponential delay requires rate > 0");
    return DelayDist(Kind::kExponential, rate, 0.0);
  }

  // Inverse CDF at u in [0,1). Always finite and non-negative.
  double sample_from_unit(double u) const {
    switch (kind_) {
      case Kind::kWeibull:
        // F(x) = 1 - exp(-(x/scale)^shape)
        return b_ * std::pow(-std::log1p(-u), 1.0 / a_);
      case Kind::kDeterministic:
        return a_;
      case Kind::kExponential:
        return -std::log1p(-u) / a_;
    }
    return 0.0;  // unreachable
  }

  double sample(Rng& rng) const { return sample_from_unit(rng.next_unit()); }

  Kind kind() const { return kind_; }

  // Weibull: a=shape, b=scale. Deterministic: a=value. Exponential: a=rate.
  double param_a() const { return a_; }
  double param_b() const { return b_; }

 private:
  DelayDist(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}

  Kind kind_;
  double a_;
  double b_;
};

}  // namespace dip
