#pragma once

#include <optional>

#include "dip/errors.hpp"

namespace dip {

// Piecewise-linear clock: rate 1 until t_s, rate r afterwards. Simulation and
// sampling run entirely on the warped axis, where every delay is consumed at
// face value; warp/unwarp convert at the boundary. warp'(x) = current rate.
struct SpeedupSchedule {
  std::optional<double> t_s;  // empty: no speedup, warp is the identity
  double r = 1.0;

  static SpeedupSchedule none() { return {}; }

  static SpeedupSchedule at(double t_s, double r) {
    if (!(t_s >= 0.0)) throw ConfigError("speedup time must be >= 0");
    if (!(r > 1.0)) throw ConfigError("rate multiplier must be > 1");
    SpeedupSchedule s;
    s.t_s = t_s;
    s.r = r;
    return s;
  }

  double warp(double x) const {
    if (!(x >= 0.0)) throw ConfigError("cannot warp a negative time");
    if (!t_s || x <= *t_s) return x;
    return *t_s + r * (x - *t_s);
  }

  double unwarp(double w) const {
    if (!(w >= 0.0)) throw ConfigError("cannot unwarp a negative time");
    if (!t_s || w <= *t_s) return w;
    return *t_s + (w - *t_s) / r;
  }
};

}  // namespace dip
