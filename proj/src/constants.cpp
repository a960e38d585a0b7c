#include "dip/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dip {

void validate_precision(const PrecisionParams& p) {
  if (!(p.epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (!(p.delta > 0.0 && p.delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
}

double ln_choose(long long n, long long k) {
  if (k < 0 || k > n) throw ConfigError("binomial arguments out of range");
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

StoppingConstants compute_constants(int L, long long n, long long j, const PrecisionParams& p) {
  if (L < 1) throw ConfigError("number of requirements must be >= 1");
  if (j < 1 || j > n)
    throw ConfigError("budget " + std::to_string(j) + " must lie in [1, " + std::to_string(n) + "]");
  validate_precision(p);
  constexpr double kOneMinusInvE = 1.0 - 1.0 / std::numbers::e;
  StoppingConstants c;
  c.L = L;
  c.j = j;
  c.n = n;
  const double ln_3l_over_delta = std::log(3.0 * L / p.delta);
  c.sigma = std::sqrt(ln_3l_over_delta);
  c.tau = std::sqrt(kOneMinusInvE * (ln_choose(n, j) + ln_3l_over_delta));
  c.phi_c = (kOneMinusInvE * c.sigma + c.tau) / p.epsilon;
  c.gamma = 2.0 * (c.phi_c * c.phi_c +
                   std::log(3.0 * L * L / ((2.0 * L - 1.0) * p.delta)));
  return c;
}

}  // namespace dip
