#pragma once

#include "dip/errors.hpp"

namespace dip {

struct PrecisionParams {
  double epsilon = 0.1;  // > 0
  double delta = 0.01;   // in (0,1)
};

void validate_precision(const PrecisionParams& p);

// Stopping/verification constants for the budgeted greedy (L requirements,
// n nodes, budget j). gamma is both the initial sample count and the coverage
// count a candidate solution must reach for a collection to verify.
struct StoppingConstants {
  double sigma = 0.0;
  double tau = 0.0;
  double phi_c = 0.0;
  double gamma = 0.0;
  int L = 1;
  long long j = 1;
  long long n = 1;
};

// ln C(n, k) via log-gamma; never materializes the binomial.
double ln_choose(long long n, long long k);

//   sigma = sqrt(ln(3L/delta))
//   tau   = sqrt((1 - 1/e) * (ln C(n,j) + ln(3L/delta)))
//   phi_c = ((1 - 1/e) * sigma + tau) / epsilon
//   gamma = 2 * (phi_c^2 + ln(3L^2 / ((2L-1) * delta)))
// Natural log throughout. Recompute whenever j changes: tau depends on it.
StoppingConstants compute_constants(int L, long long n, long long j, const PrecisionParams& p);

}  // namespace dip
