#pragma once

#include <span>
#include <vector>

#include "dip/multi_im.hpp"

namespace dip {

struct MinSeedResult {
  std::vector<NodeId> seeds;  // sorted
  long long budget_used = 0;  // final budget j; |seeds| <= j
  double f_hat = 0.0;
  double target = 0.0;  // sum of required counts, the objective's ceiling
  int rounds = 0;
  // (budget, f_hat) per round; every entry but the last failed the exit test
  std::vector<std::pair<long long, double>> rounds_log;
};

// Budget jump: j plus the remaining gap divided by the average per-seed gain
// of the last round. Zero observed gain (noise or saturation) doubles j
// instead, keeping the round count logarithmic.
long long next_budget(long long j, long long j_prev, double f, double f_prev, double target);

// Grows the budget from 1 until the budgeted solve reaches
// f_hat >= (1 - epsilon) * target. Budgets are clamped to |V|, where the
// objective is saturated by construction. Collections passed in are reused
// (and extended) across rounds; pass nullptr for self-contained use.
MinSeedResult mminseed(const Graph& g, std::span<const ThresholdSpec> specs,
                       const PrecisionParams& p, const SolveContext& ctx,
                       std::vector<SampleCollection>* collections = nullptr);

}  // namespace dip
