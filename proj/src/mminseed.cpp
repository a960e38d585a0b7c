#include "dip/mminseed.hpp"

#include <algorithm>
#include <cmath>

namespace dip {

long long next_budget(long long j, long long j_prev, double f, double f_prev, double target) {
  if (j_prev < 0 || j <= j_prev) throw Error("budget history must be increasing");
  const double gain_per_seed = (f - f_prev) / static_cast<double>(j - j_prev);
  if (!(gain_per_seed > 0.0)) return 2 * j;
  const auto jump = static_cast<long long>(std::ceil((target - f) / gain_per_seed));
  return j + (jump < 1 ? 1 : jump);
}

MinSeedResult mminseed(const Graph& g, std::span<const ThresholdSpec> specs,
                       const PrecisionParams& p, const SolveContext& ctx,
                       std::vector<SampleCollection>* collections) {
  if (specs.empty()) throw ConfigError("minimum-seed solve needs at least one requirement");
  validate_precision(p);
  for (const ThresholdSpec& s : specs)
    if (s.required > static_cast<long long>(s.ground.size()))
      throw InfeasibleError("required count exceeds ground set size");

  std::vector<SampleCollection> local;
  if (!collections) {
    local = make_collections(g, specs, ctx.root_seed);
    collections = &local;
  }
  if (collections->size() != specs.size())
    throw Error("collection list does not match requirement list");

  double target = 0.0;
  for (const ThresholdSpec& s : specs) target += static_cast<double>(s.required);
  const double threshold = (1.0 - p.epsilon) * target;

  MinSeedResult res;
  res.target = target;
  const auto n = static_cast<long long>(g.n());
  long long j = 1;
  long long j_prev = 0;
  double f_prev = 0.0;
  for (;;) {
    std::vector<NodeId> S = multi_im(g, static_cast<int>(j), p, *collections, ctx);
    ++res.rounds;
    const double f = objective_f_hat({collections->data(), collections->size()}, S);
    res.rounds_log.emplace_back(j, f);
    if (f >= threshold) {
      std::sort(S.begin(), S.end());
      res.seeds = std::move(S);
      res.budget_used = j;
      res.f_hat = f;
      return res;
    }
    if (j >= n)  // the full-vertex budget saturates the objective; see multi_im
      throw Error("internal: exit test failed at the full-vertex budget");
    const long long next = std::min(n, next_budget(j, j_prev, f, f_prev, threshold));
    j_prev = j;
    f_prev = f;
    j = next;
  }
}

}  // namespace dip
