#include "dip/simulate.hpp"

#include <cmath>

#include "dip/parallel.hpp"

namespace dip {

SimOutcome simulate_fixed(const Graph& g, std::span<const NodeId> seeds,
                          const SpeedupSchedule& sched, double T, Rng& rng) {
  LazyEdgeSampler sampler{&g, &rng};
  return simulate_fixed_with(g, seeds, sched, T, sampler);
}

SimOutcome simulate_dip(const Graph& g, std::span<const NodeId> seeds, int trigger_count,
                        double r, double T, Rng& rng) {
  LazyEdgeSampler sampler{&g, &rng};
  return simulate_dip_with(g, seeds, trigger_count, r, T, sampler);
}

std::vector<std::uint32_t> mc_activation_counts(const Graph& g, std::span<const NodeId> seeds,
                                                const SpeedupSchedule& sched, double T,
                                                std::size_t runs, std::uint64_t root_seed,
                                                unsigned workers) {
  std::vector<std::uint32_t> counts(runs);
  parallel_for(runs, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(derive_seed(root_seed, streams::kMcRun, i));
      const SimOutcome o = simulate_fixed(g, seeds, sched, T, rng);
      counts[i] = static_cast<std::uint32_t>(o.activations.size());
    }
  });
  return counts;
}

McEstimate summarize_counts(std::span<const std::uint32_t> counts) {
  McEstimate est;
  est.runs = counts.size();
  if (counts.empty()) return est;
  double sum = 0.0;
  for (std::uint32_t c : counts) sum += c;
  est.mean = sum / static_cast<double>(counts.size());
  if (counts.size() > 1) {
    double ss = 0.0;
    for (std::uint32_t c : counts) {
      const double d = c - est.mean;
      ss += d * d;
    }
    const double var = ss / static_cast<double>(counts.size() - 1);
    est.std_err = std::sqrt(var / static_cast<double>(counts.size()));
  }
  return est;
}

McEstimate estimate_influence_mc(const Graph& g, std::span<const NodeId> seeds,
                                 const SpeedupSchedule& sched, double T, std::size_t runs,
                                 std::uint64_t root_seed, unsigned workers) {
  if (runs < 1) throw ConfigError("simulation needs at least one run");
  const auto counts = mc_activation_counts(g, seeds, sched, T, runs, root_seed, workers);
  return summarize_counts(counts);
}

DipMcEstimate estimate_dip_mc(const Graph& g, std::span<const NodeId> seeds, int trigger_count,
                              double r, double T, std::size_t runs, std::uint64_t root_seed,
                              unsigned workers) {
  if (runs < 1) throw ConfigError("simulation needs at least one run");
  std::vector<std::uint32_t> counts(runs);
  std::vector<char> fired(runs, 0);
  parallel_for(runs, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(derive_seed(root_seed, streams::kMcRun, i));
      const SimOutcome o = simulate_dip(g, seeds, trigger_count, r, T, rng);
      counts[i] = static_cast<std::uint32_t>(o.activations.size());
      fired[i] = o.trigger_time.has_value() ? 1 : 0;
    }
  });
  const McEstimate base = summarize_counts(counts);
  DipMcEstimate est;
  est.mean = base.mean;
  est.std_err = base.std_err;
  est.runs = runs;
  std::size_t hits = 0;
  for (char f : fired) hits += static_cast<std::size_t>(f);
  est.trigger_rate = static_cast<double>(hits) / static_cast<double>(runs);
  return est;
}

}  // namespace dip
