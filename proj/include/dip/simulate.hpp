#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "dip/graph.hpp"
#include "dip/rng.hpp"
#include "dip/schedule.hpp"

namespace dip {

// One simulation run. Activations are (real time, node), sorted ascending by
// (time, node); seeds sit at time 0 and nothing exceeds the horizon.
struct SimOutcome {
  std::vector<std::pair<double, NodeId>> activations;
  std::optional<double> trigger_time;
  bool empty_seeds = false;

  std::size_t activated_count_at(double t) const {
    auto it = std::upper_bound(
        activations.begin(), activations.end(), t,
        [](double lhs, const std::pair<double, NodeId>& rhs) { return lhs < rhs.first; });
    return static_cast<std::size_t>(it - activations.begin());
  }

  std::optional<double> activation_time(NodeId v) const {
    for (const auto& [time, node] : activations)
      if (node == v) return time;
    return std::nullopt;
  }
};

// Edge samplers decide liveness and delay for an edge the first (and only)
// time a run relaxes it. Delay is in warped units.
struct LazyEdgeSampler {
  const Graph* g;
  Rng* rng;
  std::pair<bool, double> operator()(EdgeId e) {
    const bool live = rng->next_unit() < g->edge(e).p;
    const double delay = g->delay(e).sample(*rng);
    return {live, delay};
  }
};

// Pre-materialized realization, for coupled tests that must reuse the exact
// same randomness across different seed sets or schedules.
using Realization = std::vector<std::pair<bool, double>>;

inline Realization materialize_realization(const Graph& g, Rng& rng) {
  Realization r(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) {
    const bool live = rng.next_unit() < g.edge(e).p;
    r[e] = {live, g.delay(e).sample(rng)};
  }
  return r;
}

struct FixedEdgeSampler {
  const Realization* realization;
  std::pair<bool, double> operator()(EdgeId e) { return (*realization)[e]; }
};

namespace detail {

using EventQueue =
    std::priority_queue<std::pair<double, NodeId>, std::vector<std::pair<double, NodeId>>,
                        std::greater<>>;

inline void seed_queue(EventQueue& pq, std::span<const NodeId> seeds) {
  for (NodeId s : seeds) pq.emplace(0.0, s);
}

}  // namespace detail

// Earliest-arrival cascade under a fixed schedule, run on the warped clock.
// Each live edge consumes its sampled delay in warped units; reported times
// are real. Nodes whose real activation time would exceed T are excluded.
template <class Sampler>
SimOutcome simulate_fixed_with(const Graph& g, std::span<const NodeId> seeds,
                               const SpeedupSchedule& sched, double T, Sampler&& sample) {
  if (!(T >= 0.0)) throw ConfigError("horizon must be >= 0");
  SimOutcome out;
  if (seeds.empty()) {
    out.empty_seeds = true;
    return out;
  }
  const double deadline_w = sched.warp(T);
  std::vector<char> active(g.n(), 0);
  detail::EventQueue pq;
  detail::seed_queue(pq, seeds);
  while (!pq.empty()) {
    const auto [w, v] = pq.top();
    pq.pop();
    if (w > deadline_w) break;
    if (active[v]) continue;
    active[v] = 1;
    out.activations.emplace_back(sched.unwarp(w), v);
    for (EdgeId e : g.out_edges(v)) {
      const NodeId u = g.edge(e).dst;
      if (active[u]) continue;
      const auto [live, delay] = sample(e);
      if (!live) continue;
      const double nw = w + delay;
      if (nw <= deadline_w) pq.emplace(nw, u);
    }
  }
  return out;
}

// Cascade under the dynamic rule: rate 1 until the running activation count
// reaches trigger_count (at warped = real time w <= T), then rate r. On the
// warped clock the trigger extends the deadline from T to w + r*(T - w).
template <class Sampler>
SimOutcome simulate_dip_with(const Graph& g, std::span<const NodeId> seeds, int trigger_count,
                             double r, double T, Sampler&& sample) {
  if (!(T >= 0.0)) throw ConfigError("horizon must be >= 0");
  if (trigger_count < 1) throw ConfigError("trigger count must be >= 1");
  if (static_cast<std::uint64_t>(trigger_count) > g.n())
    throw ConfigError("trigger count exceeds node count: trigger is unreachable");
  if (!(r > 1.0)) throw ConfigError("rate multiplier must be > 1");
  SimOutcome out;
  if (seeds.empty()) {
    out.empty_seeds = true;
    return out;
  }
  std::vector<char> active(g.n(), 0);
  detail::EventQueue pq;
  detail::seed_queue(pq, seeds);
  bool triggered = false;
  double deadline_w = T;  // warped deadline once triggered; T gates the trigger before
  std::size_t count = 0;
  while (!pq.empty()) {
    const auto [w, v] = pq.top();
    pq.pop();
    // Untriggered pops beyond T cannot activate in time nor fire the trigger.
    if (w > (triggered ? deadline_w : T)) break;
    if (active[v]) continue;
    active[v] = 1;
    ++count;
    const double real = triggered && w > *out.trigger_time
                            ? *out.trigger_time + (w - *out.trigger_time) / r
                            : w;
    out.activations.emplace_back(real, v);
    if (!triggered && count >= static_cast<std::size_t>(trigger_count)) {
      triggered = true;
      out.trigger_time = w;
      deadline_w = w + r * (T - w);
    }
    // Before the trigger, an arrival can still matter if a later trigger at
    // w' >= w extends the deadline; w' + r*(T - w') is maximal at w' = w.
    const double bound = triggered ? deadline_w : w + r * (T - w);
    for (EdgeId e : g.out_edges(v)) {
      const NodeId u = g.edge(e).dst;
      if (active[u]) continue;
      const auto [live, delay] = sample(e);
      if (!live) continue;
      const double nw = w + delay;
      if (nw <= bound) pq.emplace(nw, u);
    }
  }
  return out;
}

SimOutcome simulate_fixed(const Graph& g, std::span<const NodeId> seeds,
                          const SpeedupSchedule& sched, double T, Rng& rng);

SimOutcome simulate_dip(const Graph& g, std::span<const NodeId> seeds, int trigger_count,
                        double r, double T, Rng& rng);

struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t runs = 0;
};

// Per-run activated totals under a fixed schedule; run i uses the RNG stream
// derived from (root_seed, run index), so results are identical for any
// worker count.
std::vector<std::uint32_t> mc_activation_counts(const Graph& g, std::span<const NodeId> seeds,
                                                const SpeedupSchedule& sched, double T,
                                                std::size_t runs, std::uint64_t root_seed,
                                                unsigned workers);

McEstimate estimate_influence_mc(const Graph& g, std::span<const NodeId> seeds,
                                 const SpeedupSchedule& sched, double T, std::size_t runs,
                                 std::uint64_t root_seed, unsigned workers);

struct DipMcEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  double trigger_rate = 0.0;
  std::size_t runs = 0;
};

DipMcEstimate estimate_dip_mc(const Graph& g, std::span<const NodeId> seeds, int trigger_count,
                              double r, double T, std::size_t runs, std::uint64_t root_seed,
                              unsigned workers);

McEstimate summarize_counts(std::span<const std::uint32_t> counts);

}  // namespace dip
