#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dip/mminseed.hpp"

namespace dip {

// One instance of the solve: reach activation_required nodes by horizon T
// when the propagation rate jumps from 1 to r as soon as trigger_required
// nodes are active.
struct DipProblem {
  const Graph* g = nullptr;
  int trigger_required = 1;
  int activation_required = 1;
  double r = 2.0;             // > 1
  double T = 1.0;             // > 0
  PrecisionParams precision;
  double delta_t = 0.0;         // candidate grid step; 0 means T/256
  double lipschitz_floor = 0.0;  // lower clamp for interval slopes; 0 means 1/T
};

// H'(t) sample: minimum seeds to fire the trigger by t (s_s) plus minimum
// seeds to reach the activation requirement given the speedup at t (s_a).
struct EvalPoint {
  double t = 0.0;
  int s_s = 0;
  int s_a = 0;
  int h_prime = 0;  // s_s + s_a
};

struct FastResult {
  double t_bar = 0.0;
  std::vector<NodeId> seeds;    // joint solve at t_bar, sorted
  std::vector<EvalPoint> curve;  // every evaluated point, ascending t
  int iterations = 0;            // probes beyond the two endpoints
  bool hit_iteration_cap = false;
  MinSeedResult joint;  // diagnostics of the final two-requirement solve
};

// Reuses sample collections across evaluations that share (required count,
// deadline); entries are evicted least-recently-used.
class CollectionCache {
 public:
  CollectionCache(const Graph& g, const SolveContext& ctx)
      : g_(&g), ctx_(&ctx), capacity_(ctx.collection_cache_entries) {}

  // Removes the collection for this spec from the cache (creating it fresh if
  // absent) and hands it to the caller; return it with put().
  SampleCollection take(const ThresholdSpec& spec);
  void put(SampleCollection col);

 private:
  struct Key {
    int required;
    double deadline_w;
    bool operator<(const Key& o) const {
      if (required != o.required) return required < o.required;
      return deadline_w < o.deadline_w;
    }
  };
  struct Entry {
    SampleCollection col;
    std::uint64_t last_used;
  };

  const Graph* g_;
  const SolveContext* ctx_;
  std::size_t capacity_;
  std::uint64_t tick_ = 0;
  std::uint64_t next_tag_ = 0;
  std::map<Key, Entry> entries_;
};

// Slope estimate for [e1.t, e2.t]: the larger of the trigger component's drop
// and the activation component's rise, per grid step delta_t; clamped below
// by floor_l.
double local_lipschitz(const EvalPoint& e1, const EvalPoint& e2, double delta_t, double floor_l);

// Sound lower bound on min H' over [e1.t, e2.t] for slope l.
double interval_lower_bound(const EvalPoint& e1, const EvalPoint& e2, double l);

// Midpoint shifted toward the lower endpoint value, snapped to the delta_t
// grid and kept strictly inside (e1.t, e2.t). Empty when the open interval
// holds no free grid point.
std::optional<double> next_probe(const EvalPoint& e1, const EvalPoint& e2, double l,
                                 double delta_t);

// H'(t) via two independent single-requirement solves; t = 0 needs no solve
// for the trigger component (any trigger_required nodes seeded at 0 do).
EvalPoint eval_h_prime(const DipProblem& p, double t, CollectionCache& cache,
                       const SolveContext& ctx);

// Convenience overload with a private cache.
EvalPoint eval_h_prime(const DipProblem& p, double t, const SolveContext& ctx);

// Lipschitz descent over t in [0, T]: repeatedly probes the interval with the
// smallest lower bound until that interval is shorter than 1/slope, then
// solves the joint problem at the best evaluated t.
FastResult fast(const DipProblem& p, const SolveContext& ctx);

}  // namespace dip
