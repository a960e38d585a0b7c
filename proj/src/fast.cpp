#include "dip/fast.hpp"

#include <algorithm>
#include <cmath>

namespace dip {

SampleCollection CollectionCache::take(const ThresholdSpec& spec) {
  const Key key{spec.required, spec.deadline_w};
  auto it = entries_.find(key);
  if (it != entries_.end()) {
    SampleCollection col = std::move(it->second.col);
    entries_.erase(it);
    return col;
  }
  return SampleCollection(*g_, spec,
                          derive_seed(ctx_->root_seed, streams::kCollection, next_tag_++));
}

void CollectionCache::put(SampleCollection col) {
  if (capacity_ == 0) return;
  const Key key{col.spec().required, col.spec().deadline_w};
  entries_.erase(key);
  while (entries_.size() >= capacity_) {
    auto lru = entries_.begin();
    for (auto it = entries_.begin(); it != entries_.end(); ++it)
      if (it->second.last_used < lru->second.last_used) lru = it;
    entries_.erase(lru);
  }
  entries_.emplace(key, Entry{std::move(col), ++tick_});
}

double local_lipschitz(const EvalPoint& e1, const EvalPoint& e2, double delta_t, double floor_l) {
  const int drop_s = e1.s_s - e2.s_s;  // trigger seeds shed as t grows
  const int rise_a = e2.s_a - e1.s_a;  // activation seeds gained as t grows
  const double l = static_cast<double>(drop_s > rise_a ? drop_s : rise_a) / delta_t;
  return l > floor_l ? l : floor_l;
}

double interval_lower_bound(const EvalPoint& e1, const EvalPoint& e2, double l) {
  return 0.5 * (e1.h_prime + e2.h_prime) - 0.5 * l * (e2.t - e1.t);
}

std::optional<double> next_probe(const EvalPoint& e1, const EvalPoint& e2, double l,
                                 double delta_t) {
  double raw = 0.5 * (e1.t + e2.t) +
               static_cast<double>(e1.h_prime - e2.h_prime) / (2.0 * l);
  if (raw < e1.t) raw = e1.t;
  if (raw > e2.t) raw = e2.t;
  const double tiny = delta_t * 1e-9;
  long long k = std::llround(raw / delta_t);
  while (k * delta_t <= e1.t + tiny) ++k;
  while (k * delta_t >= e2.t - tiny) --k;
  const double snapped = static_cast<double>(k) * delta_t;
  if (snapped <= e1.t + tiny || snapped >= e2.t - tiny) return std::nullopt;
  return snapped;
}

namespace {

void validate_problem(const DipProblem& p) {
  if (!p.g) throw Error("problem has no graph");
  if (!(p.T > 0.0)) throw ConfigError("horizon must be > 0");
  if (!(p.r > 1.0)) throw ConfigError("rate multiplier must be > 1");
  if (p.trigger_required < 1) throw ConfigError("trigger requirement must be >= 1");
  if (p.activation_required < 1) throw ConfigError("activation requirement must be >= 1");
  const auto n = static_cast<long long>(p.g->n());
  if (p.trigger_required > n)
    throw InfeasibleError("trigger requirement exceeds node count");
  if (p.activation_required > n)
    throw InfeasibleError("activation requirement exceeds node count");
  validate_precision(p.precision);
  if (p.delta_t < 0.0 || p.delta_t > p.T)
    throw ConfigError("grid step must lie in (0, horizon]");
}

double grid_step(const DipProblem& p) { return p.delta_t > 0.0 ? p.delta_t : p.T / 256.0; }

double activation_deadline_w(const DipProblem& p, double t) { return t + p.r * (p.T - t); }

// Single-requirement minimum seed count, with the collection checked in and
// out of the cache around the solve.
int solve_single(const DipProblem& p, const ThresholdSpec& spec, CollectionCache& cache,
                 const SolveContext& ctx) {
  std::vector<SampleCollection> cols;
  cols.push_back(cache.take(spec));
  const MinSeedResult r = mminseed(*p.g, {&spec, 1}, p.precision, ctx, &cols);
  cache.put(std::move(cols[0]));
  return static_cast<int>(r.seeds.size());
}

}  // namespace

EvalPoint eval_h_prime(const DipProblem& p, double t, CollectionCache& cache,
                       const SolveContext& ctx) {
  EvalPoint e;
  e.t = t;
  if (t == 0.0) {
    e.s_s = p.trigger_required;  // seeding that many nodes at time 0 is optimal
  } else {
    const ThresholdSpec spec =
        make_spec_count(all_nodes(*p.g), p.trigger_required, t);
    e.s_s = solve_single(p, spec, cache, ctx);
  }
  const ThresholdSpec spec_a =
      make_spec_count(all_nodes(*p.g), p.activation_required, activation_deadline_w(p, t));
  e.s_a = solve_single(p, spec_a, cache, ctx);
  e.h_prime = e.s_s + e.s_a;
  return e;
}

EvalPoint eval_h_prime(const DipProblem& p, double t, const SolveContext& ctx) {
  validate_problem(p);
  CollectionCache cache(*p.g, ctx);
  return eval_h_prime(p, t, cache, ctx);
}

FastResult fast(const DipProblem& p, const SolveContext& ctx) {
  validate_problem(p);
  const double delta = grid_step(p);
  const double floor_l = p.lipschitz_floor > 0.0 ? p.lipschitz_floor : 1.0 / p.T;
  CollectionCache cache(*p.g, ctx);

  std::vector<EvalPoint> evals;
  evals.push_back(eval_h_prime(p, 0.0, cache, ctx));
  {
    EvalPoint at_T = eval_h_prime(p, p.T, cache, ctx);
    evals.push_back(at_T);
  }

  FastResult res;
  for (;;) {
    std::ptrdiff_t best = -1;
    double best_r = 0.0, best_l = 0.0, best_probe = 0.0;
    for (std::size_t i = 0; i + 1 < evals.size(); ++i) {
      const double l = local_lipschitz(evals[i], evals[i + 1], delta, floor_l);
      const auto probe = next_probe(evals[i], evals[i + 1], l, delta);
      if (!probe) continue;  // no free grid point left inside
      const double r = interval_lower_bound(evals[i], evals[i + 1], l);
      if (best < 0 || r < best_r) {
        best = static_cast<std::ptrdiff_t>(i);
        best_r = r;
        best_l = l;
        best_probe = *probe;
      }
    }
    if (best < 0) break;  // every interval is grid-exhausted
    if (evals[best + 1].t - evals[best].t < 1.0 / best_l) break;
    if (res.iterations >= ctx.iteration_cap) {
      res.hit_iteration_cap = true;  // best-so-far result below
      break;
    }
    const EvalPoint np = eval_h_prime(p, best_probe, cache, ctx);
    const auto pos = std::lower_bound(
        evals.begin(), evals.end(), np.t,
        [](const EvalPoint& e, double t) { return e.t < t; });
    evals.insert(pos, np);
    ++res.iterations;
  }

  const EvalPoint* best_point = &evals.front();
  for (const EvalPoint& e : evals)
    if (e.h_prime < best_point->h_prime) best_point = &e;
  res.t_bar = best_point->t;
  res.curve = evals;

  const ThresholdSpec spec_s =
      make_spec_count(all_nodes(*p.g), p.trigger_required, res.t_bar);
  const ThresholdSpec spec_a = make_spec_count(all_nodes(*p.g), p.activation_required,
                                               activation_deadline_w(p, res.t_bar));
  std::vector<ThresholdSpec> specs{spec_s, spec_a};
  std::vector<SampleCollection> cols;
  cols.push_back(cache.take(spec_s));
  cols.push_back(cache.take(spec_a));
  res.joint = mminseed(*p.g, {specs.data(), specs.size()}, p.precision, ctx, &cols);
  res.seeds = res.joint.seeds;
  return res;
}

}  // namespace dip
