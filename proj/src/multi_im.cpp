#include "dip/multi_im.hpp"

#include <cmath>
#include <queue>
#include <string>
#include <tuple>

namespace dip {

std::vector<SampleCollection> make_collections(const Graph& g,
                                               std::span<const ThresholdSpec> specs,
                                               std::uint64_t root_seed, std::uint64_t first_tag) {
  std::vector<SampleCollection> cols;
  cols.reserve(specs.size());
  for (std::size_t l = 0; l < specs.size(); ++l)
    cols.emplace_back(g, specs[l], derive_seed(root_seed, streams::kCollection, first_tag + l));
  return cols;
}

double objective_f_hat(std::span<const SampleCollection> collections, std::span<const NodeId> S) {
  double f = 0.0;
  for (const SampleCollection& c : collections) {
    const double est = c.estimate(S);
    const double req = static_cast<double>(c.spec().required);
    f += est < req ? est : req;
  }
  return f;
}

namespace {

// Incremental coverage state for one greedy pass.
struct GreedyState {
  std::span<const SampleCollection> cols;
  std::vector<std::vector<char>> covered;
  std::vector<std::size_t> cov_count;
  std::vector<double> capped;  // min(required, current estimate) per collection

  explicit GreedyState(std::span<const SampleCollection> collections) : cols(collections) {
    covered.reserve(cols.size());
    for (const auto& c : cols) {
      if (c.size() == 0) throw Error("greedy selection over an empty sample collection");
      covered.emplace_back(c.size(), 0);
    }
    cov_count.assign(cols.size(), 0);
    capped.assign(cols.size(), 0.0);
  }

  double capped_estimate(std::size_t l, std::size_t cov) const {
    const SampleCollection& c = cols[l];
    const double est = static_cast<double>(cov) / static_cast<double>(c.size()) *
                       static_cast<double>(c.spec().ground.size());
    const double req = static_cast<double>(c.spec().required);
    return est < req ? est : req;
  }

  double gain(NodeId u) const {
    double g = 0.0;
    for (std::size_t l = 0; l < cols.size(); ++l) {
      std::size_t add = 0;
      for (std::uint32_t id : cols[l].containing(u))
        if (!covered[l][id]) ++add;
      if (add) g += capped_estimate(l, cov_count[l] + add) - capped[l];
    }
    return g;
  }

  void select(NodeId u) {
    for (std::size_t l = 0; l < cols.size(); ++l) {
      for (std::uint32_t id : cols[l].containing(u))
        if (!covered[l][id]) {
          covered[l][id] = 1;
          ++cov_count[l];
        }
      capped[l] = capped_estimate(l, cov_count[l]);
    }
  }
};

struct HeapEntry {
  double gain;
  std::uint32_t round;  // |S| when this gain was computed
  NodeId node;
};

struct HeapLess {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.node > b.node;  // smaller id wins ties
  }
};

}  // namespace

std::vector<NodeId> greedy_max_fhat(std::span<const SampleCollection> collections, int k) {
  if (k < 1) throw ConfigError("greedy budget must be >= 1");
  if (collections.empty()) throw ConfigError("greedy needs at least one sample collection");
  GreedyState state(collections);
  const NodeId n = collections.front().graph().n();

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess> heap;
  for (NodeId u = 0; u < n; ++u) {
    bool touches = false;
    for (const auto& c : collections)
      if (!c.containing(u).empty()) {
        touches = true;
        break;
      }
    if (!touches) continue;
    heap.push({state.gain(u), 0, u});
  }

  std::vector<NodeId> S;
  while (static_cast<int>(S.size()) < k && !heap.empty()) {
    const HeapEntry top = heap.top();
    heap.pop();
    // Stale gains only shrink (submodularity), so a nonpositive maximum ends
    // the pass whether or not it is current.
    if (top.gain <= 0.0) break;
    if (top.round == S.size()) {
      S.push_back(top.node);
      state.select(top.node);
    } else {
      heap.push({state.gain(top.node), static_cast<std::uint32_t>(S.size()), top.node});
    }
  }
  return S;
}

std::vector<NodeId> multi_im(const Graph& g, int k, const PrecisionParams& p,
                             std::vector<SampleCollection>& collections,
                             const SolveContext& ctx) {
  if (collections.empty()) throw ConfigError("budgeted solve needs at least one collection");
  const int L = static_cast<int>(collections.size());
  const StoppingConstants c = compute_constants(L, g.n(), k, p);
  const auto gamma_count = static_cast<std::size_t>(std::ceil(c.gamma));

  auto grow = [&](SampleCollection& col, std::size_t target, int l) {
    if (target > ctx.sample_hard_cap)
      throw CapExceededError(
          "requirement " + std::to_string(l) + " needs more than " +
          std::to_string(ctx.sample_hard_cap) +
          " samples to verify; its required count looks unreachable within the deadline at "
          "budget " +
          std::to_string(k));
    col.extend(target, ctx.workers);
  };

  for (int l = 0; l < L; ++l)
    if (collections[l].size() < gamma_count) grow(collections[l], gamma_count, l);

  std::vector<char> verified(L, 0);
  for (;;) {
    std::vector<NodeId> S = greedy_max_fhat({collections.data(), collections.size()}, k);
    bool all = true;
    for (int l = 0; l < L; ++l) {
      if (verified[l]) continue;
      if (static_cast<double>(collections[l].coverage(S)) >= c.gamma) {
        verified[l] = 1;
        continue;
      }
      all = false;
      grow(collections[l], collections[l].size() * 2, l);
    }
    if (all) return S;
  }
}

}  // namespace dip
