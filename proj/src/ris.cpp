#include "dip/ris.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "dip/errors.hpp"
#include "dip/parallel.hpp"

namespace dip {

std::vector<NodeId> all_nodes(const Graph& g) {
  std::vector<NodeId> v(g.n());
  for (NodeId i = 0; i < g.n(); ++i) v[i] = i;
  return v;
}

long long ceil_fraction(double fraction, std::size_t size) {
  return static_cast<long long>(std::ceil(fraction * static_cast<double>(size) - 1e-9));
}

ThresholdSpec make_spec_count(std::vector<NodeId> ground, long long required, double deadline_w) {
  if (ground.empty()) throw ConfigError("threshold ground set is empty");
  if (!(deadline_w >= 0.0)) throw ConfigError("deadline must be >= 0");
  if (required < 1) throw ConfigError("required count must be >= 1");
  std::sort(ground.begin(), ground.end());
  ground.erase(std::unique(ground.begin(), ground.end()), ground.end());
  if (required > static_cast<long long>(ground.size()))
    throw InfeasibleError("required count " + std::to_string(required) +
                          " exceeds ground set size " + std::to_string(ground.size()));
  ThresholdSpec s;
  s.ground = std::move(ground);
  s.required = static_cast<int>(required);
  s.deadline_w = deadline_w;
  return s;
}

ThresholdSpec make_spec_fraction(std::vector<NodeId> ground, double fraction, double deadline_w) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw ConfigError("threshold fraction must lie in (0, 1]");
  const long long required = ceil_fraction(fraction, ground.size());
  return make_spec_count(std::move(ground), required < 1 ? 1 : required, deadline_w);
}

namespace {

// Per-thread scratch for the reverse traversal; stamp-versioned so calls skip
// the O(n) reset.
struct RrWorkspace {
  std::vector<double> dist;
  std::vector<std::uint32_t> stamp;
  std::uint32_t cur = 0;
  std::priority_queue<std::pair<double, NodeId>, std::vector<std::pair<double, NodeId>>,
                      std::greater<>>
      pq;

  void begin(std::size_t n) {
    if (dist.size() != n) {
      dist.assign(n, 0.0);
      stamp.assign(n, 0);
      cur = 0;
    }
    if (++cur == 0) {  // stamp wrapped; restart the epoch
      stamp.assign(n, 0);
      cur = 1;
    }
  }

  bool fresh(NodeId v) const { return stamp[v] != cur; }
};

thread_local RrWorkspace tl_ws;

}  // namespace

RRSet generate_rr_set(const Graph& g, const ThresholdSpec& spec, std::uint64_t sample_seed) {
  RRSet rr;
  {
    Rng target_rng(derive_seed(sample_seed, streams::kTarget, 0));
    rr.target = spec.ground[target_rng.next_below(spec.ground.size())];
  }
  RrWorkspace& ws = tl_ws;
  ws.begin(g.n());
  ws.dist[rr.target] = 0.0;
  ws.stamp[rr.target] = ws.cur;
  ws.pq.emplace(0.0, rr.target);
  while (!ws.pq.empty()) {
    const auto [d, v] = ws.pq.top();
    ws.pq.pop();
    if (d > ws.dist[v]) continue;  // stale entry
    rr.members.push_back(v);
    for (EdgeId e : g.in_edges(v)) {
      const NodeId u = g.edge(e).src;
      if (unit_at(sample_seed, streams::kEdgeLive, e) >= g.edge(e).p) continue;
      const double delay = g.delay(e).sample_from_unit(unit_at(sample_seed, streams::kEdgeDelay, e));
      const double nd = d + delay;
      if (nd > spec.deadline_w) continue;
      if (ws.fresh(u) || nd < ws.dist[u]) {
        ws.dist[u] = nd;
        ws.stamp[u] = ws.cur;
        ws.pq.emplace(nd, u);
      }
    }
  }
  std::sort(rr.members.begin(), rr.members.end());
  return rr;
}

SampleCollection::SampleCollection(const Graph& g, ThresholdSpec spec, std::uint64_t seed)
    : g_(&g), spec_(std::move(spec)), seed_(seed), index_(g.n()) {
  if (spec_.ground.empty()) throw ConfigError("sample collection needs a non-empty ground set");
  if (spec_.ground.back() >= g.n())  // ground is sorted
    throw ConfigError("ground set node id out of range");
}

void SampleCollection::extend(std::size_t upto, unsigned workers) {
  const std::size_t old = size();
  if (upto <= old) return;
  std::vector<RRSet> fresh(upto - old);
  parallel_for(fresh.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      fresh[i] = generate_rr_set(*g_, spec_, derive_seed(seed_, streams::kSample, old + i));
  });
  // Sequential merge in index order keeps contents worker-count independent.
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    const std::uint32_t id = static_cast<std::uint32_t>(old + i);
    targets_.push_back(fresh[i].target);
    for (NodeId v : fresh[i].members) {
      members_.push_back(v);
      index_[v].push_back(id);
    }
    member_off_.push_back(members_.size());
  }
}

std::size_t SampleCollection::coverage(std::span<const NodeId> S) const {
  std::vector<char> hit(size(), 0);
  std::size_t covered = 0;
  for (NodeId u : S)
    for (std::uint32_t id : index_[u])
      if (!hit[id]) {
        hit[id] = 1;
        ++covered;
      }
  return covered;
}

double SampleCollection::estimate(std::span<const NodeId> S) const {
  if (size() == 0) throw Error("influence estimate over an empty sample collection");
  return static_cast<double>(coverage(S)) / static_cast<double>(size()) *
         static_cast<double>(spec_.ground.size());
}

}  // namespace dip
