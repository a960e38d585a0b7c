#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dip/graph.hpp"
#include "dip/rng.hpp"

namespace dip {

// One activation requirement: at least `required` nodes of `ground` must be
// reached by the (warped-time) deadline.
struct ThresholdSpec {
  std::vector<NodeId> ground;  // non-empty, sorted, unique
  int required = 1;            // 1 <= required <= |ground|
  double deadline_w = 0.0;     // >= 0
};

std::vector<NodeId> all_nodes(const Graph& g);

ThresholdSpec make_spec_count(std::vector<NodeId> ground, long long required, double deadline_w);

// required = ceil(fraction * |ground|); fraction in (0, 1].
ThresholdSpec make_spec_fraction(std::vector<NodeId> ground, double fraction, double deadline_w);

// Count threshold from a fraction of a set size, guarding against the binary
// representation of decimal fractions (0.07 * 100 must give 7, not 8).
long long ceil_fraction(double fraction, std::size_t size);

// Nodes whose shortest live-path warped length to `target` is within the
// deadline. target is always a member (distance 0).
struct RRSet {
  NodeId target = 0;
  std::vector<NodeId> members;  // sorted
};

// Reverse earliest-arrival traversal from a uniformly drawn target. Edge
// liveness and delay are pure functions of (sample_seed, edge id), so a
// sample is one fixed realization: re-running with a larger deadline yields
// a superset of members.
RRSet generate_rr_set(const Graph& g, const ThresholdSpec& spec, std::uint64_t sample_seed);

inline RRSet generate_rr_set(const Graph& g, const ThresholdSpec& spec, Rng& rng) {
  return generate_rr_set(g, spec, rng.next_u64());
}

// Pool of RR samples for one spec. Sample i is generated from the seed
// derived from (collection seed, i): contents depend only on the collection
// seed and the final size, never on extend batching or worker count.
class SampleCollection {
 public:
  SampleCollection(const Graph& g, ThresholdSpec spec, std::uint64_t seed);

  const ThresholdSpec& spec() const { return spec_; }
  const Graph& graph() const { return *g_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return targets_.size(); }

  NodeId target(std::size_t i) const { return targets_[i]; }
  std::span<const NodeId> members(std::size_t i) const {
    return {members_.data() + member_off_[i], members_.data() + member_off_[i + 1]};
  }
  // Sample ids whose members include u.
  std::span<const std::uint32_t> containing(NodeId u) const {
    return {index_[u].data(), index_[u].size()};
  }

  // Appends freshly generated samples until size() == upto; appending only.
  void extend(std::size_t upto, unsigned workers);

  // Number of samples whose members intersect S.
  std::size_t coverage(std::span<const NodeId> S) const;

  // coverage/size * |ground|; unbiased for the expected number of ground
  // nodes activated by the deadline.
  double estimate(std::span<const NodeId> S) const;

 private:
  const Graph* g_;
  ThresholdSpec spec_;
  std::uint64_t seed_;
  std::vector<NodeId> targets_;
  std::vector<std::size_t> member_off_{0};  // arena offsets, size()+1 entries
  std::vector<NodeId> members_;
  std::vector<std::vector<std::uint32_t>> index_;  // node -> sample ids
};

}  // namespace dip
