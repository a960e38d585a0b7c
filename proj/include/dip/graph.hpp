#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dip/delay.hpp"
#include "dip/errors.hpp"

namespace dip {

// Dense node index, contiguous in [0, n). External file ids are remapped at
// ingestion and kept for round-tripping results.
using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// Directed graph with per-edge activation probability and delay distribution.
// Immutable after setup (probability/delay assignment happens before any
// concurrent use); both adjacency directions index the same edge array.
class Graph {
 public:
  struct Edge {
    NodeId src;
    NodeId dst;
    double p;  // activation probability in [0,1]
  };

  // Remaps arbitrary integer ids to dense ids in first-appearance order.
  // Self-loops are dropped (counted); duplicate directed edges after the
  // optional symmetrization keep their first occurrence (drops counted).
  static Graph from_external_edges(const std::vector<std::pair<long long, long long>>& pairs,
                                   bool symmetrize);

  // Ids are already dense in [0, n); external ids become the identity map.
  // Same self-loop/duplicate pipeline as above. Allows isolated nodes.
  static Graph from_dense(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& pairs,
                          bool symmetrize = false);

  NodeId n() const { return n_; }
  std::size_t m() const { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const DelayDist& delay(EdgeId e) const { return delays_[e]; }

  std::span<const EdgeId> out_edges(NodeId u) const {
    return {edge_ids_out_.data() + out_off_[u], edge_ids_out_.data() + out_off_[u + 1]};
  }
  std::span<const EdgeId> in_edges(NodeId v) const {
    return {edge_ids_in_.data() + in_off_[v], edge_ids_in_.data() + in_off_[v + 1]};
  }

  std::uint32_t out_degree(NodeId u) const {
    return static_cast<std::uint32_t>(out_off_[u + 1] - out_off_[u]);
  }
  std::uint32_t in_degree(NodeId v) const {
    return static_cast<std::uint32_t>(in_off_[v + 1] - in_off_[v]);
  }

  long long external_id(NodeId v) const { return external_ids_[v]; }
  // Throws ConfigError for ids not present in the graph.
  NodeId internal_id(long long external) const;

  std::size_t self_loops_dropped() const { return self_loops_dropped_; }
  std::size_t duplicates_dropped() const { return duplicates_dropped_; }

  void set_edge_p(EdgeId e, double p);
  void set_edge_delay(EdgeId e, const DelayDist& d) { delays_[e] = d; }

 private:
  Graph() = default;
  void build_adjacency();

  NodeId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<DelayDist> delays_;
  std::vector<std::size_t> out_off_, in_off_;
  std::vector<EdgeId> edge_ids_out_, edge_ids_in_;
  std::vector<long long> external_ids_;
  std::unordered_map<long long, NodeId> internal_ids_;
  std::size_t self_loops_dropped_ = 0;
  std::size_t duplicates_dropped_ = 0;
};

// Reads whitespace-separated "src dst" lines; '#' lines are comments; gzip
// input is detected transparently. Errors carry the offending line number.
Graph load_edge_list(const std::string& path, bool symmetrize);

// One "src dst" line per directed edge, external ids, in edge order.
void write_edge_list(const Graph& g, const std::string& path);

// p_uv = 1 / in-degree(v) on every edge.
void assign_weighted_cascade(Graph& g);

void assign_uniform_probability(Graph& g, double p);

// All edges share one delay distribution (per-edge override: set_edge_delay).
void assign_delay(Graph& g, const DelayDist& d);

}  // namespace dip
