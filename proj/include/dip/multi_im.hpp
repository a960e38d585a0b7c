#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dip/constants.hpp"
#include "dip/graph.hpp"
#include "dip/ris.hpp"

namespace dip {

// Execution knobs threaded through the solver stack.
struct SolveContext {
  std::uint64_t root_seed = 1;
  unsigned workers = 1;
  std::size_t sample_hard_cap = std::size_t{1} << 22;  // per collection
  int iteration_cap = 100;                             // Lipschitz search probes
  std::size_t collection_cache_entries = 4;            // reuse across deadline evals
};

// Collections for specs[l], seeded from (root_seed, first_tag + l). Samples
// are generated lazily by the solver.
std::vector<SampleCollection> make_collections(const Graph& g,
                                               std::span<const ThresholdSpec> specs,
                                               std::uint64_t root_seed,
                                               std::uint64_t first_tag = 0);

// Capped objective: sum over collections of min(required, estimated influence).
double objective_f_hat(std::span<const SampleCollection> collections,
                       std::span<const NodeId> S);

// Lazy greedy (stale marginal gains re-evaluated on pop) maximizing the
// capped objective. Picks up to k nodes in selection order; stops early once
// no node has positive gain. Ties break toward the smaller node id.
std::vector<NodeId> greedy_max_fhat(std::span<const SampleCollection> collections, int k);

// Budgeted solve with statistical verification: collections start at gamma
// samples; after each greedy pass, any unverified collection whose coverage
// under the solution is below gamma doubles and the greedy repeats. Returns
// the final solution once every collection verifies.
std::vector<NodeId> multi_im(const Graph& g, int k, const PrecisionParams& p,
                             std::vector<SampleCollection>& collections,
                             const SolveContext& ctx);

}  // namespace dip
