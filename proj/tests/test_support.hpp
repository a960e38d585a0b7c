#pragma once

#include <algorithm>
#include <cmath>
#include <unistd.h>

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <functional>
#include <string>
#include <vector>

#include "dip/graph.hpp"
#include "dip/rng.hpp"

namespace test_support {

// Unique scratch file that removes itself.
class TempFile {
 public:
  explicit TempFile(const std::string& suffix = ".txt") {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("dip_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + suffix))
                .string();
  }
  ~TempFile() { std::remove(path_.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::string& path() const { return path_; }
  void write(const std::string& content) const {
    std::ofstream out(path_, std::ios::binary);
    out << content;
  }
  std::string read() const {
    std::ifstream in(path_, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

 private:
  std::string path_;
};

inline double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Kolmogorov distance between the empirical CDF of draws and cdf.
inline double ks_distance(std::vector<double> draws, const std::function<double(double)>& cdf) {
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double d = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double f = cdf(draws[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

// Two-sample Kolmogorov distance.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

// Directed G(n, p) with edges drawn from the given generator.
inline dip::Graph random_graph(dip::NodeId n, double p, dip::Rng& rng) {
  std::vector<std::pair<dip::NodeId, dip::NodeId>> edges;
  for (dip::NodeId u = 0; u < n; ++u)
    for (dip::NodeId v = 0; v < n; ++v)
      if (u != v && rng.next_unit() < p) edges.emplace_back(u, v);
  return dip::Graph::from_dense(n, edges);
}

// Path 0 -> 1 -> ... -> n-1.
inline dip::Graph path_graph(dip::NodeId n) {
  std::vector<std::pair<dip::NodeId, dip::NodeId>> edges;
  for (dip::NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return dip::Graph::from_dense(n, edges);
}

// Exact expected influence at a hop deadline, for graphs of at most 12 edges
// and 12 nodes: enumerate live-edge subsets, weight by probability, and take
// hop-limited reachability unions as bitmasks. Unit delays assumed.
struct ExactOracle {
  std::vector<double> prob;                          // per live-edge mask
  std::vector<std::array<std::uint16_t, 12>> reach;  // per mask, per source

  ExactOracle(const dip::Graph& g, int max_hops) {
    const std::size_t m = g.m();
    if (m > 12 || g.n() > 12) throw std::logic_error("oracle limited to 12 edges / 12 nodes");
    prob.resize(std::size_t{1} << m);
    reach.resize(std::size_t{1} << m);
    for (std::size_t mask = 0; mask < prob.size(); ++mask) {
      double pr = 1.0;
      for (dip::EdgeId e = 0; e < m; ++e)
        pr *= (mask >> e & 1) ? g.edge(e).p : 1.0 - g.edge(e).p;
      prob[mask] = pr;
      for (dip::NodeId s = 0; s < g.n(); ++s) {
        auto seen = static_cast<std::uint16_t>(1u << s);
        std::uint16_t frontier = seen;
        for (int hop = 0; hop < max_hops && frontier; ++hop) {
          std::uint16_t next = 0;
          for (dip::NodeId v = 0; v < g.n(); ++v) {
            if (!(frontier >> v & 1)) continue;
            for (dip::EdgeId e : g.out_edges(v))
              if (mask >> e & 1) next |= static_cast<std::uint16_t>(1u << g.edge(e).dst);
          }
          frontier = next & static_cast<std::uint16_t>(~seen);
          seen |= next;
        }
        reach[mask][s] = seen;
      }
    }
  }

  double influence(std::uint16_t seed_mask) const {
    double total = 0.0;
    for (std::size_t mask = 0; mask < prob.size(); ++mask) {
      if (prob[mask] == 0.0) continue;
      std::uint16_t covered = 0;
      for (dip::NodeId s = 0; s < 12; ++s)
        if (seed_mask >> s & 1) covered |= reach[mask][s];
      total += prob[mask] * std::popcount(covered);
    }
    return total;
  }

  // Smallest seed-set size whose exact expected influence reaches `need`.
  int min_seeds(dip::NodeId n, double need) const {
    for (int k = 1; k <= static_cast<int>(n); ++k)
      if (best_influence(n, k) >= need - 1e-9) return k;
    return static_cast<int>(n);
  }

  // Maximum exact expected influence over seed sets of size exactly k.
  double best_influence(dip::NodeId n, int k) const {
    double best = 0.0;
    for (std::uint32_t mask = (1u << k) - 1; mask < (1u << n);) {
      best = std::max(best, influence(static_cast<std::uint16_t>(mask)));
      const std::uint32_t c = mask & -mask, r = mask + c;  // next same-popcount mask
      mask = (((r ^ mask) >> 2) / c) | r;
    }
    return best;
  }
};

}  // namespace test_support
