#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dip/delay.hpp"
#include "dip/graph.hpp"

namespace dip {

// Everything a command needs, assembled from an optional JSON config file
// overlaid with command-line flags (flags win field by field).
struct RunConfig {
  std::string graph_path;
  bool symmetrize = false;
  std::string weighting = "weighted_cascade";  // or "uniform"
  double uniform_p = 0.1;                      // used when weighting == "uniform"
  std::string delay_kind = "weibull";          // weibull | deterministic | exponential
  double delay_shape = 4.0;                    // weibull shape
  double delay_scale = 1.0;                    // weibull scale / deterministic value / exp rate

  std::optional<long long> trigger_count;
  std::optional<double> trigger_frac;
  std::optional<long long> activate_count;
  std::optional<double> activate_frac;

  double rate = 2.0;
  double horizon = 10.0;
  double epsilon = 0.1;
  std::string delta = "1/n";  // literal "1/n" or a number
  double grid = 0.0;          // 0: horizon/256
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::size_t runs = 10000;
  std::size_t sample_cap = std::size_t{1} << 22;
  int iteration_cap = 100;

  std::string out_path;      // empty: stdout
  std::string seeds_path;    // simulate
  std::string mode = "dip";  // simulate: dip | fixed
  std::optional<double> fixed_t_s;
  std::string specs_path;    // mtap
  std::string compare_path;  // base-tap: earlier result to compare against

  std::vector<double> sweep_rates;
  std::vector<long long> sweep_triggers;
  std::vector<long long> sweep_activations;
};

// Parses the JSON config file into a RunConfig over the built-in defaults.
RunConfig load_config_file(const std::string& path);

DelayDist make_delay(const RunConfig& cfg);

// delta accepts "1/n", resolved against the loaded graph.
double resolve_delta(const std::string& spec, std::size_t n);

// Counts win over fractions when both are set.
long long resolve_trigger_required(const RunConfig& cfg, std::size_t n);
long long resolve_activation_required(const RunConfig& cfg, std::size_t n);

Graph load_and_weight_graph(const RunConfig& cfg);

}  // namespace dip
