#include "dip/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

#include "dip/ris.hpp"

namespace dip {

namespace {

using nlohmann::json;

template <class T>
void read_field(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

template <class T>
void read_optional(const json& j, const char* key, std::optional<T>& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

}  // namespace

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file " + path + ": expected a JSON object");
  RunConfig cfg;
  try {
    read_field(j, "graph", cfg.graph_path);
    read_field(j, "symmetrize", cfg.symmetrize);
    read_field(j, "weighting", cfg.weighting);
    read_field(j, "uniform_p", cfg.uniform_p);
    if (auto it = j.find("delay"); it != j.end()) {
      const json& d = *it;
      read_field(d, "kind", cfg.delay_kind);
      if (cfg.delay_kind == "weibull") {
        read_field(d, "shape", cfg.delay_shape);
        read_field(d, "scale", cfg.delay_scale);
      } else if (cfg.delay_kind == "deterministic") {
        read_field(d, "value", cfg.delay_scale);
      } else if (cfg.delay_kind == "exponential") {
        read_field(d, "rate", cfg.delay_scale);
      }
    }
    read_optional(j, "trigger_count", cfg.trigger_count);
    read_optional(j, "trigger_frac", cfg.trigger_frac);
    read_optional(j, "activate_count", cfg.activate_count);
    read_optional(j, "activate_frac", cfg.activate_frac);
    read_field(j, "rate", cfg.rate);
    read_field(j, "horizon", cfg.horizon);
    read_field(j, "epsilon", cfg.epsilon);
    if (auto it = j.find("delta"); it != j.end()) {
      if (it->is_string())
        cfg.delta = it->get<std::string>();
      else
        cfg.delta = it->dump();  // numeric literal, reparsed in resolve_delta
    }
    read_field(j, "grid", cfg.grid);
    read_field(j, "seed", cfg.seed);
    read_field(j, "workers", cfg.workers);
    read_field(j, "runs", cfg.runs);
    read_field(j, "sample_cap", cfg.sample_cap);
    read_field(j, "iteration_cap", cfg.iteration_cap);
    read_field(j, "out", cfg.out_path);
    read_field(j, "seeds", cfg.seeds_path);
    read_field(j, "mode", cfg.mode);
    read_optional(j, "t_s", cfg.fixed_t_s);
    read_field(j, "specs", cfg.specs_path);
    read_field(j, "compare", cfg.compare_path);
    read_field(j, "sweep_rates", cfg.sweep_rates);
    read_field(j, "sweep_triggers", cfg.sweep_triggers);
    read_field(j, "sweep_activations", cfg.sweep_activations);
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return cfg;
}

DelayDist make_delay(const RunConfig& cfg) {
  if (cfg.delay_kind == "weibull") return DelayDist::weibull(cfg.delay_shape, cfg.delay_scale);
  if (cfg.delay_kind == "deterministic") return DelayDist::deterministic(cfg.delay_scale);
  if (cfg.delay_kind == "exponential") return DelayDist::exponential(cfg.delay_scale);
  throw ConfigError("unknown delay kind: " + cfg.delay_kind);
}

double resolve_delta(const std::string& spec, std::size_t n) {
  double d;
  if (spec == "1/n") {
    d = 1.0 / static_cast<double>(n);
  } else {
    try {
      std::size_t used = 0;
      d = std::stod(spec, &used);
      if (used != spec.size()) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
      throw ConfigError("delta must be a number or \"1/n\", got: " + spec);
    }
  }
  if (!(d > 0.0 && d < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  return d;
}

namespace {

long long resolve_required(const std::optional<long long>& count, const std::optional<double>& frac,
                           std::size_t n, const char* what) {
  long long r;
  if (count) {  // counts take precedence over fractions
    r = *count;
  } else if (frac) {
    if (!(*frac > 0.0 && *frac <= 1.0))
      throw ConfigError(std::string(what) + " fraction must lie in (0, 1]");
    r = ceil_fraction(*frac, n);
    if (r < 1) r = 1;
  } else {
    throw ConfigError(std::string(what) + " requirement missing: give a count or a fraction");
  }
  if (r < 1) throw ConfigError(std::string(what) + " count must be >= 1");
  if (r > static_cast<long long>(n))
    throw ConfigError(std::string(what) + " count " + std::to_string(r) +
                      " exceeds node count " + std::to_string(n));
  return r;
}

}  // namespace

long long resolve_trigger_required(const RunConfig& cfg, std::size_t n) {
  return resolve_required(cfg.trigger_count, cfg.trigger_frac, n, "trigger");
}

long long resolve_activation_required(const RunConfig& cfg, std::size_t n) {
  return resolve_required(cfg.activate_count, cfg.activate_frac, n, "activation");
}

Graph load_and_weight_graph(const RunConfig& cfg) {
  if (cfg.graph_path.empty()) throw ConfigError("no graph file given");
  Graph g = load_edge_list(cfg.graph_path, cfg.symmetrize);
  if (cfg.weighting == "weighted_cascade")
    assign_weighted_cascade(g);
  else if (cfg.weighting == "uniform")
    assign_uniform_probability(g, cfg.uniform_p);
  else
    throw ConfigError("unknown weighting scheme: " + cfg.weighting);
  assign_delay(g, make_delay(cfg));
  return g;
}

}  // namespace dip
