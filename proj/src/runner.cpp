#include "dip/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "dip/fast.hpp"
#include "dip/simulate.hpp"

namespace dip {

namespace {

using nlohmann::json;

SolveContext make_context(const RunConfig& cfg) {
  SolveContext ctx;
  ctx.root_seed = cfg.seed;
  ctx.workers = cfg.workers;
  ctx.sample_hard_cap = cfg.sample_cap;
  ctx.iteration_cap = cfg.iteration_cap;
  return ctx;
}

json external_seeds(const Graph& g, const std::vector<NodeId>& seeds) {
  std::vector<long long> ext;
  ext.reserve(seeds.size());
  for (NodeId v : seeds) ext.push_back(g.external_id(v));
  std::sort(ext.begin(), ext.end());
  return json(ext);
}

json min_seed_json(const Graph& g, const MinSeedResult& r) {
  json j;
  j["seed_count"] = r.seeds.size();
  j["seeds"] = external_seeds(g, r.seeds);
  j["budget_used"] = r.budget_used;
  j["f_hat"] = r.f_hat;
  j["target"] = r.target;
  j["rounds"] = r.rounds;
  return j;
}

std::vector<NodeId> read_seed_file(const Graph& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open seed file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IngestError("seed file " + path + ": " + e.what());
  }
  if (!j.is_array()) throw ConfigError("seed file must be a JSON array of node ids");
  if (j.empty()) throw ConfigError("seed file is empty");
  std::vector<NodeId> seeds;
  seeds.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ConfigError("seed file entries must be integers");
    seeds.push_back(g.internal_id(v.get<long long>()));
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return seeds;
}

json params_json(const RunConfig& cfg, const Graph& g, long long trig, long long act,
                 double delta) {
  json j;
  j["trigger_required"] = trig;
  j["activation_required"] = act;
  j["rate"] = cfg.rate;
  j["horizon"] = cfg.horizon;
  j["epsilon"] = cfg.epsilon;
  j["delta"] = delta;
  j["grid"] = cfg.grid > 0.0 ? cfg.grid : cfg.horizon / 256.0;
  j["seed"] = cfg.seed;
  // worker count is deliberately not echoed: output bytes must not depend on it
  j["nodes"] = g.n();
  j["edges"] = g.m();
  return j;
}

}  // namespace

json run_graph_stats(const RunConfig& cfg) {
  if (cfg.graph_path.empty()) throw ConfigError("no graph file given");
  const Graph g = load_edge_list(cfg.graph_path, cfg.symmetrize);
  std::uint32_t max_in = 0, max_out = 0;
  for (NodeId v = 0; v < g.n(); ++v) {
    max_in = std::max(max_in, g.in_degree(v));
    max_out = std::max(max_out, g.out_degree(v));
  }
  json j;
  j["schema"] = 1;
  j["command"] = "graph_stats";
  j["nodes"] = g.n();
  j["edges"] = g.m();
  j["max_in_degree"] = max_in;
  j["max_out_degree"] = max_out;
  j["self_loops_dropped"] = g.self_loops_dropped();
  j["duplicates_dropped"] = g.duplicates_dropped();
  return j;
}

json run_solve(const RunConfig& cfg) {
  const Graph g = load_and_weight_graph(cfg);
  const long long trig = resolve_trigger_required(cfg, g.n());
  const long long act = resolve_activation_required(cfg, g.n());
  const double delta = resolve_delta(cfg.delta, g.n());

  DipProblem p;
  p.g = &g;
  p.trigger_required = static_cast<int>(trig);
  p.activation_required = static_cast<int>(act);
  p.r = cfg.rate;
  p.T = cfg.horizon;
  p.precision = {cfg.epsilon, delta};
  p.delta_t = cfg.grid;
  const FastResult r = fast(p, make_context(cfg));

  json j;
  j["schema"] = 1;
  j["command"] = "solve";
  j["params"] = params_json(cfg, g, trig, act, delta);
  j["t_bar"] = r.t_bar;
  j["iterations"] = r.iterations;
  j["hit_iteration_cap"] = r.hit_iteration_cap;
  json curve = json::array();
  int h_at_tbar = 0;
  for (const EvalPoint& e : r.curve) {
    curve.push_back({{"t", e.t}, {"s_s", e.s_s}, {"s_a", e.s_a}, {"h_prime", e.h_prime}});
    if (e.t == r.t_bar) h_at_tbar = e.h_prime;
  }
  j["curve"] = curve;
  j["h_prime_at_t_bar"] = h_at_tbar;
  j["joint"] = min_seed_json(g, r.joint);
  j["seed_count"] = r.seeds.size();
  j["seeds"] = external_seeds(g, r.seeds);
  return j;
}

json run_base_tap(const RunConfig& cfg) {
  const Graph g = load_and_weight_graph(cfg);
  const long long act = resolve_activation_required(cfg, g.n());
  const double delta = resolve_delta(cfg.delta, g.n());
  const PrecisionParams pp{cfg.epsilon, delta};

  // No speedup: the deadline needs no warping.
  const ThresholdSpec spec = make_spec_count(all_nodes(g), act, cfg.horizon);
  const MinSeedResult r = mminseed(g, {&spec, 1}, pp, make_context(cfg));

  json j = min_seed_json(g, r);
  j["schema"] = 1;
  j["command"] = "base_tap";
  j["activation_required"] = act;
  j["horizon"] = cfg.horizon;
  j["epsilon"] = cfg.epsilon;
  j["delta"] = delta;
  j["nodes"] = g.n();
  j["edges"] = g.m();

  if (!cfg.compare_path.empty()) {
    std::ifstream in(cfg.compare_path);
    if (!in) throw IngestError("cannot open comparison result " + cfg.compare_path);
    json other;
    try {
      in >> other;
    } catch (const json::exception& e) {
      throw IngestError("comparison result " + cfg.compare_path + ": " + e.what());
    }
    if (!other.contains("seeds") || !other["seeds"].is_array())
      throw ConfigError("comparison result has no \"seeds\" array");
    std::set<long long> theirs;
    for (const auto& v : other["seeds"]) theirs.insert(v.get<long long>());
    std::size_t shared = 0;
    for (const auto& v : j["seeds"]) shared += theirs.count(v.get<long long>());
    j["compared_to"] = cfg.compare_path;
    j["shared_seed_fraction"] =
        r.seeds.empty() ? 0.0 : static_cast<double>(shared) / static_cast<double>(r.seeds.size());
  }
  return j;
}

json run_mtap(const RunConfig& cfg) {
  const Graph g = load_and_weight_graph(cfg);
  const double delta = resolve_delta(cfg.delta, g.n());
  const PrecisionParams pp{cfg.epsilon, delta};
  if (cfg.specs_path.empty()) throw ConfigError("no requirement spec file given");
  std::ifstream in(cfg.specs_path);
  if (!in) throw IngestError("cannot open spec file " + cfg.specs_path);
  json sj;
  try {
    in >> sj;
  } catch (const json::exception& e) {
    throw IngestError("spec file " + cfg.specs_path + ": " + e.what());
  }
  if (!sj.is_array() || sj.empty())
    throw ConfigError("spec file must be a non-empty JSON array");

  std::vector<ThresholdSpec> specs;
  json echo = json::array();
  for (const auto& item : sj) {
    std::vector<NodeId> ground;
    const auto gs = item.find("ground_set");
    if (gs == item.end() || (gs->is_string() && *gs == "all")) {
      ground = all_nodes(g);
    } else if (gs->is_array()) {
      for (const auto& v : *gs) ground.push_back(g.internal_id(v.get<long long>()));
    } else {
      throw ConfigError("ground_set must be \"all\" or an array of node ids");
    }
    const double deadline = item.value("deadline", -1.0);
    if (!(deadline >= 0.0)) throw ConfigError("each requirement needs a deadline >= 0");
    SpeedupSchedule sched = SpeedupSchedule::none();
    if (auto rp = item.find("rate_profile"); rp != item.end() && !rp->is_null()) {
      if (!rp->contains("t_s") || !rp->contains("r"))
        throw ConfigError("rate_profile needs t_s and r");
      sched = SpeedupSchedule::at(rp->at("t_s").get<double>(), rp->at("r").get<double>());
    }
    const double deadline_w = sched.warp(deadline);
    ThresholdSpec spec;
    if (item.contains("required_count"))
      spec = make_spec_count(std::move(ground), item["required_count"].get<long long>(),
                             deadline_w);
    else if (item.contains("required_fraction"))
      spec = make_spec_fraction(std::move(ground), item["required_fraction"].get<double>(),
                                deadline_w);
    else
      throw ConfigError("each requirement needs required_count or required_fraction");
    echo.push_back({{"ground_size", spec.ground.size()},
                    {"required", spec.required},
                    {"deadline_w", spec.deadline_w}});
    specs.push_back(std::move(spec));
  }

  const MinSeedResult r =
      mminseed(g, {specs.data(), specs.size()}, pp, make_context(cfg));
  json j = min_seed_json(g, r);
  j["schema"] = 1;
  j["command"] = "mtap";
  j["requirements"] = echo;
  return j;
}

json run_simulate(const RunConfig& cfg) {
  const Graph g = load_and_weight_graph(cfg);
  if (cfg.seeds_path.empty()) throw ConfigError("no seed file given");
  const std::vector<NodeId> seeds = read_seed_file(g, cfg.seeds_path);
  const long long act = resolve_activation_required(cfg, g.n());
  const long long trig = resolve_trigger_required(cfg, g.n());
  if (cfg.runs < 1) throw ConfigError("runs must be >= 1");

  json j;
  j["schema"] = 1;
  j["command"] = "simulate";
  j["mode"] = cfg.mode;
  j["runs"] = cfg.runs;
  j["seed_count"] = seeds.size();
  if (cfg.mode == "dip") {
    const DipMcEstimate est =
        estimate_dip_mc(g, seeds, static_cast<int>(trig), cfg.rate, cfg.horizon, cfg.runs,
                        cfg.seed, cfg.workers);
    j["mean"] = est.mean;
    j["stderr"] = est.std_err;
    j["trigger_rate"] = est.trigger_rate;
    j["fraction_of_requirement"] = est.mean / static_cast<double>(act);
  } else if (cfg.mode == "fixed") {
    const SpeedupSchedule sched =
        cfg.fixed_t_s ? SpeedupSchedule::at(*cfg.fixed_t_s, cfg.rate) : SpeedupSchedule::none();
    const auto counts =
        mc_activation_counts(g, seeds, sched, cfg.horizon, cfg.runs, cfg.seed, cfg.workers);
    const McEstimate est = summarize_counts(counts);
    std::size_t hit = 0;
    for (std::uint32_t c : counts) hit += c >= static_cast<std::uint32_t>(trig) ? 1 : 0;
    j["mean"] = est.mean;
    j["stderr"] = est.std_err;
    j["trigger_rate"] = static_cast<double>(hit) / static_cast<double>(cfg.runs);
    j["fraction_of_requirement"] = est.mean / static_cast<double>(act);
    if (cfg.fixed_t_s) j["t_s"] = *cfg.fixed_t_s;
  } else {
    throw ConfigError("simulate mode must be dip or fixed");
  }
  return j;
}

std::string run_sweep_csv(const RunConfig& cfg) {
  const Graph g = load_and_weight_graph(cfg);
  const double delta = resolve_delta(cfg.delta, g.n());

  std::vector<double> rates = cfg.sweep_rates;
  if (rates.empty()) rates.push_back(cfg.rate);
  std::vector<long long> triggers = cfg.sweep_triggers;
  if (triggers.empty()) triggers.push_back(resolve_trigger_required(cfg, g.n()));
  std::vector<long long> activations = cfg.sweep_activations;
  if (activations.empty()) activations.push_back(resolve_activation_required(cfg, g.n()));

  auto num = [](double v) { return json(v).dump(); };
  std::string csv = "r,trigger_required,activation_required,t_bar,seed_count,error\n";
  for (double r : rates)
    for (long long trig : triggers)
      for (long long act : activations) {
        csv += num(r) + "," + std::to_string(trig) + "," + std::to_string(act) + ",";
        try {
          DipProblem p;
          p.g = &g;
          p.trigger_required = static_cast<int>(trig);
          p.activation_required = static_cast<int>(act);
          p.r = r;
          p.T = cfg.horizon;
          p.precision = {cfg.epsilon, delta};
          p.delta_t = cfg.grid;
          const FastResult res = fast(p, make_context(cfg));
          csv += num(res.t_bar) + "," + std::to_string(res.seeds.size()) + ",\n";
        } catch (const Error& e) {
          std::string msg = e.what();
          std::replace(msg.begin(), msg.end(), ',', ';');
          std::replace(msg.begin(), msg.end(), '\n', ' ');
          csv += ",," + msg + "\n";
        }
      }
  return csv;
}

std::string render_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IngestError("cannot write output file " + out_path);
  out << text;
}

}  // namespace dip
