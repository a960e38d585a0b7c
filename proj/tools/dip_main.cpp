#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "dip/runner.hpp"

namespace {

// Flag values sit in optionals so a config file can supply defaults and any
// flag given on the command line overrides it field by field.
struct Overrides {
  std::optional<std::string> config, graph, out, delta, weighting, delay_kind, mode, seeds, specs,
      compare;
  std::optional<double> uniform_p, rate, horizon, epsilon, grid, delay_shape, delay_scale,
      trigger_frac, activate_frac, t_s;
  std::optional<long long> trigger_count, activate_count;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::size_t> runs, sample_cap;
  std::optional<int> iteration_cap;
  bool symmetrize = false;
  std::optional<std::vector<double>> sweep_rates;
  std::optional<std::vector<long long>> sweep_triggers, sweep_activations;
};

void add_io_flags(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config", o.config, "JSON config file; flags override its fields");
  cmd.add_option("--graph", o.graph, "edge list file (plain or gzip)");
  cmd.add_flag("--symmetrize", o.symmetrize, "treat each input edge as undirected");
  cmd.add_option("--out", o.out, "output path (default stdout)");
  cmd.add_option("--seed", o.seed, "root RNG seed");
  cmd.add_option("--workers", o.workers, "worker threads (0 = hardware)");
}

void add_model_flags(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--weighting", o.weighting, "weighted_cascade | uniform");
  cmd.add_option("--uniform-p", o.uniform_p, "probability for uniform weighting");
  cmd.add_option("--delay", o.delay_kind, "weibull | deterministic | exponential");
  cmd.add_option("--delay-shape", o.delay_shape, "weibull shape");
  cmd.add_option("--delay-scale", o.delay_scale, "weibull scale / value / rate");
  cmd.add_option("--horizon", o.horizon, "time limit T");
  cmd.add_option("--rate", o.rate, "rate multiplier r (> 1)");
}

void add_problem_flags(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--trigger-count", o.trigger_count, "trigger requirement as a count");
  cmd.add_option("--trigger-frac", o.trigger_frac, "trigger requirement as a fraction");
  cmd.add_option("--activate-count", o.activate_count, "activation requirement as a count");
  cmd.add_option("--activate-frac", o.activate_frac, "activation requirement as a fraction");
  cmd.add_option("--epsilon", o.epsilon, "relative precision");
  cmd.add_option("--delta", o.delta, "failure probability, number or \"1/n\"");
  cmd.add_option("--grid", o.grid, "candidate grid step (default horizon/256)");
  cmd.add_option("--sample-cap", o.sample_cap, "hard cap on samples per collection");
  cmd.add_option("--iteration-cap", o.iteration_cap, "search probe cap");
}

dip::RunConfig build_config(const Overrides& o) {
  dip::RunConfig cfg = o.config ? dip::load_config_file(*o.config) : dip::RunConfig{};
  auto set = [](auto& field, const auto& opt) {
    if (opt) field = *opt;
  };
  set(cfg.graph_path, o.graph);
  if (o.symmetrize) cfg.symmetrize = true;
  set(cfg.out_path, o.out);
  set(cfg.delta, o.delta);
  set(cfg.weighting, o.weighting);
  set(cfg.delay_kind, o.delay_kind);
  set(cfg.mode, o.mode);
  set(cfg.seeds_path, o.seeds);
  set(cfg.specs_path, o.specs);
  set(cfg.compare_path, o.compare);
  set(cfg.uniform_p, o.uniform_p);
  set(cfg.rate, o.rate);
  set(cfg.horizon, o.horizon);
  set(cfg.epsilon, o.epsilon);
  set(cfg.grid, o.grid);
  set(cfg.delay_shape, o.delay_shape);
  set(cfg.delay_scale, o.delay_scale);
  if (o.trigger_count) {
    cfg.trigger_count = o.trigger_count;
    cfg.trigger_frac.reset();
  }
  if (o.trigger_frac && !o.trigger_count) cfg.trigger_frac = o.trigger_frac;
  if (o.activate_count) {
    cfg.activate_count = o.activate_count;
    cfg.activate_frac.reset();
  }
  if (o.activate_frac && !o.activate_count) cfg.activate_frac = o.activate_frac;
  if (o.t_s) cfg.fixed_t_s = o.t_s;
  set(cfg.seed, o.seed);
  set(cfg.workers, o.workers);
  set(cfg.runs, o.runs);
  set(cfg.sample_cap, o.sample_cap);
  set(cfg.iteration_cap, o.iteration_cap);
  set(cfg.sweep_rates, o.sweep_rates);
  set(cfg.sweep_triggers, o.sweep_triggers);
  set(cfg.sweep_activations, o.sweep_activations);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum seed sets for threshold activation under a trending rate increase"};
  app.require_subcommand(1);
  Overrides o;

  CLI::App* graph = app.add_subcommand("graph", "graph utilities");
  graph->require_subcommand(1);
  CLI::App* stats = graph->add_subcommand("stats", "print node/edge/degree statistics");
  add_io_flags(*stats, o);

  CLI::App* solve = app.add_subcommand("solve", "choose the speedup time and the seed set");
  add_io_flags(*solve, o);
  add_model_flags(*solve, o);
  add_problem_flags(*solve, o);

  CLI::App* base = app.add_subcommand("base-tap", "solve ignoring the rate increase");
  add_io_flags(*base, o);
  add_model_flags(*base, o);
  add_problem_flags(*base, o);
  base->add_option("--compare", o.compare, "earlier result JSON to report seed overlap with");

  CLI::App* mtap = app.add_subcommand("mtap", "minimum seeds for explicit requirement specs");
  add_io_flags(*mtap, o);
  add_model_flags(*mtap, o);
  add_problem_flags(*mtap, o);
  mtap->add_option("--specs", o.specs, "JSON file with requirement specs")->required();

  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo evaluation of a seed set");
  add_io_flags(*sim, o);
  add_model_flags(*sim, o);
  add_problem_flags(*sim, o);
  sim->add_option("--seeds", o.seeds, "JSON array of node ids")->required();
  sim->add_option("--mode", o.mode, "dip | fixed");
  sim->add_option("--t-s", o.t_s, "speedup time for fixed mode");
  sim->add_option("--runs", o.runs, "simulation runs (default 10000)");

  CLI::App* sweep = app.add_subcommand("sweep", "grid of solves over r/trigger/activation");
  add_io_flags(*sweep, o);
  add_model_flags(*sweep, o);
  add_problem_flags(*sweep, o);
  sweep->add_option("--rates", o.sweep_rates, "rate values")->delimiter(',');
  sweep->add_option("--triggers", o.sweep_triggers, "trigger counts")->delimiter(',');
  sweep->add_option("--activations", o.sweep_activations, "activation counts")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const dip::RunConfig cfg = build_config(o);
    if (stats->parsed()) {
      dip::emit_text(dip::render_json(dip::run_graph_stats(cfg)), cfg.out_path);
    } else if (solve->parsed()) {
      dip::emit_text(dip::render_json(dip::run_solve(cfg)), cfg.out_path);
    } else if (base->parsed()) {
      dip::emit_text(dip::render_json(dip::run_base_tap(cfg)), cfg.out_path);
    } else if (mtap->parsed()) {
      dip::emit_text(dip::render_json(dip::run_mtap(cfg)), cfg.out_path);
    } else if (sim->parsed()) {
      dip::emit_text(dip::render_json(dip::run_simulate(cfg)), cfg.out_path);
    } else if (sweep->parsed()) {
      dip::emit_text(dip::run_sweep_csv(cfg), cfg.out_path);
    }
  } catch (const dip::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
