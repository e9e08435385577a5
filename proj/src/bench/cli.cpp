#include "ranbench/bench/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ranbench/bench/config.hpp"
#include "ranbench/bench/dynamic.hpp"
#include "ranbench/bench/hpo.hpp"
#include "ranbench/bench/manifest.hpp"
#include "ranbench/bench/offline.hpp"
#include "ranbench/bench/pipeline.hpp"
#include "ranbench/bench/scorecard.hpp"
#include "ranbench/bench/svg.hpp"
#include "ranbench/envproto/server.hpp"
#include "ranbench/format.hpp"
#include "ranbench/rlagent/checkpoint.hpp"

namespace ranbench::bench {

namespace {

struct Globals {
  std::string store = "ranbench_store.jsonl";
  std::string config;
  std::string manifest;
  std::uint64_t seed = 0;

  BenchConfig load_config() const { return config.empty() ? BenchConfig{} : bench::load_config(config); }
  TsManifest load_manifest() const {
    return bench::load_manifest(manifest.empty() ? default_manifest_path() : manifest);
  }
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::vector<ransim::ScenarioSpec> select(const TsManifest& m, const std::string& which) {
  std::vector<ransim::ScenarioSpec> out;
  if (which == "all") return m.scenarios;
  for (const auto& n : split_csv(which)) out.push_back(m.get(n));
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

// Writes to `path`, or to `out` when path is empty or "-".
template <class F>
void emit(const std::string& path, std::ostream& out, F&& body) {
  if (path.empty() || path == "-") {
    body(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  body(f);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Power-control benchmark: simulator, offline optimizers and RL agent", "ranbench"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--store", g.store, "Study store log (JSON lines)");
  app.add_option("--config", g.config, "Experiment config file (JSON)");
  app.add_option("--manifest", g.manifest, "Test-scenario manifest")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Base random seed");

  // sample-scenarios
  auto* sample = app.add_subcommand("sample-scenarios", "Scan seeds and write the test-scenario manifest");
  int count = 6, max_enbs = 2, num_ues = 12;
  std::uint64_t first = 0, last = 9999;
  std::string manifest_out;
  sample->add_option("--count", count, "Scenarios to keep");
  sample->add_option("--first", first, "First seed scanned");
  sample->add_option("--last", last, "Last seed scanned");
  sample->add_option("--max-enbs", max_enbs, "Keep seeds whose equal-power attachment uses at most this many eNBs");
  sample->add_option("--num-ues", num_ues, "UEs per scenario");
  sample->add_option("--out", manifest_out, "Manifest path (default: the committed one)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Static-power run, score per interaction interval");
  std::string sim_scenario = "TS1", sim_powers = "30,30,30";
  simulate->add_option("--scenario", sim_scenario, "Manifest scenario name");
  simulate->add_option("--powers", sim_powers, "Comma-separated powers in dBm");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Offline search over static power triples");
  std::string method = "tpe", opt_scenarios = "all";
  int opt_trials = -1;
  optimize->add_option("--method", method, "tpe | grid | random")
      ->check(CLI::IsMember({"tpe", "grid", "random"}));
  optimize->add_option("--scenario", opt_scenarios, "Comma-separated names or 'all'");
  optimize->add_option("--trials", opt_trials, "Trials per scenario (grid always runs 125)");

  // train-rl
  auto* train_rl = app.add_subcommand("train-rl", "Train the agent on the manifest scenarios");
  long timesteps = -1;
  std::string checkpoint = "policy.json", curve_out;
  int checkpoint_every = 0;
  train_rl->add_option("--timesteps", timesteps, "Training budget (default from config)");
  train_rl->add_option("--checkpoint", checkpoint, "Checkpoint path");
  train_rl->add_option("--checkpoint-every", checkpoint_every, "Updates between checkpoints");
  train_rl->add_option("--curve", curve_out, "Learning-curve table path (default stdout)");

  // eval-rl
  auto* eval_rl = app.add_subcommand("eval-rl", "Greedy evaluation trials recorded to the store");
  std::string eval_scenarios = "all";
  int eval_trials = -1;
  double eval_duration = -1;
  eval_rl->add_option("--checkpoint", checkpoint, "Checkpoint path");
  eval_rl->add_option("--scenario", eval_scenarios, "Comma-separated names or 'all'");
  eval_rl->add_option("--trials", eval_trials, "Trials per scenario (default from config)");
  eval_rl->add_option("--duration", eval_duration, "Seconds per trial (default from config)");

  // tune-hparams
  auto* tune = app.add_subcommand("tune-hparams", "Hyperparameter search for the agent");
  HpoOptions hpo;
  std::string space_path = default_hpo_space_path();
  tune->add_option("--space", space_path, "Search-space file");
  tune->add_option("--study", hpo.study, "Study name");
  tune->add_option("--trials", hpo.n_trials, "Trials");
  tune->add_option("--timesteps", hpo.timesteps_per_trial, "Training timesteps per trial");
  tune->add_option("--eval-trials", hpo.eval_trials, "Evaluation trials per scenario");
  tune->add_option("--eval-duration", hpo.eval_duration_s, "Seconds per evaluation trial");

  // dynamic-trial
  auto* dynamic = app.add_subcommand("dynamic-trial", "Agent run while UEs cycle between scenarios");
  std::string cycle = "TS1,TS2,TS3", dyn_out, dyn_svg;
  double dwell = 30.0;
  int cycles = 2, tail_ms = 5000;
  dynamic->add_option("--checkpoint", checkpoint, "Checkpoint path");
  dynamic->add_option("--cycle", cycle, "Comma-separated scenario names");
  dynamic->add_option("--dwell", dwell, "Seconds at rest at each scenario");
  dynamic->add_option("--cycles", cycles, "Full cycles");
  dynamic->add_option("--tail-ms", tail_ms, "Window at the end of each dwell for the summary");
  dynamic->add_option("--out", dyn_out, "Time-series table path (default: not written)");
  dynamic->add_option("--svg", dyn_svg, "Render the time series to this SVG file");

  // scorecard
  auto* scorecard = app.add_subcommand("scorecard", "Per-scenario comparison table from the store");
  std::string sc_scenarios = "all", sc_svg;
  scorecard->add_option("--scenario", sc_scenarios, "Comma-separated names or 'all'");
  scorecard->add_option("--svg", sc_svg, "Also render to this SVG file");

  // serve-env
  auto* serve = app.add_subcommand("serve-env", "Serve one episode over the stdio line protocol");
  std::string serve_scenario = "TS1";
  std::uint64_t episode_seed = 0;
  serve->add_option("--scenario", serve_scenario, "Manifest scenario name");
  serve->add_option("--episode-seed", episode_seed, "Episode seed");

  // export
  auto* exp = app.add_subcommand("export", "Tabular export of studies or trajectories");
  std::vector<std::string> studies;
  std::string trajectory_of, exp_svg;
  exp->add_option("--study", studies, "Study to export (repeatable; default all)");
  exp->add_option("--trajectory", trajectory_of, "Scenario whose median RL trial trajectory to export");
  exp->add_option("--svg", exp_svg, "With --trajectory, also render it to this SVG file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const BenchConfig cfg = g.load_config();

    if (*sample) {
      const auto m = generate_manifest(cfg.radio, count, num_ues, first, last, max_enbs);
      save_manifest(manifest_out.empty() ? default_manifest_path() : manifest_out, m);
      out << "scenario\tseed\tclusters\tenbs_used\n";
      for (const auto& s : m.scenarios)
        out << s.name << '\t' << s.seed << '\t' << s.clusters.size() << '\t'
            << baseline_enbs_used(s, cfg.radio) << '\n';
      return 0;
    }
    if (*serve) {
      const auto m = g.load_manifest();
      return envproto::serve_stdio(cfg.env_for(m.get(serve_scenario)), episode_seed, in, out);
    }
    if (*simulate) {
      const auto m = g.load_manifest();
      envproto::EnvConfig env = cfg.env_for(m.get(sim_scenario));
      std::vector<int> tenths;
      for (const auto& p : split_csv(sim_powers)) tenths.push_back(static_cast<int>(std::lround(std::stod(p) * 10)));
      env.initial_powers_tenths = tenths;
      envproto::RanEnv e(env);
      e.reset(g.seed);
      out << "t_ms\tscore\n0\t" << format_real(e.current_score()) << '\n';
      while (!e.done()) {
        const auto r = e.step(0);
        out << r.info.t_ms << '\t' << format_real(r.info.score) << '\n';
      }
      return 0;
    }
    if (*optimize) {
      const auto m = g.load_manifest();
      study::StudyStore store(g.store);
      const int n = opt_trials >= 0 ? opt_trials : cfg.offline_trials;
      out << "scenario\tstudy\ttrials\tbest_score\tp1\tp2\tp3\tbaseline\n";
      for (const auto& s : select(m, opt_scenarios)) {
        const auto base = run_baseline(store, s, cfg);
        const auto name = run_offline(store, s, parse_method(method), n, g.seed, cfg);
        const auto best = store.best_trial(name);
        out << s.name << '\t' << name << '\t' << store.trials(name).size() << '\t'
            << format_real(best.score);
        for (const char* p : {"p1", "p2", "p3"}) out << '\t' << optimizer::to_string(best.params.at(p));
        out << '\t' << format_real(store.best_trial(base).score) << '\n';
      }
      return 0;
    }
    if (*train_rl) {
      const auto m = g.load_manifest();
      rlagent::TrainOptions o;
      o.checkpoint_path = checkpoint;
      o.checkpoint_every = checkpoint_every;
      const auto res = train_agent(m, cfg, timesteps > 0 ? timesteps : cfg.train_timesteps, g.seed, o);
      emit(curve_out, out, [&](std::ostream& os) { rlagent::write_curve(res.curve, os); });
      return 0;
    }
    if (*eval_rl) {
      const auto m = g.load_manifest();
      const auto net = rlagent::load_checkpoint(checkpoint);
      study::StudyStore store(g.store);
      out << "scenario\ttrials\tmin\tmedian\tmax\n";
      for (const auto& s : select(m, eval_scenarios)) {
        const auto trials = evaluate_agent(&store, net, s, cfg, eval_trials > 0 ? eval_trials : cfg.eval_trials,
                                           eval_duration > 0 ? eval_duration : cfg.eval_duration_s, g.seed);
        ScorecardRow r;
        for (const auto& t : trials) r.rl_scores.push_back(t.final_score);
        out << s.name << '\t' << trials.size() << '\t' << format_real(r.rl_min()) << '\t'
            << format_real(r.rl_median()) << '\t' << format_real(r.rl_max()) << '\n';
      }
      return 0;
    }
    if (*tune) {
      const auto m = g.load_manifest();
      study::StudyStore store(g.store);
      hpo.seed = g.seed;
      const auto name = run_hpo(store, optimizer::load_space(space_path), m, cfg, hpo);
      study::export_table(store.trials(name), out);
      return 0;
    }
    if (*dynamic) {
      const auto m = g.load_manifest();
      const auto net = rlagent::load_checkpoint(checkpoint);
      std::vector<ransim::ScenarioSpec> cyc;
      for (const auto& n : split_csv(cycle)) cyc.push_back(m.get(n));
      const auto res = run_dynamic(net, cyc, cfg, dwell, cycles);
      if (!dyn_out.empty()) emit(dyn_out, out, [&](std::ostream& os) { write_dynamic(res, os); });
      if (!dyn_svg.empty()) write_file(dyn_svg, trajectory_svg(res.trajectory, res.dwells));
      const auto tails = dwell_tail_means(res, tail_ms);
      out << "scenario\tstart_ms\tend_ms\ttail_mean_score\tbaseline\n";
      for (std::size_t i = 0; i < res.dwells.size(); ++i) {
        const auto& d = res.dwells[i];
        out << d.scenario << '\t' << d.start_ms << '\t' << d.end_ms << '\t' << format_real(tails[i])
            << '\t' << format_real(static_trial_score(m.get(d.scenario), {30, 30, 30}, cfg)) << '\n';
      }
      return 0;
    }
    if (*scorecard) {
      const auto m = g.load_manifest();
      const study::StudyStore store(g.store);
      std::vector<std::string> names;
      for (const auto& s : select(m, sc_scenarios)) names.push_back(s.name);
      const auto rows = build_scorecard(store, names);
      write_scorecard(rows, out);
      if (!sc_svg.empty()) write_file(sc_svg, scorecard_svg(rows));
      return 0;
    }
    if (*exp) {
      const study::StudyStore store(g.store);
      if (!trajectory_of.empty()) {
        const auto t = median_trial(store.trials(study_name(trajectory_of, "rl")));
        const auto traj = trajectory_from_json(t.attrs.at("trajectory"));
        write_trajectory(traj, out);
        if (!exp_svg.empty()) write_file(exp_svg, trajectory_svg(traj));
        return 0;
      }
      std::vector<optimizer::TrialRecord> rows;
      if (studies.empty()) {
        rows = store.all_trials();
      } else {
        for (const auto& s : studies) {
          const auto t = store.trials(s);
          rows.insert(rows.end(), t.begin(), t.end());
        }
      }
      study::export_table(rows, out);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace ranbench::bench
