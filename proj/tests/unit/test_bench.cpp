#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ranbench/bench/cli.hpp"
#include "ranbench/bench/config.hpp"
#include "ranbench/bench/dynamic.hpp"
#include "ranbench/bench/hpo.hpp"
#include "ranbench/bench/manifest.hpp"
#include "ranbench/bench/offline.hpp"
#include "ranbench/bench/pipeline.hpp"
#include "ranbench/bench/scorecard.hpp"
#include "ranbench/bench/svg.hpp"
#include "ranbench/optimizer/sampler.hpp"
#include "ranbench/rlagent/checkpoint.hpp"

using namespace ranbench;
using namespace ranbench::bench;

namespace {

const TsManifest& manifest() {
  static const TsManifest m = load_manifest(default_manifest_path());
  return m;
}

struct TempPath {
  std::filesystem::path path;
  explicit TempPath(const std::string& name)
      : path(std::filesystem::temp_directory_path() / ("ranbench_bench_" + name)) {
    std::filesystem::remove(path);
  }
  ~TempPath() { std::filesystem::remove(path); }
  std::string str() const { return path.string(); }
};

struct CliResult {
  int status;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ranbench");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in;
  std::ostringstream out, err;
  const int status = run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {status, out.str(), err.str()};
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

rlagent::ActorCritic small_net(std::uint64_t seed) {
  rlagent::PolicyArch arch;
  arch.width = 16;
  return rlagent::ActorCritic({3, 16, 2}, 7, arch, seed);
}

}  // namespace

TEST_CASE("default config carries the tuned choices") {
  const BenchConfig c;
  CHECK(c.env.train_duration_ms == 10000);
  CHECK(c.env.randomize_init);
  CHECK(c.env.history_len == 16);
  CHECK(c.env.step_size_tenths == 3);
  CHECK(c.env.rsrq_quantiles == 1);
  CHECK(c.env.oob_means_gameover);
  CHECK(c.env.oob_penalty_factor == 1.0);
  CHECK(c.hp.ent_coef == 1e-3);
  CHECK(c.hp.gae_lambda == 0.95);
  CHECK(c.hp.gamma == 0.98);
  CHECK(c.hp.learning_rate == 3e-5);
  CHECK(c.hp.max_grad_norm == 1.0);
  CHECK(c.hp.n_steps == 256);
  CHECK(c.hp.vf_coef == 0.25);
  CHECK(c.hp.n_envs == 16);
  CHECK(c.hp.algo == rlagent::Algo::PPO);
  CHECK(c.hp.clip_range == 0.2);
  CHECK(c.hp.batch_size == 128);
  CHECK(c.hp.n_epochs == 20);
  CHECK(c.arch.activation == rlagent::Activation::Relu);
  CHECK(c.arch.width == 256);
  CHECK_FALSE(c.arch.orthogonal_init);
}

TEST_CASE("config json round trip and strictness") {
  BenchConfig c;
  c.hp.algo = rlagent::Algo::A2C;
  c.hp.use_rms_prop = true;
  c.env.history_len = 8;
  c.arch.activation = rlagent::Activation::Tanh;
  c.radio.a4_offset_db = 2.0;
  c.eval_trials = 7;
  const auto j = config_to_json(c);
  CHECK(config_to_json(config_from_json(j)) == j);
  CHECK(config_from_json(nlohmann::json::object()).hp.n_steps == 256);

  auto bad = j;
  bad["rl"]["learnig_rate"] = 1.0;
  CHECK_THROWS(config_from_json(bad));
  bad = j;
  bad["extra"] = nlohmann::json::object();
  CHECK_THROWS(config_from_json(bad));
  bad = j;
  bad["rl"]["gamma"] = 1.5;
  CHECK_THROWS(config_from_json(bad));
}

TEST_CASE("manifest scenarios concentrate on at most two cells") {
  const auto& m = manifest();
  REQUIRE(m.scenarios.size() == 6u);
  CHECK(m.names() == std::vector<std::string>{"TS1", "TS2", "TS3", "TS4", "TS5", "TS6"});
  for (const auto& s : m.scenarios) {
    CHECK(s.ue_positions.size() == 12u);
    CHECK(baseline_enbs_used(s, {}) <= 2);
  }
  CHECK_THROWS(m.get("TS7"));
}

TEST_CASE("manifest regenerates from its seed scan") {
  const auto regen = generate_manifest({}, 6, 12, 0, 9999, 2);
  const TempPath p("manifest.json");
  save_manifest(p.str(), regen);
  const auto back = load_manifest(p.str());
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(back.scenarios[i].seed == manifest().scenarios[i].seed);
    CHECK(back.scenarios[i].ue_positions == manifest().scenarios[i].ue_positions);
  }
}

TEST_CASE("static trial equals a no-op environment rollout") {
  const BenchConfig cfg;
  for (const auto& s : manifest().scenarios) {
    auto env_cfg = cfg.env_for(s);
    env_cfg.initial_powers_tenths = std::vector<int>{300, 250, 400};
    envproto::RanEnv env(env_cfg);
    env.reset(0);
    envproto::StepResult r;
    while (!env.done()) r = env.step(0);
    CHECK(static_trial_score(s, {30.0, 25.0, 40.0}, cfg) == r.info.score);
  }
}

TEST_CASE("power helpers") {
  CHECK(round_power(29.96) == 30.0);
  CHECK(round_power(20.04) == 20.0);
  CHECK(power_space({}).size() == 3u);
  CHECK(study_name("TS2", "grid") == "TS2.grid");
  CHECK(parse_method("grid") == Method::Grid);
  CHECK_THROWS(parse_method("bayes"));
}

TEST_CASE("grid study has 125 trials and beats the baseline") {
  const TempPath p("grid.jsonl");
  study::StudyStore store(p.str());
  const BenchConfig cfg;
  const auto& s = manifest().get("TS1");
  const auto name = run_offline(store, s, Method::Grid, 125, 0, cfg);
  CHECK(store.trials(name).size() == 125u);
  run_offline(store, s, Method::Grid, 125, 0, cfg);  // resume is a no-op
  CHECK(store.trials(name).size() == 125u);
  const auto base = run_baseline(store, s, cfg);
  run_baseline(store, s, cfg);
  CHECK(store.trials(base).size() == 1u);
  CHECK(store.best_trial(base).score < store.best_trial(name).score);
}

TEST_CASE("offline tpe is reproducible and resumable") {
  const BenchConfig cfg;
  const auto& s = manifest().get("TS2");
  const TempPath a("tpe_a.jsonl"), b("tpe_b.jsonl");
  study::StudyStore sa(a.str()), sb(b.str());
  run_offline(sa, s, Method::Tpe, 25, 9, cfg);
  run_offline(sb, s, Method::Tpe, 12, 9, cfg);
  run_offline(sb, s, Method::Tpe, 25, 9, cfg);
  const auto ta = sa.trials("TS2.tpe"), tb = sb.trials("TS2.tpe");
  REQUIRE(ta.size() == 25u);
  REQUIRE(tb.size() == 25u);
  for (std::size_t i = 0; i < ta.size(); ++i) {
    CHECK(ta[i].params == tb[i].params);
    CHECK(ta[i].score == tb[i].score);
    for (const auto& [k, v] : ta[i].params) {
      const double x = optimizer::as_double(v);
      CHECK(std::abs(x * 10.0 - std::round(x * 10.0)) < 1e-9);
    }
  }
}

TEST_CASE("scorecard assembly") {
  const TempPath p("scorecard.jsonl");
  const BenchConfig cfg;
  const auto& s = manifest().get("TS3");
  {
    study::StudyStore store(p.str());
    run_baseline(store, s, cfg);
    run_offline(store, s, Method::Grid, 125, 0, cfg);
    try {
      build_scorecard(store, {"TS3"});
      FAIL("expected a missing-study error");
    } catch (const std::exception& e) {
      CHECK(std::string(e.what()).find("TS3.tpe") != std::string::npos);
    }
    run_offline(store, s, Method::Tpe, 15, 0, cfg);
    evaluate_agent(&store, small_net(1), s, cfg, 5, 2.0, 3);
  }
  const study::StudyStore a(p.str()), b(p.str());
  const auto rows = build_scorecard(a, {"TS3"});
  REQUIRE(rows.size() == 1u);
  CHECK(rows[0].rl_scores.size() == 5u);
  CHECK(rows[0].baseline == a.best_trial("TS3.baseline").score);
  CHECK(rows[0].grid_best == a.best_trial("TS3.grid").score);
  CHECK(rows[0].rl_min() <= rows[0].rl_median());
  CHECK(rows[0].rl_median() <= rows[0].rl_max());
  CHECK(rows[0].rl_median() == median(rows[0].rl_scores));
  std::ostringstream oa, ob;
  write_scorecard(rows, oa);
  write_scorecard(build_scorecard(b, {"TS3"}), ob);
  CHECK(oa.str() == ob.str());
  CHECK(scorecard_svg(rows).rfind("<svg", 0) == 0);

  const auto med = median_trial(a.trials("TS3.rl"));
  CHECK(med.trial_id == rows[0].rl_median_trial);
  CHECK(med.score == rows[0].rl_median());
  const auto traj = trajectory_from_json(med.attrs.at("trajectory"));
  CHECK(traj.size() == 20u);
  CHECK(trajectory_svg(traj).rfind("<svg", 0) == 0);
}

TEST_CASE("median helpers") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
  std::vector<optimizer::TrialRecord> t(4);
  const double scores[] = {5.0, 1.0, 3.0, 4.0};
  for (int i = 0; i < 4; ++i) {
    t[i].trial_id = i;
    t[i].score = scores[i];
  }
  CHECK(median_trial(t).trial_id == 2);
}

TEST_CASE("hpo space has the conditional branches") {
  const auto space = optimizer::load_space(default_hpo_space_path());
  CHECK(space.size() == 24u);
  std::mt19937_64 rng(4);
  int ppo = 0, a2c = 0;
  for (int i = 0; i < 200; ++i) {
    const auto p = optimizer::sample_space(space, rng);
    CHECK_NOTHROW(optimizer::check_params(space, p));
    const bool is_ppo = optimizer::as_string(p.at("algo")) == "PPO";
    (is_ppo ? ppo : a2c)++;
    CHECK(p.count("clip_range") == (is_ppo ? 1u : 0u));
    CHECK(p.count("batch_size") == (is_ppo ? 1u : 0u));
    CHECK(p.count("n_epochs") == (is_ppo ? 1u : 0u));
    CHECK(p.count("use_rms_prop") == (is_ppo ? 0u : 1u));
    CHECK(p.count("normalization_advantage") == (is_ppo ? 0u : 1u));
    BenchConfig applied;
    CHECK_NOTHROW(applied = apply_hparams(BenchConfig{}, p));
    CHECK(applied.hp.algo == (is_ppo ? rlagent::Algo::PPO : rlagent::Algo::A2C));
  }
  CHECK(ppo > 0);
  CHECK(a2c > 0);
  CHECK_THROWS(apply_hparams(BenchConfig{}, {{"not_a_param", 1.0}}));
}

TEST_CASE("hpo smoke run") {
  const TempPath p("hpo.jsonl");
  study::StudyStore store(p.str());
  BenchConfig base;
  base.hp.n_steps = 16;
  base.hp.n_envs = 2;
  base.hp.batch_size = 8;
  base.hp.n_epochs = 1;
  base.arch.width = 16;
  const optimizer::Space space = {
      {"algo", optimizer::Categorical{{std::string("A2C"), std::string("PPO")}}, std::nullopt},
      {"gamma", optimizer::Uniform{0.9, 0.999}, std::nullopt},
      {"clip_range", optimizer::Categorical{{0.1, 0.2, 0.3}},
       optimizer::Condition{"algo", {std::string("PPO")}}},
      {"use_rms_prop", optimizer::Categorical{{true, false}},
       optimizer::Condition{"algo", {std::string("A2C")}}},
  };
  HpoOptions opts;
  opts.study = "smoke";
  opts.n_trials = 3;
  opts.timesteps_per_trial = 2000;
  opts.eval_trials = 1;
  opts.eval_duration_s = 1.0;
  const auto name = run_hpo(store, space, manifest(), base, opts);
  const auto trials = store.trials(name);
  CHECK(trials.size() == 3u);
  for (const auto& t : trials) {
    CHECK(t.state == optimizer::TrialState::Complete);
    CHECK(std::isfinite(t.score));
    const bool is_ppo = optimizer::as_string(t.params.at("algo")) == "PPO";
    CHECK(t.params.count("clip_range") == (is_ppo ? 1u : 0u));
    CHECK(t.params.count("use_rms_prop") == (is_ppo ? 0u : 1u));
  }
}

TEST_CASE("dynamic trial dwell intervals follow the kinematics") {
  const BenchConfig cfg;
  std::vector<ransim::ScenarioSpec> cyc = {manifest().get("TS1"), manifest().get("TS2"),
                                           manifest().get("TS3")};
  const double dwell = 3.0;
  const auto r = run_dynamic(small_net(2), cyc, cfg, dwell, 1);
  REQUIRE(r.dwells.size() == 3u);
  std::vector<ransim::Vec2> pos = cyc[0].ue_positions;
  int prev_end = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& d = r.dwells[k];
    CHECK(d.scenario == cyc[k].name);
    CHECK(d.end_ms - d.start_ms == 3000);
    const double travel_ms = 1000.0 * leg_travel_s(pos, cyc[k].ue_positions, ransim::kMovingSpeedMps);
    CHECK(std::abs((d.start_ms - prev_end) - travel_ms) <= cfg.radio.tick_ms);
    prev_end = d.end_ms;
    pos = cyc[k].ue_positions;
  }
  for (const auto& pt : r.trajectory)
    for (double w : pt.powers_dbm) {
      CHECK(w >= 20.0);
      CHECK(w <= 40.0);
    }
  CHECK(r.trajectory.back().t_ms >= r.dwells.back().end_ms);
  const auto tails = dwell_tail_means(r, 1000);
  CHECK(tails.size() == 3u);
  std::ostringstream out;
  write_dynamic(r, out);
  CHECK(count_lines(out.str()) == static_cast<int>(r.trajectory.size()) + 1);
}

TEST_CASE("cli usage errors") {
  CHECK(cli({}).status != 0);
  CHECK(cli({"frobnicate"}).status != 0);
  CHECK(cli({"optimize", "--method", "annealing"}).status != 0);
  CHECK(cli({"--help"}).status == 0);
}

TEST_CASE("cli optimize then export gives 125 rows") {
  const TempPath p("cli.jsonl");
  const auto opt = cli({"--store", p.str(), "optimize", "--method", "grid", "--scenario", "TS4"});
  CHECK(opt.status == 0);
  const auto exp = cli({"--store", p.str(), "export", "--study", "TS4.grid"});
  CHECK(exp.status == 0);
  CHECK(count_lines(exp.out) == 126);

  const auto sc = cli({"--store", p.str(), "scorecard", "--scenario", "TS4"});
  CHECK(sc.status == 1);
  CHECK(sc.err.find("missing study TS4.") != std::string::npos);
  CHECK(count_lines(sc.err) == 1);
}

TEST_CASE("cli simulate prints one row per interval") {
  const auto r = cli({"simulate", "--scenario", "TS1", "--powers", "30,30,30"});
  CHECK(r.status == 0);
  CHECK(count_lines(r.out) == 102);  // header, t = 0, then 100 intervals
  CHECK(cli({"simulate", "--powers", "30,30"}).status == 1);
}
