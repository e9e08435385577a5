#include "ranbench/bench/pipeline.hpp"

#include <chrono>
#include <ostream>

#include "ranbench/bench/offline.hpp"
#include "ranbench/format.hpp"

namespace ranbench::bench {

using nlohmann::json;

rlagent::EnvFactory manifest_env_factory(const TsManifest& m, const BenchConfig& cfg) {
  std::vector<envproto::EnvConfig> cfgs;
  for (const auto& s : m.scenarios) cfgs.push_back(cfg.env_for(s));
  return [cfgs](int) { return std::make_unique<envproto::ScenarioPoolEnv>(cfgs); };
}

rlagent::TrainResult train_agent(const TsManifest& m, const BenchConfig& cfg, long timesteps,
                                 std::uint64_t seed, const rlagent::TrainOptions& opts) {
  return rlagent::train(manifest_env_factory(m, cfg), cfg.hp, cfg.arch, timesteps, seed, opts);
}

json trajectory_to_json(const std::vector<rlagent::TrajectoryPoint>& t) {
  json times = json::array(), powers = json::array(), scores = json::array();
  for (const auto& p : t) {
    times.push_back(p.t_ms);
    powers.push_back(p.powers_dbm);
    scores.push_back(p.score);
  }
  return {{"t_ms", times}, {"powers_dbm", powers}, {"score", scores}};
}

std::vector<rlagent::TrajectoryPoint> trajectory_from_json(const json& j) {
  const auto& t = j.at("t_ms");
  const auto& p = j.at("powers_dbm");
  const auto& s = j.at("score");
  if (t.size() != p.size() || t.size() != s.size())
    throw std::runtime_error("trajectory columns differ in length");
  std::vector<rlagent::TrajectoryPoint> out;
  for (std::size_t i = 0; i < t.size(); ++i)
    out.push_back({t[i].get<int>(), p[i].get<std::vector<double>>(), s[i].get<double>()});
  return out;
}

void write_trajectory(const std::vector<rlagent::TrajectoryPoint>& t, std::ostream& out) {
  out << "t_ms\tp1\tp2\tp3\tscore\n";
  for (const auto& p : t) {
    out << p.t_ms;
    for (double v : p.powers_dbm) out << '\t' << format_real(v);
    out << '\t' << format_real(p.score) << '\n';
  }
}

std::vector<rlagent::EvalTrial> evaluate_agent(study::StudyStore* store,
                                               const rlagent::ActorCritic& net,
                                               const ransim::ScenarioSpec& s,
                                               const BenchConfig& cfg, int n_trials,
                                               double duration_s, std::uint64_t seed) {
  const std::string name = study_name(s.name, "rl");
  if (store != nullptr) store->create_study(name, power_space(cfg.radio));
  auto t0 = std::chrono::steady_clock::now();
  auto sink = [&](const rlagent::EvalTrial& t) {
    if (store == nullptr) return;
    const auto now = std::chrono::steady_clock::now();
    optimizer::TrialRecord r;
    r.study = name;
    r.params = {{"p1", t.initial_powers_dbm.at(0)},
                {"p2", t.initial_powers_dbm.at(1)},
                {"p3", t.initial_powers_dbm.at(2)}};
    r.score = t.final_score;
    r.seed = t.seed;
    r.wall_time_s = std::chrono::duration<double>(now - t0).count();
    r.attrs = {{"initial_score", t.initial_score}, {"trajectory", trajectory_to_json(t.trajectory)}};
    store->append_trial(std::move(r));
    t0 = now;
  };
  return rlagent::evaluate(net, cfg.env_for(s), n_trials, duration_s, seed, sink);
}

}  // namespace ranbench::bench
