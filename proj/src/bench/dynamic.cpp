#include "ranbench/bench/dynamic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "ranbench/format.hpp"

namespace ranbench::bench {

ransim::ScenarioSpec cycle_scenario(const std::vector<ransim::ScenarioSpec>& cycle, double dwell_s,
                                    int cycles) {
  if (cycle.empty()) throw std::invalid_argument("empty scenario cycle");
  if (cycles < 1) throw std::invalid_argument("cycles must be >= 1");
  if (!(dwell_s > 0)) throw std::invalid_argument("dwell must be positive");
  ransim::ScenarioSpec s;
  s.name = "cycle";
  for (const auto& c : cycle) s.name += "-" + c.name;
  s.seed = cycle.front().seed;
  s.ue_positions = cycle.front().ue_positions;
  s.ue_speed_mps = ransim::kMovingSpeedMps;
  for (int k = 0; k < cycles; ++k)
    for (const auto& c : cycle) {
      if (c.ue_positions.size() != s.ue_positions.size())
        throw std::invalid_argument("cycle scenarios differ in UE count");
      s.waypoint_schedule.push_back({c.ue_positions, dwell_s});
    }
  return s;
}

double leg_travel_s(const std::vector<ransim::Vec2>& from, const std::vector<ransim::Vec2>& to,
                    double speed_mps) {
  double d = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) d = std::max(d, ransim::distance(from[i], to[i]));
  return d / speed_mps;
}

DynamicResult run_dynamic(const rlagent::ActorCritic& net,
                          const std::vector<ransim::ScenarioSpec>& cycle, const BenchConfig& cfg,
                          double dwell_s, int cycles) {
  const ransim::ScenarioSpec s = cycle_scenario(cycle, dwell_s, cycles);
  const int legs = static_cast<int>(s.waypoint_schedule.size());

  // Upper bound on the schedule length; the loop stops at the last dwell.
  double total_s = 0.0;
  auto pos = s.ue_positions;
  for (const auto& w : s.waypoint_schedule) {
    total_s += leg_travel_s(pos, w.targets, s.ue_speed_mps) + w.dwell_s + 1.0;
    pos = w.targets;
  }

  envproto::EnvConfig env_cfg = cfg.env_for(s);
  env_cfg.randomize_init = false;
  env_cfg.initial_powers_tenths.reset();
  env_cfg.oob_means_gameover = false;
  env_cfg.train_duration_ms = static_cast<int>(std::ceil(total_s)) * 1000 + 1000;
  envproto::RanEnv env(env_cfg);
  if (env.observation_shape() != net.observation_shape())
    throw std::invalid_argument("dynamic trial: policy does not match environment");

  DynamicResult res;
  std::map<int, DwellInterval> dwells;
  const int dwell_ms = static_cast<int>(std::lround(dwell_s * 1000.0));
  envproto::Observation obs = env.reset(0);
  while (true) {
    auto r = env.step(rlagent::greedy_action(net, obs));
    res.trajectory.push_back({r.info.t_ms, r.info.powers_dbm, r.info.score});
    const auto& mob = env.network().mobility;
    if (mob.phase == ransim::MobilityState::Phase::Dwelling && !dwells.count(mob.leg)) {
      const int end = mob.dwell_until_ms - env_cfg.warmup_ms;
      dwells[mob.leg] = {cycle[static_cast<std::size_t>(mob.leg) % cycle.size()].name,
                         end - dwell_ms, end};
    }
    if (static_cast<int>(dwells.size()) == legs && r.info.t_ms >= dwells.rbegin()->second.end_ms)
      break;
    if (r.done) throw std::logic_error("dynamic trial ended before the schedule completed");
    obs = std::move(r.observation);
  }
  for (const auto& [leg, d] : dwells) res.dwells.push_back(d);
  return res;
}

std::vector<double> dwell_tail_means(const DynamicResult& r, int window_ms) {
  std::vector<double> out;
  for (const auto& d : r.dwells) {
    double sum = 0.0;
    int n = 0;
    for (const auto& p : r.trajectory)
      if (p.t_ms > d.end_ms - window_ms && p.t_ms <= d.end_ms) {
        sum += p.score;
        ++n;
      }
    out.push_back(n > 0 ? sum / n : std::nan(""));
  }
  return out;
}

void write_dynamic(const DynamicResult& r, std::ostream& out) {
  out << "t_ms\tp1\tp2\tp3\tscore\tdwell\n";
  for (const auto& p : r.trajectory) {
    std::string at = "-";
    for (const auto& d : r.dwells)
      if (p.t_ms >= d.start_ms && p.t_ms <= d.end_ms) at = d.scenario;
    out << p.t_ms;
    for (double v : p.powers_dbm) out << '\t' << format_real(v);
    out << '\t' << format_real(p.score) << '\t' << at << '\n';
  }
}

}  // namespace ranbench::bench
