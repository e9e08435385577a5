#include "ranbench/bench/offline.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ranbench/optimizer/sampler.hpp"
#include "ranbench/ransim/network.hpp"
#include "ranbench/scoring.hpp"
#include "ranbench/seed.hpp"

namespace ranbench::bench {

using optimizer::Params;

Method parse_method(const std::string& s) {
  if (s == "tpe") return Method::Tpe;
  if (s == "grid") return Method::Grid;
  if (s == "random") return Method::Random;
  throw std::invalid_argument("unknown method '" + s + "' (expected tpe, grid or random)");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Tpe: return "tpe";
    case Method::Grid: return "grid";
    case Method::Random: return "random";
  }
  return "?";
}

optimizer::Space power_space(const ransim::RadioConfig& radio) {
  optimizer::Space s;
  for (const char* n : {"p1", "p2", "p3"})
    s.push_back({n, optimizer::Uniform{radio.min_power_dbm, radio.max_power_dbm}, std::nullopt});
  return s;
}

std::vector<std::vector<optimizer::ParamValue>> power_grid_levels() {
  const std::vector<optimizer::ParamValue> l = {20.0, 25.0, 30.0, 35.0, 40.0};
  return {l, l, l};
}

double round_power(double dbm) { return std::round(dbm * 10.0) / 10.0; }

double static_trial_score(const ransim::ScenarioSpec& s, const std::vector<double>& powers_dbm,
                          const BenchConfig& cfg) {
  auto st = ransim::make_network(s, powers_dbm, cfg.radio, cfg.env.warmup_ms);
  ransim::advance(st, cfg.env.warmup_ms + cfg.env.train_duration_ms);
  return scoring::total_score(st, st.clock_ms, cfg.score).value;
}

std::string study_name(const std::string& scenario, const std::string& kind) {
  return scenario + "." + kind;
}

namespace {

Params rounded(Params p) {
  for (auto& [k, v] : p) v = round_power(optimizer::as_double(v));
  return p;
}

void record(study::StudyStore& store, const std::string& name, const ransim::ScenarioSpec& s,
            const Params& p, std::uint64_t seed, const BenchConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  optimizer::TrialRecord r;
  r.study = name;
  r.params = p;
  r.seed = seed;
  try {
    r.score = static_trial_score(
        s, {optimizer::as_double(p.at("p1")), optimizer::as_double(p.at("p2")),
            optimizer::as_double(p.at("p3"))},
        cfg);
  } catch (const std::exception& e) {
    r.state = optimizer::TrialState::Failed;
    r.attrs["error"] = e.what();
  }
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  store.append_trial(std::move(r));
}

}  // namespace

std::string run_offline(study::StudyStore& store, const ransim::ScenarioSpec& s, Method method,
                        int n_trials, std::uint64_t seed, const BenchConfig& cfg) {
  if (n_trials < 0) throw std::invalid_argument("negative trial count");
  const std::string name = study_name(s.name, to_string(method));
  const auto space = power_space(cfg.radio);
  store.create_study(name, space);
  const int done = static_cast<int>(store.trials(name).size());

  if (method == Method::Grid) {
    const auto points = optimizer::grid(space, power_grid_levels());
    for (std::size_t i = static_cast<std::size_t>(done); i < points.size(); ++i)
      record(store, name, s, points[i], seed, cfg);
  } else if (method == Method::Random) {
    const auto points = optimizer::random_sample(space, n_trials, seed);
    for (int i = done; i < n_trials; ++i)
      record(store, name, s, rounded(points[static_cast<std::size_t>(i)]), seed, cfg);
  } else {
    for (int i = done; i < n_trials; ++i) {
      const std::uint64_t trial_seed = derive_seed(seed, {static_cast<std::uint64_t>(i)});
      const Params p = optimizer::suggest(space, store.trials(name), cfg.tpe, trial_seed);
      record(store, name, s, rounded(p), trial_seed, cfg);
    }
  }
  return name;
}

std::string run_baseline(study::StudyStore& store, const ransim::ScenarioSpec& s,
                         const BenchConfig& cfg) {
  const std::string name = study_name(s.name, "baseline");
  store.create_study(name, power_space(cfg.radio));
  if (store.trials(name).empty()) record(store, name, s, {{"p1", 30.0}, {"p2", 30.0}, {"p3", 30.0}}, 0, cfg);
  return name;
}

}  // namespace ranbench::bench
