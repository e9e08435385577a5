#pragma once

#include <string>

#include <json.hpp>

#include "ranbench/envproto/env.hpp"
#include "ranbench/optimizer/tpe.hpp"
#include "ranbench/rlagent/train.hpp"

namespace ranbench::bench {

/// Everything an experiment needs besides the scenarios themselves. Loaded
/// from a JSON file whose sections (radio, score, env, tpe, rl, arch, bench)
/// are all optional; absent keys keep their defaults.
struct BenchConfig {
  ransim::RadioConfig radio;
  scoring::ScoreParams score;
  envproto::EnvConfig env;  // scenario left empty; filled per run
  optimizer::TpeConfig tpe;
  rlagent::HyperParams hp;
  rlagent::PolicyArch arch;

  int num_ues = 12;
  int offline_trials = 125;
  long train_timesteps = 200000;
  int eval_trials = 20;
  double eval_duration_s = 30.0;

  void validate() const;
  /// env with radio/score copied in and the given scenario set.
  envproto::EnvConfig env_for(const ransim::ScenarioSpec& scenario) const;
};

nlohmann::json config_to_json(const BenchConfig& c);
BenchConfig config_from_json(const nlohmann::json& j);
BenchConfig load_config(const std::string& path);

nlohmann::json hyperparams_to_json(const rlagent::HyperParams& hp);
rlagent::HyperParams hyperparams_from_json(const nlohmann::json& j,
                                           rlagent::HyperParams base = {});

}  // namespace ranbench::bench
