#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ranbench/bench/config.hpp"
#include "ranbench/bench/manifest.hpp"
#include "ranbench/rlagent/train.hpp"
#include "ranbench/study/store.hpp"

namespace ranbench::bench {

/// Environments draw a manifest scenario per episode.
rlagent::EnvFactory manifest_env_factory(const TsManifest& m, const BenchConfig& cfg);

rlagent::TrainResult train_agent(const TsManifest& m, const BenchConfig& cfg, long timesteps,
                                 std::uint64_t seed, const rlagent::TrainOptions& opts = {});

/// Evaluates on one scenario and appends one record per trial to
/// "<scenario>.rl"; params are the initial powers, attrs hold the trajectory.
std::vector<rlagent::EvalTrial> evaluate_agent(study::StudyStore* store,
                                               const rlagent::ActorCritic& net,
                                               const ransim::ScenarioSpec& s,
                                               const BenchConfig& cfg, int n_trials,
                                               double duration_s, std::uint64_t seed);

nlohmann::json trajectory_to_json(const std::vector<rlagent::TrajectoryPoint>& t);
std::vector<rlagent::TrajectoryPoint> trajectory_from_json(const nlohmann::json& j);

/// t_ms, p1, p2, p3, score.
void write_trajectory(const std::vector<rlagent::TrajectoryPoint>& t, std::ostream& out);

}  // namespace ranbench::bench
