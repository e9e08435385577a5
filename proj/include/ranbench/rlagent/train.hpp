#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "ranbench/envproto/env.hpp"
#include <random>

#include "ranbench/rlagent/losses.hpp"
#include "ranbench/rlagent/optim.hpp"
#include "ranbench/rlagent/policy.hpp"

namespace ranbench::rlagent {

enum class Algo { A2C, PPO };

Algo parse_algo(const std::string& s);
std::string to_string(Algo a);

/// Defaults are the tuned choices for the power-control task.
struct HyperParams {
  Algo algo = Algo::PPO;
  double ent_coef = 1e-3;
  double gae_lambda = 0.95;
  double gamma = 0.98;
  double learning_rate = 3e-5;
  double max_grad_norm = 1.0;
  int n_steps = 256;
  double vf_coef = 0.25;
  int n_envs = 16;
  // A2C only
  bool normalize_advantage = false;
  bool use_rms_prop = false;
  // PPO only
  double clip_range = 0.2;
  int batch_size = 128;
  int n_epochs = 20;

  void validate() const;
  int rollout_size() const { return n_steps * n_envs; }
};

struct CurvePoint {
  int update = 0;
  long timesteps = 0;
  int episodes = 0;              // episodes finished during this rollout
  double mean_return = 0.0;      // NaN when none finished
  double mean_final_score = 0.0; // NaN when none finished
  LossStats loss;                // last minibatch
  double grad_norm = 0.0;        // last minibatch, before clipping
};

using EnvFactory = std::function<std::unique_ptr<envproto::Environment>(int env_index)>;

struct TrainOptions {
  std::string checkpoint_path;  // empty: no checkpoints
  int checkpoint_every = 0;     // updates; 0 writes only at the end
  std::function<void(const CurvePoint&)> on_update;
};

struct TrainResult {
  ActorCritic policy;
  std::vector<CurvePoint> curve;
};

/// Collects n_envs x n_steps transitions, updates, repeats for
/// floor(total_timesteps / rollout_size) updates.
TrainResult train(const EnvFactory& make_env, const HyperParams& hp, const PolicyArch& arch,
                  long total_timesteps, std::uint64_t seed, const TrainOptions& opts = {});

/// One update on a filled buffer; used by train() and exposed for tests.
/// Returns the stats and pre-clip gradient norm of the last minibatch.
struct UpdateStats {
  LossStats loss;
  double grad_norm = 0.0;
};
UpdateStats update_policy(ActorCritic& net, const RolloutBuffer& buf, const HyperParams& hp,
                          Optimizer& opt, std::mt19937_64& rng);

std::unique_ptr<Optimizer> make_optimizer(const HyperParams& hp);

void write_curve(const std::vector<CurvePoint>& curve, std::ostream& out);

struct TrajectoryPoint {
  int t_ms = 0;
  std::vector<double> powers_dbm;
  double score = 0.0;
};

struct EvalTrial {
  std::uint64_t seed = 0;
  std::vector<double> initial_powers_dbm;
  double initial_score = 0.0;
  double final_score = 0.0;
  std::vector<TrajectoryPoint> trajectory;
};

/// Greedy rollouts from random initial powers; out-of-range actions are
/// penalized and ignored rather than ending the trial.
std::vector<EvalTrial> evaluate(const ActorCritic& net, const envproto::EnvConfig& base,
                                int n_trials, double duration_s, std::uint64_t seed,
                                const std::function<void(const EvalTrial&)>& sink = {});

int greedy_action(const ActorCritic& net, const envproto::Observation& obs);

}  // namespace ranbench::rlagent
