#include "ranbench/bench/hpo.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "ranbench/bench/pipeline.hpp"
#include "ranbench/optimizer/tpe.hpp"
#include "ranbench/seed.hpp"

namespace ranbench::bench {

using optimizer::as_bool;
using optimizer::as_double;
using optimizer::as_int;
using optimizer::as_string;

std::string default_hpo_space_path() {
  return std::string(RANBENCH_CONFIG_DIR) + "/hpo_space.json";
}

BenchConfig apply_hparams(const BenchConfig& base, const optimizer::Params& p) {
  BenchConfig c = base;
  for (const auto& [k, v] : p) {
    if (k == "train_duration") c.env.train_duration_ms = static_cast<int>(as_int(v));
    else if (k == "randomize") c.env.randomize_init = as_bool(v);
    else if (k == "history") c.env.history_len = static_cast<int>(as_int(v));
    else if (k == "step_size") c.env.step_size_tenths = static_cast<int>(as_int(v));
    else if (k == "num_rsrq_quantiles") c.env.rsrq_quantiles = static_cast<int>(as_int(v));
    else if (k == "oob_means_gameover") c.env.oob_means_gameover = as_bool(v);
    else if (k == "oob_penalty_factor") c.env.oob_penalty_factor = as_double(v);
    else if (k == "ent_coeff") c.hp.ent_coef = as_double(v);
    else if (k == "gae_lambda") c.hp.gae_lambda = as_double(v);
    else if (k == "gamma") c.hp.gamma = as_double(v);
    else if (k == "learning_rate") c.hp.learning_rate = as_double(v);
    else if (k == "max_grad_norm") c.hp.max_grad_norm = as_double(v);
    else if (k == "n_steps") c.hp.n_steps = static_cast<int>(as_int(v));
    else if (k == "vf_coeff") c.hp.vf_coef = as_double(v);
    else if (k == "activation_fn") c.arch.activation = rlagent::parse_activation(as_string(v));
    else if (k == "net_arch") c.arch.width = static_cast<int>(as_int(v));
    else if (k == "ortho_init") c.arch.orthogonal_init = as_bool(v);
    else if (k == "n_envs") c.hp.n_envs = static_cast<int>(as_int(v));
    else if (k == "algo") c.hp.algo = rlagent::parse_algo(as_string(v));
    else if (k == "normalization_advantage") c.hp.normalize_advantage = as_bool(v);
    else if (k == "use_rms_prop") c.hp.use_rms_prop = as_bool(v);
    else if (k == "clip_range") c.hp.clip_range = as_double(v);
    else if (k == "batch_size") c.hp.batch_size = static_cast<int>(as_int(v));
    else if (k == "n_epochs") c.hp.n_epochs = static_cast<int>(as_int(v));
    else throw std::invalid_argument("unknown hyperparameter '" + k + "'");
  }
  // A batch larger than the rollout becomes one minibatch of the whole rollout.
  c.hp.batch_size = std::min(c.hp.batch_size, c.hp.rollout_size());
  c.env.validate_settings();
  c.hp.validate();
  c.arch.validate();
  return c;
}

std::string run_hpo(study::StudyStore& store, const optimizer::Space& space, const TsManifest& m,
                    const BenchConfig& base, const HpoOptions& opts) {
  if (opts.n_trials < 0) throw std::invalid_argument("negative trial count");
  store.create_study(opts.study, space);
  const std::uint64_t eval_seed = derive_seed(opts.seed, {0xE7A1});
  for (int i = static_cast<int>(store.trials(opts.study).size()); i < opts.n_trials; ++i) {
    const std::uint64_t trial_seed = derive_seed(opts.seed, {static_cast<std::uint64_t>(i)});
    const auto t0 = std::chrono::steady_clock::now();
    optimizer::TrialRecord r;
    r.study = opts.study;
    r.seed = trial_seed;
    r.params = optimizer::suggest(space, store.trials(opts.study), base.tpe, trial_seed);
    try {
      const BenchConfig cfg = apply_hparams(base, r.params);
      const long steps = std::max<long>(opts.timesteps_per_trial, cfg.hp.rollout_size());
      const auto trained = train_agent(m, cfg, steps, trial_seed);
      double sum = 0.0;
      int n = 0;
      for (const auto& s : m.scenarios) {
        for (const auto& t : evaluate_agent(nullptr, trained.policy, s, cfg, opts.eval_trials,
                                            opts.eval_duration_s, eval_seed)) {
          sum += t.final_score;
          ++n;
        }
      }
      r.score = n > 0 ? sum / n : std::nan("");
      r.attrs["timesteps"] = steps;
    } catch (const std::exception& e) {
      r.state = optimizer::TrialState::Failed;
      r.attrs["error"] = e.what();
    }
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    store.append_trial(std::move(r));
  }
  return opts.study;
}

}  // namespace ranbench::bench
