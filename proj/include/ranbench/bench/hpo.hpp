#pragma once

#include <cstdint>
#include <string>

#include "ranbench/bench/config.hpp"
#include "ranbench/bench/manifest.hpp"
#include "ranbench/optimizer/domain.hpp"
#include "ranbench/study/store.hpp"

namespace ranbench::bench {

/// config/hpo_space.json in the source tree.
std::string default_hpo_space_path();

/// Overrides the env, SB3-side and network fields named in `p`; unknown
/// names are rejected.
BenchConfig apply_hparams(const BenchConfig& base, const optimizer::Params& p);

struct HpoOptions {
  std::string study = "hpo";
  int n_trials = 100;
  long timesteps_per_trial = 200000;
  int eval_trials = 4;  // per scenario
  double eval_duration_s = 10.0;
  std::uint64_t seed = 0;
};

/// Runs (or resumes) the search. Each trial trains for
/// max(timesteps_per_trial, n_steps * n_envs) steps, so every trial performs
/// at least one update; the objective is the mean final evaluation score
/// over all manifest scenarios with fixed evaluation seeds. Exceptions turn
/// into failed records.
std::string run_hpo(study::StudyStore& store, const optimizer::Space& space, const TsManifest& m,
                    const BenchConfig& base, const HpoOptions& opts);

}  // namespace ranbench::bench
