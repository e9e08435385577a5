#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ranbench/bench/config.hpp"
#include "ranbench/study/store.hpp"

namespace ranbench::bench {

enum class Method { Tpe, Grid, Random };

Method parse_method(const std::string& s);
std::string to_string(Method m);

/// Three uniform power domains p1..p3 over the radio's power range.
optimizer::Space power_space(const ransim::RadioConfig& radio);

/// {20, 25, 30, 35, 40} for every eNB.
std::vector<std::vector<optimizer::ParamValue>> power_grid_levels();

/// Rounds to the 0.1 dB power granularity.
double round_power(double dbm);

/// Static-power trial: warmup, then the training episode length, scored at
/// the final tick.
double static_trial_score(const ransim::ScenarioSpec& s, const std::vector<double>& powers_dbm,
                          const BenchConfig& cfg);

/// "<scenario>.<kind>", e.g. "TS1.grid", "TS1.baseline", "TS1.rl".
std::string study_name(const std::string& scenario, const std::string& kind);

/// Runs (or resumes) an offline study up to n_trials records; grid always
/// covers the full product. Returns the study name.
std::string run_offline(study::StudyStore& store, const ransim::ScenarioSpec& s, Method method,
                        int n_trials, std::uint64_t seed, const BenchConfig& cfg);

/// Single (30, 30, 30) trial; idempotent.
std::string run_baseline(study::StudyStore& store, const ransim::ScenarioSpec& s,
                         const BenchConfig& cfg);

}  // namespace ranbench::bench
