#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ranbench/bench/config.hpp"
#include "ranbench/bench/manifest.hpp"
#include "ranbench/rlagent/policy.hpp"
#include "ranbench/rlagent/train.hpp"

namespace ranbench::bench {

/// A stretch of time during which all UEs rest at one scenario's positions.
struct DwellInterval {
  std::string scenario;
  int start_ms = 0;  // time since the end of warmup
  int end_ms = 0;
};

struct DynamicResult {
  std::vector<rlagent::TrajectoryPoint> trajectory;
  std::vector<DwellInterval> dwells;
};

/// UEs start at the first cycle scenario and then visit each cycle
/// scenario in turn, `cycles` times, moving at 14 m/s and resting
/// `dwell_s` at each.
ransim::ScenarioSpec cycle_scenario(const std::vector<ransim::ScenarioSpec>& cycle, double dwell_s,
                                    int cycles);

/// Travel time between two position sets: the slowest UE decides.
double leg_travel_s(const std::vector<ransim::Vec2>& from, const std::vector<ransim::Vec2>& to,
                    double speed_mps);

/// Runs the agent greedily from 30 dBm through the whole schedule.
DynamicResult run_dynamic(const rlagent::ActorCritic& net,
                          const std::vector<ransim::ScenarioSpec>& cycle, const BenchConfig& cfg,
                          double dwell_s, int cycles);

/// Mean score over samples with t in (end - window, end] of each dwell.
std::vector<double> dwell_tail_means(const DynamicResult& r, int window_ms);

void write_dynamic(const DynamicResult& r, std::ostream& out);

}  // namespace ranbench::bench
