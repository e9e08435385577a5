#pragma once

#include <string>
#include <vector>

#include "ranbench/bench/dynamic.hpp"
#include "ranbench/bench/scorecard.hpp"
#include "ranbench/rlagent/train.hpp"

namespace ranbench::bench {

/// Per scenario: RL points as dots with the median marked, baseline,
/// grid-best and TPE-best as horizontal ticks.
std::string scorecard_svg(const std::vector<ScorecardRow>& rows);

/// Power levels over time (one polyline per eNB) above the score.
std::string trajectory_svg(const std::vector<rlagent::TrajectoryPoint>& t,
                           const std::vector<DwellInterval>& dwells = {});

}  // namespace ranbench::bench
