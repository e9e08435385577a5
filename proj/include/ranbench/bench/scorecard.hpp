#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ranbench/optimizer/domain.hpp"
#include "ranbench/study/store.hpp"

namespace ranbench::bench {

struct ScorecardRow {
  std::string scenario;
  double baseline = 0.0;
  double grid_best = 0.0;
  double tpe_best = 0.0;
  std::vector<double> rl_scores;  // in trial order
  int rl_median_trial = -1;       // trial id of the median RL trial

  double rl_min() const;
  double rl_median() const;
  double rl_max() const;
};

double median(std::vector<double> v);

/// The trial at sorted position (n-1)/2 (lower middle for even n).
optimizer::TrialRecord median_trial(const std::vector<optimizer::TrialRecord>& trials);

/// Throws naming the first missing or empty study.
std::vector<ScorecardRow> build_scorecard(const study::StudyStore& store,
                                          const std::vector<std::string>& scenarios);

/// Summary table followed by a blank line and the raw RL points.
void write_scorecard(const std::vector<ScorecardRow>& rows, std::ostream& out);

}  // namespace ranbench::bench
