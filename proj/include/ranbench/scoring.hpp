#pragma once

#include "ranbench/ransim/network.hpp"

namespace ranbench::scoring {

/// Shape of the per-UE experience curve. `reference_bytes` received within
/// `window_ms` is worth exactly one unit.
struct ScoreParams {
  double alpha = 1000.0;
  int window_ms = 2000;
  double reference_bytes = 5e5;

  void validate() const;
};

struct ScoreSnapshot {
  double value = 0.0;
  bool truncated = false;  // window clipped to the available history
};

/// log_alpha((alpha - 1) r / reference_bytes + 1)
double ue_experience(double window_bytes, const ScoreParams& params = {});

/// Sum of ue_experience over all UEs for the window (t - window, t].
/// Throws std::out_of_range if `t_ms` lies beyond the state clock or before
/// the retained history.
ScoreSnapshot total_score(const ransim::NetworkState& state, int t_ms,
                          const ScoreParams& params = {});

}  // namespace ranbench::scoring
