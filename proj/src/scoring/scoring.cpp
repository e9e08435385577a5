#include "ranbench/scoring.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ranbench::scoring {

void ScoreParams::validate() const {
  if (!(alpha > 1.0)) throw std::invalid_argument("score: alpha must exceed 1");
  if (window_ms <= 0) throw std::invalid_argument("score: window must be positive");
  if (!(reference_bytes > 0.0)) throw std::invalid_argument("score: reference_bytes must be positive");
}

double ue_experience(double window_bytes, const ScoreParams& p) {
  if (window_bytes < 0.0) throw std::invalid_argument("ue_experience: negative byte count");
  return std::log((p.alpha - 1.0) * (window_bytes / p.reference_bytes) + 1.0) / std::log(p.alpha);
}

ScoreSnapshot total_score(const ransim::NetworkState& state, int t_ms, const ScoreParams& p) {
  if (t_ms > state.clock_ms)
    throw std::out_of_range("total_score: t=" + std::to_string(t_ms) +
                            " ms is beyond the simulator clock " +
                            std::to_string(state.clock_ms) + " ms");
  ScoreSnapshot snap;
  int from = t_ms - p.window_ms;
  if (from < 0) {
    from = 0;
    snap.truncated = true;
  }
  if (from < state.retained_since_ms())
    throw std::out_of_range("total_score: window start " + std::to_string(from) +
                            " ms precedes retained history");
  for (int u = 0; u < state.ue_count(); ++u)
    snap.value += ue_experience(state.window_bytes(u, from, t_ms), p);
  return snap;
}

}  // namespace ranbench::scoring
