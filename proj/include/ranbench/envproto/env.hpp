#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "ranbench/ransim/network.hpp"
#include "ranbench/scoring.hpp"

namespace ranbench::envproto {

struct ObservationShape {
  int enbs = 3;
  int history = 16;
  int features = 2;

  int size() const { return enbs * history * features; }
  friend bool operator==(const ObservationShape&, const ObservationShape&) = default;
};

/// Flattened (eNB, time, feature) tensor; time index history-1 is the most
/// recent interaction.
struct Observation {
  ObservationShape shape;
  std::vector<double> values;

  double at(int enb, int t, int f) const {
    return values[(static_cast<std::size_t>(enb) * shape.history + t) * shape.features + f];
  }
};

struct EnvConfig {
  ransim::ScenarioSpec scenario;
  ransim::RadioConfig radio;
  scoring::ScoreParams score;

  int history_len = 16;
  int rsrq_quantiles = 1;
  int step_size_tenths = 3;  // power increment in 0.1 dB units
  bool randomize_init = true;
  int train_duration_ms = 10000;
  bool oob_means_gameover = true;
  double oob_penalty_factor = 1.0;
  int interaction_interval_ms = 100;
  int warmup_ms = 4000;

  /// Overrides the 30 dBm / randomized start, in 0.1 dB units.
  std::optional<std::vector<int>> initial_powers_tenths;

  void validate() const;
  /// Everything except the scenario.
  void validate_settings() const;
  ObservationShape observation_shape() const;
  int action_count() const { return 2 * 3 + 1; }
};

/// 0 = no-op, 2i-1 = decrease eNB i, 2i = increase eNB i (i is 1-based).
struct ActionId {
  int value = 0;

  static ActionId noop() { return {0}; }
  static ActionId decrease(int enb) { return {2 * enb + 1}; }  // enb 0-based
  static ActionId increase(int enb) { return {2 * enb + 2}; }
  int enb() const { return (value - 1) / 2; }
  int direction() const { return value == 0 ? 0 : (value % 2 == 1 ? -1 : +1); }
};

struct StepInfo {
  int t_ms = 0;  // time since the end of warmup
  double score = 0.0;
  bool score_truncated = false;
  bool oob = false;
  std::vector<double> powers_dbm;
  std::vector<ransim::SimEvent> handovers;
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool done = false;
  bool terminated = false;  // OOB game over
  bool truncated = false;   // train_duration reached
  StepInfo info;
};

/// Minimal episodic interface consumed by the RL trainer.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual ObservationShape observation_shape() const = 0;
  virtual int action_count() const = 0;
  virtual Observation reset(std::uint64_t episode_seed) = 0;
  virtual StepResult step(int action) = 0;
};

class EpisodeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Power-tuning environment over one scenario.
class RanEnv : public Environment {
 public:
  explicit RanEnv(EnvConfig config);

  ObservationShape observation_shape() const override { return config_.observation_shape(); }
  int action_count() const override { return config_.action_count(); }
  Observation reset(std::uint64_t episode_seed) override;
  StepResult step(int action) override;

  const EnvConfig& config() const { return config_; }
  const ransim::NetworkState& network() const { return *state_; }
  double baseline_score() const { return baseline_score_; }
  double current_score() const { return last_score_; }
  std::vector<double> powers_dbm() const;
  std::vector<int> powers_tenths() const { return powers_tenths_; }
  int elapsed_ms() const { return elapsed_ms_; }
  bool done() const { return done_; }

 private:
  std::vector<double> live_slice() const;
  Observation build_observation() const;

  EnvConfig config_;
  std::optional<ransim::NetworkState> state_;
  std::vector<int> powers_tenths_;
  std::deque<std::vector<double>> history_;
  double baseline_score_ = 0.0;
  double last_score_ = 0.0;
  int elapsed_ms_ = 0;
  bool done_ = true;
};

/// Draws one of several scenarios per episode; used for training across the
/// test scenarios. All configs must share the observation shape.
class ScenarioPoolEnv : public Environment {
 public:
  explicit ScenarioPoolEnv(std::vector<EnvConfig> configs);

  ObservationShape observation_shape() const override;
  int action_count() const override;
  Observation reset(std::uint64_t episode_seed) override;
  StepResult step(int action) override;

  const RanEnv& active() const { return envs_.at(active_); }

 private:
  std::vector<RanEnv> envs_;
  std::size_t active_ = 0;
};

/// Sample quantiles (linear interpolation between order statistics) at
/// k/q for k = 1..q-1.
std::vector<double> q_quantiles(std::vector<double> values, int q);

/// Observation encodings.
double normalize_power(double dbm, const ransim::RadioConfig& radio);
double normalize_rsrq(double rsrq_db);
inline constexpr double kEmptyCellRsrq = -1.0;
inline constexpr double kUeCountScale = 12.0;

}  // namespace ranbench::envproto
