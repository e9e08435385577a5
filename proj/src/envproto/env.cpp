#include "ranbench/envproto/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ranbench::envproto {

namespace {
constexpr int kEnbCount = 3;
}

void EnvConfig::validate() const {
  validate_settings();
  scenario.validate(radio);
}

void EnvConfig::validate_settings() const {
  radio.validate();
  score.validate();
  if (history_len < 1) throw std::invalid_argument("env: history_len must be >= 1");
  if (rsrq_quantiles < 1) throw std::invalid_argument("env: rsrq_quantiles must be >= 1");
  if (step_size_tenths < 1) throw std::invalid_argument("env: step_size must be positive");
  if (interaction_interval_ms <= 0 || interaction_interval_ms % radio.tick_ms != 0)
    throw std::invalid_argument("env: interaction interval must be a positive multiple of the tick");
  if (train_duration_ms <= 0 || train_duration_ms % interaction_interval_ms != 0)
    throw std::invalid_argument("env: train_duration must be a positive multiple of the interval");
  if (warmup_ms < 0 || warmup_ms % radio.tick_ms != 0)
    throw std::invalid_argument("env: warmup must be a non-negative multiple of the tick");
  if (oob_penalty_factor < 0) throw std::invalid_argument("env: negative oob penalty");
  if (initial_powers_tenths) {
    if (initial_powers_tenths->size() != kEnbCount)
      throw std::invalid_argument("env: initial powers need one entry per eNB");
    for (int p : *initial_powers_tenths)
      if (p < std::lround(radio.min_power_dbm * 10) || p > std::lround(radio.max_power_dbm * 10))
        throw std::invalid_argument("env: initial power out of bounds");
  }
}

ObservationShape EnvConfig::observation_shape() const {
  return {kEnbCount, history_len, rsrq_quantiles + 1};
}

double normalize_power(double dbm, const ransim::RadioConfig& radio) {
  return (dbm - radio.min_power_dbm) / (radio.max_power_dbm - radio.min_power_dbm);
}

double normalize_rsrq(double rsrq_db) { return std::clamp(rsrq_db / 20.0, -1.0, 0.0); }

std::vector<double> q_quantiles(std::vector<double> values, int q) {
  std::vector<double> out;
  if (q <= 1 || values.empty()) return out;
  std::sort(values.begin(), values.end());
  const double last = static_cast<double>(values.size() - 1);
  for (int k = 1; k < q; ++k) {
    const double pos = last * k / q;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    out.push_back(values[lo] + frac * (values[hi] - values[lo]));
  }
  return out;
}

RanEnv::RanEnv(EnvConfig config) : config_(std::move(config)) { config_.validate(); }

std::vector<double> RanEnv::powers_dbm() const {
  std::vector<double> out;
  for (int p : powers_tenths_) out.push_back(p / 10.0);
  return out;
}

Observation RanEnv::reset(std::uint64_t episode_seed) {
  std::mt19937_64 rng(episode_seed);
  const int lo = static_cast<int>(std::lround(config_.radio.min_power_dbm * 10));
  const int hi = static_cast<int>(std::lround(config_.radio.max_power_dbm * 10));
  if (config_.initial_powers_tenths) {
    powers_tenths_ = *config_.initial_powers_tenths;
  } else if (config_.randomize_init) {
    std::uniform_int_distribution<int> dist(lo, hi);
    powers_tenths_.assign(kEnbCount, 0);
    for (auto& p : powers_tenths_) p = dist(rng);
  } else {
    powers_tenths_.assign(kEnbCount, 300);
  }

  state_ = ransim::make_network(config_.scenario, powers_dbm(), config_.radio, config_.warmup_ms);
  if (config_.warmup_ms > 0) ransim::advance(*state_, config_.warmup_ms);

  baseline_score_ = scoring::total_score(*state_, state_->clock_ms, config_.score).value;
  last_score_ = baseline_score_;
  elapsed_ms_ = 0;
  done_ = false;
  history_.clear();
  history_.push_back(live_slice());
  return build_observation();
}

StepResult RanEnv::step(int action) {
  if (done_) throw EpisodeError("step() called on a finished episode; call reset()");
  if (action < 0 || action >= action_count())
    throw std::invalid_argument("step: action " + std::to_string(action) + " out of range");

  StepResult res;
  const ActionId a{action};
  bool oob = false;
  if (a.direction() != 0) {
    const int lo = static_cast<int>(std::lround(config_.radio.min_power_dbm * 10));
    const int hi = static_cast<int>(std::lround(config_.radio.max_power_dbm * 10));
    const int next = powers_tenths_[a.enb()] + a.direction() * config_.step_size_tenths;
    if (next < lo || next > hi) {
      oob = true;
    } else {
      powers_tenths_[a.enb()] = next;
      state_->enbs[a.enb()].tx_power_dbm = next / 10.0;
    }
  }
  res.info.oob = oob;

  if (oob && config_.oob_means_gameover) {
    res.reward = -config_.oob_penalty_factor;
    res.done = res.terminated = true;
    done_ = true;
    res.observation = build_observation();
    res.info.t_ms = elapsed_ms_;
    res.info.score = last_score_;
    res.info.powers_dbm = powers_dbm();
    return res;
  }

  for (auto& ev : ransim::advance(*state_, config_.interaction_interval_ms))
    if (ev.kind == ransim::EventKind::Handover) res.info.handovers.push_back(ev);
  elapsed_ms_ += config_.interaction_interval_ms;

  const auto snap = scoring::total_score(*state_, state_->clock_ms, config_.score);
  res.reward = snap.value - last_score_;
  if (oob) res.reward -= config_.oob_penalty_factor;
  last_score_ = snap.value;

  history_.push_back(live_slice());
  while (static_cast<int>(history_.size()) > config_.history_len) history_.pop_front();

  if (elapsed_ms_ >= config_.train_duration_ms) {
    res.done = res.truncated = true;
    done_ = true;
  }
  res.observation = build_observation();
  res.info.t_ms = elapsed_ms_;
  res.info.score = snap.value;
  res.info.score_truncated = snap.truncated;
  res.info.powers_dbm = powers_dbm();
  return res;
}

std::vector<double> RanEnv::live_slice() const {
  const auto shape = observation_shape();
  const auto& s = *state_;
  std::vector<std::vector<double>> rsrq(s.enb_count());
  for (int u = 0; u < s.ue_count(); ++u) {
    const int b = s.attachments[u];
    if (b >= 0) rsrq[b].push_back(ransim::measure(s, u)[b].rsrq_db);
  }
  const auto counts = s.attached_counts();
  std::vector<double> slice;
  slice.reserve(static_cast<std::size_t>(shape.enbs) * shape.features);
  for (int b = 0; b < shape.enbs; ++b) {
    slice.push_back(normalize_power(s.enbs[b].tx_power_dbm, config_.radio));
    slice.push_back(counts[b] / kUeCountScale);
    const auto qs = q_quantiles(rsrq[b], config_.rsrq_quantiles);
    for (int k = 0; k < config_.rsrq_quantiles - 1; ++k)
      slice.push_back(rsrq[b].empty() ? kEmptyCellRsrq : normalize_rsrq(qs[k]));
  }
  return slice;
}

Observation RanEnv::build_observation() const {
  Observation obs;
  obs.shape = observation_shape();
  const int n = obs.shape.enbs, hist = obs.shape.history, f = obs.shape.features;
  obs.values.assign(static_cast<std::size_t>(obs.shape.size()), 0.0);
  const int live = static_cast<int>(history_.size());
  for (int k = 0; k < std::min(live, hist); ++k) {
    const auto& slice = history_[live - 1 - k];
    const int t = hist - 1 - k;
    for (int b = 0; b < n; ++b)
      for (int j = 0; j < f; ++j)
        obs.values[(static_cast<std::size_t>(b) * hist + t) * f + j] = slice[b * f + j];
  }
  return obs;
}

ScenarioPoolEnv::ScenarioPoolEnv(std::vector<EnvConfig> configs) {
  if (configs.empty()) throw std::invalid_argument("ScenarioPoolEnv: no scenarios");
  for (auto& c : configs) envs_.emplace_back(std::move(c));
  for (const auto& e : envs_)
    if (!(e.observation_shape() == envs_.front().observation_shape()))
      throw std::invalid_argument("ScenarioPoolEnv: observation shapes differ");
}

ObservationShape ScenarioPoolEnv::observation_shape() const {
  return envs_.front().observation_shape();
}

int ScenarioPoolEnv::action_count() const { return envs_.front().action_count(); }

Observation ScenarioPoolEnv::reset(std::uint64_t episode_seed) {
  std::mt19937_64 rng(episode_seed);
  active_ = static_cast<std::size_t>(rng() % envs_.size());
  return envs_[active_].reset(rng());
}

StepResult ScenarioPoolEnv::step(int action) { return envs_[active_].step(action); }

}  // namespace ranbench::envproto
