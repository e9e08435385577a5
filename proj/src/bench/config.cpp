#include "ranbench/bench/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "ranbench/rlagent/checkpoint.hpp"

namespace ranbench::bench {

using nlohmann::json;

namespace {

// Rejects keys outside `allowed` so typos in config files do not pass
// silently.
void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& section) {
  if (!j.is_object()) throw std::invalid_argument("config section '" + section + "' must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k))
      throw std::invalid_argument("unknown key '" + k + "' in config section '" + section + "'");
}

template <class T>
void get(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

json radio_to_json(const ransim::RadioConfig& r) {
  return {{"enb_inter_distance_m", r.enb_inter_distance_m},
          {"bandwidth_hz", r.bandwidth_hz},
          {"beamwidth_deg", r.beamwidth_deg},
          {"max_attenuation_db", r.max_attenuation_db},
          {"thermal_noise_dbm_hz", r.thermal_noise_dbm_hz},
          {"noise_figure_db", r.noise_figure_db},
          {"a2_threshold_db", r.a2_threshold_db},
          {"a4_offset_db", r.a4_offset_db},
          {"time_to_trigger_ms", r.time_to_trigger_ms},
          {"se_cap", r.se_cap},
          {"cbr_rate_bps", r.cbr_rate_bps},
          {"tick_ms", r.tick_ms},
          {"history_retention_ms", r.history_retention_ms},
          {"min_power_dbm", r.min_power_dbm},
          {"max_power_dbm", r.max_power_dbm}};
}

ransim::RadioConfig radio_from_json(const json& j) {
  ransim::RadioConfig r;
  std::set<std::string> keys;
  const json defaults = radio_to_json(r);
  for (const auto& [k, v] : defaults.items()) keys.insert(k);
  check_keys(j, keys, "radio");
  get(j, "enb_inter_distance_m", r.enb_inter_distance_m);
  get(j, "bandwidth_hz", r.bandwidth_hz);
  get(j, "beamwidth_deg", r.beamwidth_deg);
  get(j, "max_attenuation_db", r.max_attenuation_db);
  get(j, "thermal_noise_dbm_hz", r.thermal_noise_dbm_hz);
  get(j, "noise_figure_db", r.noise_figure_db);
  get(j, "a2_threshold_db", r.a2_threshold_db);
  get(j, "a4_offset_db", r.a4_offset_db);
  get(j, "time_to_trigger_ms", r.time_to_trigger_ms);
  get(j, "se_cap", r.se_cap);
  get(j, "cbr_rate_bps", r.cbr_rate_bps);
  get(j, "tick_ms", r.tick_ms);
  get(j, "history_retention_ms", r.history_retention_ms);
  get(j, "min_power_dbm", r.min_power_dbm);
  get(j, "max_power_dbm", r.max_power_dbm);
  return r;
}

json env_to_json(const envproto::EnvConfig& e) {
  return {{"history", e.history_len},
          {"num_rsrq_quantiles", e.rsrq_quantiles},
          {"step_size", e.step_size_tenths},
          {"randomize", e.randomize_init},
          {"train_duration", e.train_duration_ms},
          {"oob_means_gameover", e.oob_means_gameover},
          {"oob_penalty_factor", e.oob_penalty_factor},
          {"interaction_interval_ms", e.interaction_interval_ms},
          {"warmup_ms", e.warmup_ms}};
}

void env_from_json(const json& j, envproto::EnvConfig& e) {
  std::set<std::string> keys;
  const json defaults = env_to_json(e);
  for (const auto& [k, v] : defaults.items()) keys.insert(k);
  check_keys(j, keys, "env");
  get(j, "history", e.history_len);
  get(j, "num_rsrq_quantiles", e.rsrq_quantiles);
  get(j, "step_size", e.step_size_tenths);
  get(j, "randomize", e.randomize_init);
  get(j, "train_duration", e.train_duration_ms);
  get(j, "oob_means_gameover", e.oob_means_gameover);
  get(j, "oob_penalty_factor", e.oob_penalty_factor);
  get(j, "interaction_interval_ms", e.interaction_interval_ms);
  get(j, "warmup_ms", e.warmup_ms);
}

}  // namespace

json hyperparams_to_json(const rlagent::HyperParams& hp) {
  return {{"algo", rlagent::to_string(hp.algo)},
          {"ent_coef", hp.ent_coef},
          {"gae_lambda", hp.gae_lambda},
          {"gamma", hp.gamma},
          {"learning_rate", hp.learning_rate},
          {"max_grad_norm", hp.max_grad_norm},
          {"n_steps", hp.n_steps},
          {"vf_coef", hp.vf_coef},
          {"n_envs", hp.n_envs},
          {"normalize_advantage", hp.normalize_advantage},
          {"use_rms_prop", hp.use_rms_prop},
          {"clip_range", hp.clip_range},
          {"batch_size", hp.batch_size},
          {"n_epochs", hp.n_epochs}};
}

rlagent::HyperParams hyperparams_from_json(const json& j, rlagent::HyperParams hp) {
  std::set<std::string> keys;
  const json defaults = hyperparams_to_json(hp);
  for (const auto& [k, v] : defaults.items()) keys.insert(k);
  check_keys(j, keys, "rl");
  if (j.contains("algo")) hp.algo = rlagent::parse_algo(j.at("algo").get<std::string>());
  get(j, "ent_coef", hp.ent_coef);
  get(j, "gae_lambda", hp.gae_lambda);
  get(j, "gamma", hp.gamma);
  get(j, "learning_rate", hp.learning_rate);
  get(j, "max_grad_norm", hp.max_grad_norm);
  get(j, "n_steps", hp.n_steps);
  get(j, "vf_coef", hp.vf_coef);
  get(j, "n_envs", hp.n_envs);
  get(j, "normalize_advantage", hp.normalize_advantage);
  get(j, "use_rms_prop", hp.use_rms_prop);
  get(j, "clip_range", hp.clip_range);
  get(j, "batch_size", hp.batch_size);
  get(j, "n_epochs", hp.n_epochs);
  return hp;
}

void BenchConfig::validate() const {
  radio.validate();
  score.validate();
  tpe.validate();
  hp.validate();
  arch.validate();
  if (num_ues < 1) throw std::invalid_argument("num_ues must be >= 1");
  if (offline_trials < 1) throw std::invalid_argument("offline_trials must be >= 1");
  if (train_timesteps < hp.rollout_size())
    throw std::invalid_argument("train_timesteps must be >= n_steps * n_envs");
  if (eval_trials < 1) throw std::invalid_argument("eval_trials must be >= 1");
  if (!(eval_duration_s > 0)) throw std::invalid_argument("eval_duration_s must be positive");
}

envproto::EnvConfig BenchConfig::env_for(const ransim::ScenarioSpec& scenario) const {
  envproto::EnvConfig e = env;
  e.radio = radio;
  e.score = score;
  e.scenario = scenario;
  return e;
}

json config_to_json(const BenchConfig& c) {
  return {{"radio", radio_to_json(c.radio)},
          {"score",
           {{"alpha", c.score.alpha},
            {"window_ms", c.score.window_ms},
            {"reference_bytes", c.score.reference_bytes}}},
          {"env", env_to_json(c.env)},
          {"tpe",
           {{"n_startup", c.tpe.n_startup},
            {"n_candidates", c.tpe.n_candidates},
            {"min_bandwidth_fraction", c.tpe.min_bandwidth_fraction},
            {"adaptive_bandwidth_floor", c.tpe.adaptive_bandwidth_floor},
            {"multivariate", c.tpe.multivariate}}},
          {"rl", hyperparams_to_json(c.hp)},
          {"arch", rlagent::arch_to_json(c.arch)},
          {"bench",
           {{"num_ues", c.num_ues},
            {"offline_trials", c.offline_trials},
            {"train_timesteps", c.train_timesteps},
            {"eval_trials", c.eval_trials},
            {"eval_duration_s", c.eval_duration_s}}}};
}

BenchConfig config_from_json(const json& j) {
  BenchConfig c;
  check_keys(j, {"radio", "score", "env", "tpe", "rl", "arch", "bench"}, "top level");
  if (j.contains("radio")) c.radio = radio_from_json(j.at("radio"));
  if (j.contains("score")) {
    const auto& s = j.at("score");
    check_keys(s, {"alpha", "window_ms", "reference_bytes"}, "score");
    get(s, "alpha", c.score.alpha);
    get(s, "window_ms", c.score.window_ms);
    get(s, "reference_bytes", c.score.reference_bytes);
  }
  if (j.contains("env")) env_from_json(j.at("env"), c.env);
  if (j.contains("tpe")) {
    const auto& t = j.at("tpe");
    check_keys(t, {"n_startup", "n_candidates", "min_bandwidth_fraction", "adaptive_bandwidth_floor",
                   "multivariate"},
               "tpe");
    get(t, "n_startup", c.tpe.n_startup);
    get(t, "n_candidates", c.tpe.n_candidates);
    get(t, "min_bandwidth_fraction", c.tpe.min_bandwidth_fraction);
    get(t, "adaptive_bandwidth_floor", c.tpe.adaptive_bandwidth_floor);
    get(t, "multivariate", c.tpe.multivariate);
  }
  if (j.contains("rl")) c.hp = hyperparams_from_json(j.at("rl"));
  if (j.contains("arch")) {
    json merged = rlagent::arch_to_json(c.arch);
    check_keys(j.at("arch"), {"feature_depth", "head_depth", "width", "activation",
                              "enb_shared_first_layer", "orthogonal_init"},
               "arch");
    merged.update(j.at("arch"));
    c.arch = rlagent::arch_from_json(merged);
  }
  if (j.contains("bench")) {
    const auto& b = j.at("bench");
    check_keys(b, {"num_ues", "offline_trials", "train_timesteps", "eval_trials", "eval_duration_s"},
               "bench");
    get(b, "num_ues", c.num_ues);
    get(b, "offline_trials", c.offline_trials);
    get(b, "train_timesteps", c.train_timesteps);
    get(b, "eval_trials", c.eval_trials);
    get(b, "eval_duration_s", c.eval_duration_s);
  }
  c.validate();
  return c;
}

BenchConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

}  // namespace ranbench::bench
