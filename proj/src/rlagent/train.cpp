#include "ranbench/rlagent/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ranbench/format.hpp"
#include "ranbench/rlagent/checkpoint.hpp"
#include "ranbench/seed.hpp"

namespace ranbench::rlagent {

Algo parse_algo(const std::string& s) {
  if (s == "PPO" || s == "ppo") return Algo::PPO;
  if (s == "A2C" || s == "a2c") return Algo::A2C;
  throw std::invalid_argument("unknown algo '" + s + "'");
}

std::string to_string(Algo a) { return a == Algo::PPO ? "PPO" : "A2C"; }

void HyperParams::validate() const {
  if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("gamma must be in (0,1]");
  if (!(gae_lambda >= 0 && gae_lambda <= 1))
    throw std::invalid_argument("gae_lambda must be in [0,1]");
  if (!(learning_rate > 0)) throw std::invalid_argument("learning_rate must be positive");
  if (!(max_grad_norm > 0)) throw std::invalid_argument("max_grad_norm must be positive");
  if (n_steps < 1 || n_envs < 1) throw std::invalid_argument("n_steps and n_envs must be >= 1");
  if (!(ent_coef >= 0) || !(vf_coef >= 0))
    throw std::invalid_argument("loss coefficients must be non-negative");
  if (algo == Algo::PPO) {
    if (!(clip_range > 0)) throw std::invalid_argument("clip_range must be positive");
    if (batch_size < 1 || batch_size > rollout_size())
      throw std::invalid_argument("batch_size must be in [1, n_steps*n_envs]");
    if (n_epochs < 1) throw std::invalid_argument("n_epochs must be >= 1");
  }
}

std::unique_ptr<Optimizer> make_optimizer(const HyperParams& hp) {
  if (hp.algo == Algo::A2C && hp.use_rms_prop) return std::make_unique<RmsProp>(hp.learning_rate);
  return std::make_unique<Adam>(hp.learning_rate);
}

namespace {

void check_finite(const LossGrad& g) {
  if (!std::isfinite(g.stats.total) || !g.grad.allFinite())
    throw std::runtime_error("non-finite loss or gradient during update");
}

int sample_categorical(const Eigen::Ref<const Vector>& logp, std::mt19937_64& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < logp.size(); ++k) {
    acc += std::exp(logp[k]);
    if (u < acc) return static_cast<int>(k);
  }
  return static_cast<int>(logp.size() - 1);
}

}  // namespace

UpdateStats update_policy(ActorCritic& net, const RolloutBuffer& buf, const HyperParams& hp,
                          Optimizer& opt, std::mt19937_64& rng) {
  UpdateStats st;
  LossCoefs c;
  c.ent_coef = hp.ent_coef;
  c.vf_coef = hp.vf_coef;
  if (hp.algo == Algo::A2C) {
    c.normalize_advantage = hp.normalize_advantage;
    LossGrad g = a2c_loss(net, buf.all(), c);
    check_finite(g);
    st.grad_norm = clip_grad_norm(g.grad, hp.max_grad_norm);
    opt.step(net.params(), g.grad);
    st.loss = g.stats;
    return st;
  }
  c.normalize_advantage = true;
  const int n = buf.size();
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int epoch = 0; epoch < hp.n_epochs; ++epoch) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int start = 0; start + hp.batch_size <= n; start += hp.batch_size) {
      const std::vector<int> idx(perm.begin() + start, perm.begin() + start + hp.batch_size);
      LossGrad g = ppo_loss(net, buf.gather(idx), hp.clip_range, c);
      check_finite(g);
      st.grad_norm = clip_grad_norm(g.grad, hp.max_grad_norm);
      opt.step(net.params(), g.grad);
      st.loss = g.stats;
    }
  }
  return st;
}

TrainResult train(const EnvFactory& make_env, const HyperParams& hp, const PolicyArch& arch,
                  long total_timesteps, std::uint64_t seed, const TrainOptions& opts) {
  hp.validate();
  if (total_timesteps < hp.rollout_size())
    throw std::invalid_argument("total_timesteps must be >= n_steps * n_envs");

  std::vector<std::unique_ptr<envproto::Environment>> envs;
  for (int e = 0; e < hp.n_envs; ++e) envs.push_back(make_env(e));
  const auto shape = envs.front()->observation_shape();
  const int n_actions = envs.front()->action_count();
  for (const auto& env : envs)
    if (env->observation_shape() != shape || env->action_count() != n_actions)
      throw std::invalid_argument("environments disagree on observation/action spaces");

  TrainResult res{ActorCritic(shape, n_actions, arch, derive_seed(seed, {1})), {}};
  ActorCritic& net = res.policy;
  auto opt = make_optimizer(hp);
  std::mt19937_64 action_rng(derive_seed(seed, {2}));
  std::mt19937_64 shuffle_rng(derive_seed(seed, {3}));

  std::vector<std::uint64_t> episode_index(static_cast<std::size_t>(hp.n_envs), 0);
  auto next_episode_seed = [&](int e) {
    return derive_seed(seed, {4, static_cast<std::uint64_t>(e), episode_index[e]++});
  };
  std::vector<envproto::Observation> current;
  for (int e = 0; e < hp.n_envs; ++e) current.push_back(envs[e]->reset(next_episode_seed(e)));
  std::vector<double> episode_return(static_cast<std::size_t>(hp.n_envs), 0.0);

  RolloutBuffer buf(hp.n_steps, hp.n_envs, static_cast<int>(shape.size()));
  const long updates = total_timesteps / hp.rollout_size();
  long timesteps = 0;
  for (long u = 0; u < updates; ++u) {
    int finished = 0;
    double sum_return = 0.0, sum_score = 0.0;
    for (int s = 0; s < hp.n_steps; ++s) {
      std::vector<const envproto::Observation*> ptrs;
      for (const auto& o : current) ptrs.push_back(&o);
      const Matrix x = stack_observations(ptrs);
      const auto out = net.forward(x);
      const Matrix logp = log_softmax(out.logits);
      for (int e = 0; e < hp.n_envs; ++e) {
        const int a = sample_categorical(logp.col(e), action_rng);
        envproto::StepResult r = envs[e]->step(a);
        double reward = r.reward;
        if (r.truncated && !r.terminated)
          reward += hp.gamma * net.forward(to_column(r.observation)).values[0];
        buf.add(s, e, x.col(e), a, logp(a, e), out.values[e], reward, r.done);
        episode_return[e] += r.reward;
        if (r.done) {
          ++finished;
          sum_return += episode_return[e];
          sum_score += r.info.score;
          episode_return[e] = 0.0;
          current[e] = envs[e]->reset(next_episode_seed(e));
        } else {
          current[e] = std::move(r.observation);
        }
      }
    }
    timesteps += hp.rollout_size();
    std::vector<const envproto::Observation*> ptrs;
    for (const auto& o : current) ptrs.push_back(&o);
    buf.compute_returns_and_advantages(net.forward(stack_observations(ptrs)).values, hp.gamma,
                                       hp.gae_lambda);
    const UpdateStats st = update_policy(net, buf, hp, *opt, shuffle_rng);

    CurvePoint p;
    p.update = static_cast<int>(u);
    p.timesteps = timesteps;
    p.episodes = finished;
    p.mean_return = finished > 0 ? sum_return / finished : std::nan("");
    p.mean_final_score = finished > 0 ? sum_score / finished : std::nan("");
    p.loss = st.loss;
    p.grad_norm = st.grad_norm;
    res.curve.push_back(p);
    if (opts.on_update) opts.on_update(p);
    if (!opts.checkpoint_path.empty() && opts.checkpoint_every > 0 &&
        (u + 1) % opts.checkpoint_every == 0)
      save_checkpoint(opts.checkpoint_path, net);
  }
  if (!opts.checkpoint_path.empty()) save_checkpoint(opts.checkpoint_path, net);
  return res;
}

void write_curve(const std::vector<CurvePoint>& curve, std::ostream& out) {
  out << "update\ttimesteps\tepisodes\tmean_return\tmean_final_score\tloss\tpolicy_loss\t"
         "value_loss\tentropy\tapprox_kl\tclip_fraction\tgrad_norm\n";
  for (const auto& p : curve) {
    out << p.update << '\t' << p.timesteps << '\t' << p.episodes << '\t'
        << format_real(p.mean_return) << '\t' << format_real(p.mean_final_score) << '\t'
        << format_real(p.loss.total) << '\t' << format_real(p.loss.policy) << '\t'
        << format_real(p.loss.value) << '\t' << format_real(p.loss.entropy) << '\t'
        << format_real(p.loss.approx_kl) << '\t' << format_real(p.loss.clip_fraction) << '\t'
        << format_real(p.grad_norm) << '\n';
  }
}

int greedy_action(const ActorCritic& net, const envproto::Observation& obs) {
  const auto out = net.forward(to_column(obs));
  Eigen::Index best = 0;
  out.logits.col(0).maxCoeff(&best);
  return static_cast<int>(best);
}

std::vector<EvalTrial> evaluate(const ActorCritic& net, const envproto::EnvConfig& base,
                                int n_trials, double duration_s, std::uint64_t seed,
                                const std::function<void(const EvalTrial&)>& sink) {
  if (n_trials < 0) throw std::invalid_argument("evaluate: negative trial count");
  envproto::EnvConfig cfg = base;
  cfg.randomize_init = true;
  cfg.initial_powers_tenths.reset();
  cfg.oob_means_gameover = false;
  cfg.train_duration_ms = static_cast<int>(std::lround(duration_s * 1000.0));
  envproto::RanEnv env(cfg);
  if (env.observation_shape() != net.observation_shape() ||
      env.action_count() != net.action_count())
    throw std::invalid_argument("evaluate: policy does not match environment");

  std::vector<EvalTrial> out;
  for (int i = 0; i < n_trials; ++i) {
    EvalTrial t;
    t.seed = derive_seed(seed, {static_cast<std::uint64_t>(i)});
    envproto::Observation obs = env.reset(t.seed);
    t.initial_powers_dbm = env.powers_dbm();
    t.initial_score = env.current_score();
    t.final_score = t.initial_score;
    bool done = false;
    while (!done) {
      envproto::StepResult r = env.step(greedy_action(net, obs));
      t.trajectory.push_back({r.info.t_ms, r.info.powers_dbm, r.info.score});
      t.final_score = r.info.score;
      done = r.done;
      obs = std::move(r.observation);
    }
    if (sink) sink(t);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace ranbench::rlagent
