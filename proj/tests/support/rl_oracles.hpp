// Reference helpers shared by the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ranbench/envproto/env.hpp"
#include "ranbench/rlagent/buffer.hpp"
#include "ranbench/rlagent/losses.hpp"
#include "ranbench/rlagent/policy.hpp"

namespace ranbench::testing {

/// One constant state, seven actions; only `good_action` pays 1. Every step
/// ends the episode.
class BanditEnv : public envproto::Environment {
 public:
  explicit BanditEnv(int good_action = 2) : good_(good_action) {}

  envproto::ObservationShape observation_shape() const override { return {1, 1, 1}; }
  int action_count() const override { return 7; }
  envproto::Observation reset(std::uint64_t) override { return obs(); }
  envproto::StepResult step(int action) override {
    envproto::StepResult r;
    r.observation = obs();
    r.reward = action == good_ ? 1.0 : 0.0;
    r.done = r.terminated = true;
    return r;
  }

 private:
  static envproto::Observation obs() { return {{1, 1, 1}, {1.0}}; }
  int good_;
};

/// Advantages as the explicit sum over (gamma lambda)^k delta_{t+k},
/// each term rebuilt from scratch.
inline std::vector<double> brute_force_gae(const std::vector<double>& r, const std::vector<double>& v,
                                           const std::vector<bool>& dones, double last_value,
                                           double gamma, double lambda) {
  const std::size_t n = r.size();
  auto next_value = [&](std::size_t t) { return t + 1 < n ? v[t + 1] : last_value; };
  std::vector<double> adv(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double weight = 1.0;
    for (std::size_t k = t; k < n; ++k) {
      const double nonterminal = dones[k] ? 0.0 : 1.0;
      const double delta = r[k] + gamma * next_value(k) * nonterminal - v[k];
      adv[t] += weight * delta;
      if (dones[k]) break;
      weight *= gamma * lambda;
    }
  }
  return adv;
}

struct GradCheckCase {
  rlagent::ActorCritic net;
  rlagent::Batch batch;
  rlagent::LossCoefs coefs;
  double clip_range;
};

/// Width-8 network with a random batch whose old log-probs sit near the
/// current policy, so ratios land on both sides of the clip range.
inline GradCheckCase make_grad_case(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  rlagent::PolicyArch arch;
  arch.width = 8;
  arch.activation = (seed % 2 == 0) ? rlagent::Activation::Tanh : rlagent::Activation::Relu;
  arch.head_depth = 1 + static_cast<int>(seed % 3 == 0);
  arch.feature_depth = static_cast<int>(seed % 4 == 1);
  arch.enb_shared_first_layer = seed % 5 < 2;
  arch.orthogonal_init = seed % 7 == 3;
  const envproto::ObservationShape shape{3, 2, 2};
  rlagent::ActorCritic net(shape, 7, arch, seed + 11);
  for (Eigen::Index i = 0; i < net.params().size(); ++i) net.params()[i] += 0.3 * u(rng);

  const int B = 12;
  rlagent::Batch b;
  b.obs = rlagent::Matrix(shape.size(), B);
  for (Eigen::Index i = 0; i < b.obs.size(); ++i) b.obs.data()[i] = u(rng);
  const auto logp = rlagent::log_softmax(net.forward(b.obs).logits);
  b.old_log_probs = rlagent::Vector(B);
  b.old_values = rlagent::Vector(B);
  b.advantages = rlagent::Vector(B);
  b.returns = rlagent::Vector(B);
  for (int j = 0; j < B; ++j) {
    const int a = static_cast<int>(rng() % 7);
    b.actions.push_back(a);
    b.old_log_probs[j] = logp(a, j) + 0.4 * u(rng);
    b.old_values[j] = u(rng);
    b.advantages[j] = 2.0 * u(rng);
    b.returns[j] = 2.0 * u(rng);
  }
  rlagent::LossCoefs c;
  c.ent_coef = 0.05 * (1.0 + u(rng));
  c.vf_coef = 0.25 + 0.25 * (1.0 + u(rng));
  c.normalize_advantage = seed % 3 != 2;
  return {std::move(net), std::move(b), c, 0.1 + 0.1 * (1.0 + u(rng))};
}

/// Largest |analytic - central difference| / max(|analytic|, |numeric|, floor)
/// over every parameter.
inline double max_relative_error(GradCheckCase& g, bool ppo, double h = 1e-5, double floor = 1e-6) {
  auto loss = [&](const rlagent::ActorCritic& net) {
    return ppo ? rlagent::ppo_loss(net, g.batch, g.clip_range, g.coefs)
               : rlagent::a2c_loss(net, g.batch, g.coefs);
  };
  const rlagent::Vector analytic = loss(g.net).grad;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.net.params().size(); ++i) {
    const double x0 = g.net.params()[i];
    g.net.params()[i] = x0 + h;
    const double fp = loss(g.net).stats.total;
    g.net.params()[i] = x0 - h;
    const double fm = loss(g.net).stats.total;
    g.net.params()[i] = x0;
    const double numeric = (fp - fm) / (2.0 * h);
    const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), floor});
    worst = std::max(worst, std::abs(analytic[i] - numeric) / denom);
  }
  return worst;
}

}  // namespace ranbench::testing
