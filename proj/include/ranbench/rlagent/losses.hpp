#pragma once

#include "ranbench/rlagent/buffer.hpp"
#include "ranbench/rlagent/policy.hpp"

namespace ranbench::rlagent {

struct LossStats {
  double total = 0.0;
  double policy = 0.0;
  double value = 0.0;
  double entropy = 0.0;  // mean entropy (not the loss term)
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
};

struct LossGrad {
  LossStats stats;
  Vector grad;
};

struct LossCoefs {
  double ent_coef = 0.0;
  double vf_coef = 0.5;
  bool normalize_advantage = true;
};

/// (A - mean) / (std + 1e-8) with the unbiased std. Unchanged if size < 2.
Vector normalize_advantages(const Vector& adv);

/// Clipped surrogate + value MSE - entropy bonus, and its gradient.
LossGrad ppo_loss(const ActorCritic& net, const Batch& batch, double clip_range,
                  const LossCoefs& coefs);

/// Vanilla policy gradient + value MSE - entropy bonus, and its gradient.
LossGrad a2c_loss(const ActorCritic& net, const Batch& batch, const LossCoefs& coefs);

}  // namespace ranbench::rlagent
