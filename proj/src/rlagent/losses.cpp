#include "ranbench/rlagent/losses.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace ranbench::rlagent {

Vector normalize_advantages(const Vector& adv) {
  const Eigen::Index n = adv.size();
  if (n < 2) return adv;
  const double mean = adv.mean();
  const double var = (adv.array() - mean).square().sum() / static_cast<double>(n - 1);
  return ((adv.array() - mean) / (std::sqrt(var) + 1e-8)).matrix();
}

namespace {

// Shared body; clip_range empty selects the unclipped A2C objective.
LossGrad policy_value_loss(const ActorCritic& net, const Batch& batch,
                           std::optional<double> clip_range, const LossCoefs& c) {
  const Eigen::Index B = batch.size();
  if (B == 0) throw std::invalid_argument("empty batch");
  if (static_cast<Eigen::Index>(batch.actions.size()) != B)
    throw std::invalid_argument("batch action count mismatch");

  ActorCritic::Tape tape;
  const auto out = net.forward(batch.obs, tape);
  const Matrix logp = log_softmax(out.logits);
  const Matrix pi = logp.array().exp().matrix();
  const Vector adv = c.normalize_advantage ? normalize_advantages(batch.advantages)
                                           : batch.advantages;
  const double inv_b = 1.0 / static_cast<double>(B);

  LossGrad res;
  Matrix dlogits = Matrix::Zero(out.logits.rows(), B);
  double pg = 0.0, ent = 0.0, kl = 0.0, clipped = 0.0;
  for (Eigen::Index j = 0; j < B; ++j) {
    const int a = batch.actions[static_cast<std::size_t>(j)];
    if (a < 0 || a >= out.logits.rows()) throw std::out_of_range("batch action out of range");
    const double lp = logp(a, j);
    double dlp = 0.0;  // d(policy loss term)/d logp_a, before 1/B
    if (clip_range) {
      const double ratio = std::exp(lp - batch.old_log_probs[j]);
      const double eps = *clip_range;
      const double rc = std::clamp(ratio, 1.0 - eps, 1.0 + eps);
      const double s1 = adv[j] * ratio, s2 = adv[j] * rc;
      pg -= std::min(s1, s2);
      if (s1 <= s2) dlp = -adv[j] * ratio;
      const double log_ratio = lp - batch.old_log_probs[j];
      kl += (ratio - 1.0) - log_ratio;
      if (std::abs(ratio - 1.0) > eps) clipped += 1.0;
    } else {
      pg -= adv[j] * lp;
      dlp = -adv[j];
    }
    const double h = -(pi.col(j).array() * logp.col(j).array()).sum();
    ent += h;
    // d logp_a / d logits = onehot(a) - pi; d H / d logits = -pi (logp + H)
    dlogits.col(j) = -dlp * pi.col(j);
    dlogits(a, j) += dlp;
    dlogits.col(j).array() +=
        c.ent_coef * pi.col(j).array() * (logp.col(j).array() + h);
  }
  dlogits *= inv_b;

  const Vector err = out.values - batch.returns;
  const double vloss = err.squaredNorm() * inv_b;
  const Vector dvalues = (c.vf_coef * 2.0 * inv_b) * err;

  res.stats.policy = pg * inv_b;
  res.stats.value = vloss;
  res.stats.entropy = ent * inv_b;
  res.stats.total = res.stats.policy - c.ent_coef * res.stats.entropy + c.vf_coef * vloss;
  res.stats.approx_kl = kl * inv_b;
  res.stats.clip_fraction = clipped * inv_b;
  res.grad = Vector::Zero(net.params().size());
  net.backward(tape, dlogits, dvalues, res.grad);
  return res;
}

}  // namespace

LossGrad ppo_loss(const ActorCritic& net, const Batch& batch, double clip_range,
                  const LossCoefs& coefs) {
  if (!(clip_range > 0)) throw std::invalid_argument("clip_range must be positive");
  return policy_value_loss(net, batch, clip_range, coefs);
}

LossGrad a2c_loss(const ActorCritic& net, const Batch& batch, const LossCoefs& coefs) {
  return policy_value_loss(net, batch, std::nullopt, coefs);
}

}  // namespace ranbench::rlagent
