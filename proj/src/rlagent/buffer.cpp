#include "ranbench/rlagent/buffer.hpp"

#include <stdexcept>

#include "ranbench/rlagent/gae.hpp"

namespace ranbench::rlagent {

RolloutBuffer::RolloutBuffer(int n_steps, int n_envs, int obs_dim)
    : n_steps_(n_steps), n_envs_(n_envs) {
  if (n_steps < 1 || n_envs < 1 || obs_dim < 1)
    throw std::invalid_argument("RolloutBuffer: sizes must be positive");
  const int n = n_steps * n_envs;
  obs_ = Matrix::Zero(obs_dim, n);
  actions_.assign(n, 0);
  log_probs_ = values_ = rewards_ = advantages_ = returns_ = Vector::Zero(n);
  dones_.assign(n, 0);
}

void RolloutBuffer::add(int step, int env, const Eigen::Ref<const Vector>& obs, int action,
                        double log_prob, double value, double reward, bool done) {
  if (step < 0 || step >= n_steps_ || env < 0 || env >= n_envs_)
    throw std::out_of_range("RolloutBuffer::add: slot out of range");
  const int i = index(step, env);
  obs_.col(i) = obs;
  actions_[i] = action;
  log_probs_[i] = log_prob;
  values_[i] = value;
  rewards_[i] = reward;
  dones_[i] = done ? 1 : 0;
}

void RolloutBuffer::compute_returns_and_advantages(const Vector& last_values, double gamma,
                                                   double lambda) {
  if (last_values.size() != n_envs_) throw std::invalid_argument("need one last value per env");
  for (int e = 0; e < n_envs_; ++e) {
    std::vector<double> r(n_steps_), v(n_steps_);
    std::vector<bool> d(n_steps_);
    for (int s = 0; s < n_steps_; ++s) {
      r[s] = rewards_[index(s, e)];
      v[s] = values_[index(s, e)];
      d[s] = dones_[index(s, e)] != 0;
    }
    const GaeResult g = compute_gae(r, v, d, last_values[e], gamma, lambda);
    for (int s = 0; s < n_steps_; ++s) {
      advantages_[index(s, e)] = g.advantages[s];
      returns_[index(s, e)] = g.returns[s];
    }
  }
}

Batch RolloutBuffer::gather(const std::vector<int>& indices) const {
  const auto b = static_cast<Eigen::Index>(indices.size());
  Batch out;
  out.obs.resize(obs_.rows(), b);
  out.actions.resize(indices.size());
  out.old_log_probs.resize(b);
  out.old_values.resize(b);
  out.advantages.resize(b);
  out.returns.resize(b);
  for (Eigen::Index k = 0; k < b; ++k) {
    const int i = indices[static_cast<std::size_t>(k)];
    out.obs.col(k) = obs_.col(i);
    out.actions[static_cast<std::size_t>(k)] = actions_[static_cast<std::size_t>(i)];
    out.old_log_probs[k] = log_probs_[i];
    out.old_values[k] = values_[i];
    out.advantages[k] = advantages_[i];
    out.returns[k] = returns_[i];
  }
  return out;
}

Batch RolloutBuffer::all() const {
  std::vector<int> idx(static_cast<std::size_t>(size()));
  for (int i = 0; i < size(); ++i) idx[static_cast<std::size_t>(i)] = i;
  return gather(idx);
}

}  // namespace ranbench::rlagent
