#pragma once

#include <vector>

#include "ranbench/rlagent/policy.hpp"

namespace ranbench::rlagent {

/// Minibatch view handed to the loss functions.
struct Batch {
  Matrix obs;  // obs_dim x B
  std::vector<int> actions;
  Vector old_log_probs;
  Vector old_values;
  Vector advantages;
  Vector returns;

  Eigen::Index size() const { return obs.cols(); }
};

/// Fixed-size on-policy storage for n_steps x n_envs transitions.
/// Flat index is env * n_steps + step.
class RolloutBuffer {
 public:
  RolloutBuffer(int n_steps, int n_envs, int obs_dim);

  void add(int step, int env, const Eigen::Ref<const Vector>& obs, int action, double log_prob,
           double value, double reward, bool done);

  void compute_returns_and_advantages(const Vector& last_values, double gamma, double lambda);

  Batch gather(const std::vector<int>& indices) const;
  Batch all() const;

  int size() const { return n_steps_ * n_envs_; }
  int n_steps() const { return n_steps_; }
  int n_envs() const { return n_envs_; }
  const Vector& rewards() const { return rewards_; }
  const Vector& advantages() const { return advantages_; }
  const Vector& returns() const { return returns_; }
  const Vector& values() const { return values_; }
  const std::vector<char>& dones() const { return dones_; }

 private:
  int index(int step, int env) const { return env * n_steps_ + step; }

  int n_steps_, n_envs_;
  Matrix obs_;
  std::vector<int> actions_;
  Vector log_probs_, values_, rewards_, advantages_, returns_;
  std::vector<char> dones_;
};

}  // namespace ranbench::rlagent
