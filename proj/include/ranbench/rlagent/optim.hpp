#pragma once

#include <memory>

#include "ranbench/rlagent/policy.hpp"

namespace ranbench::rlagent {

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  /// params -= update(grad)
  virtual void step(Vector& params, const Vector& grad) = 0;
};

class Adam : public Optimizer {
 public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);
  void step(Vector& params, const Vector& grad) override;

 private:
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  Vector m_, v_;
};

class RmsProp : public Optimizer {
 public:
  explicit RmsProp(double lr, double alpha = 0.99, double eps = 1e-5);
  void step(Vector& params, const Vector& grad) override;

 private:
  double lr_, alpha_, eps_;
  Vector sq_;
};

/// Scales grad so its L2 norm is at most max_norm; returns the norm before
/// clipping.
double clip_grad_norm(Vector& grad, double max_norm);

}  // namespace ranbench::rlagent
