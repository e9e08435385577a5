#include "ranbench/rlagent/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace ranbench::rlagent {

Adam::Adam(double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
  if (!(lr > 0)) throw std::invalid_argument("Adam: learning rate must be positive");
}

void Adam::step(Vector& params, const Vector& grad) {
  if (m_.size() != params.size()) {
    m_ = Vector::Zero(params.size());
    v_ = Vector::Zero(params.size());
    t_ = 0;
  }
  ++t_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseProduct(grad);
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  params.array() -=
      lr_ * (m_.array() / bc1) / ((v_.array() / bc2).sqrt() + eps_);
}

RmsProp::RmsProp(double lr, double alpha, double eps) : lr_(lr), alpha_(alpha), eps_(eps) {
  if (!(lr > 0)) throw std::invalid_argument("RmsProp: learning rate must be positive");
}

void RmsProp::step(Vector& params, const Vector& grad) {
  if (sq_.size() != params.size()) sq_ = Vector::Zero(params.size());
  sq_ = alpha_ * sq_ + (1.0 - alpha_) * grad.cwiseProduct(grad);
  params.array() -= lr_ * grad.array() / (sq_.array().sqrt() + eps_);
}

double clip_grad_norm(Vector& grad, double max_norm) {
  const double norm = grad.norm();
  const double coef = max_norm / (norm + 1e-6);
  if (coef < 1.0) grad *= coef;
  return norm;
}

}  // namespace ranbench::rlagent
