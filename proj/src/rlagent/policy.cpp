#include "ranbench/rlagent/policy.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ranbench::rlagent {

Activation parse_activation(const std::string& s) {
  if (s == "tanh") return Activation::Tanh;
  if (s == "relu") return Activation::Relu;
  throw std::invalid_argument("unknown activation '" + s + "'");
}

std::string to_string(Activation a) { return a == Activation::Tanh ? "tanh" : "relu"; }

void PolicyArch::validate() const {
  if (feature_depth < 0) throw std::invalid_argument("feature_depth must be >= 0");
  if (head_depth < 1) throw std::invalid_argument("head_depth must be >= 1");
  if (width < 1) throw std::invalid_argument("width must be >= 1");
}

namespace {

void activate_inplace(Matrix& m, Activation a) {
  if (a == Activation::Relu)
    m = m.cwiseMax(0.0);
  else
    m = m.array().tanh().matrix();
}

// dA -> dZ given post-activation values A.
Matrix activation_backward(const Matrix& da, const Matrix& a, Activation act) {
  if (act == Activation::Relu) return (a.array() > 0.0).select(da, 0.0);
  return (da.array() * (1.0 - a.array().square())).matrix();
}

Matrix orthogonal(int rows, int cols, double gain, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const int big = std::max(rows, cols);
  const int small = std::min(rows, cols);
  Matrix g(big, small);
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = n(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(big, small);
  const Matrix r = qr.matrixQR().topRows(small).triangularView<Eigen::Upper>();
  for (int k = 0; k < small; ++k)
    if (r(k, k) < 0) q.col(k) *= -1.0;
  if (rows < cols) return gain * q.transpose();
  return gain * q;
}

}  // namespace

ActorCritic::ActorCritic(envproto::ObservationShape shape, int n_actions, PolicyArch arch,
                         std::uint64_t init_seed)
    : shape_(shape), n_actions_(n_actions), arch_(arch) {
  arch_.validate();
  if (n_actions < 1) throw std::invalid_argument("action count must be >= 1");
  if (shape.size() < 1) throw std::invalid_argument("empty observation");

  Eigen::Index offset = 0;
  const int S = arch_.width;
  const int N = shape_.enbs;
  const int per_enb = shape_.history * shape_.features;

  auto add = [&](std::vector<Layer>& stack, int in, int out, int groups, bool act) {
    Layer l;
    l.in = in;
    l.out = out;
    l.groups = groups;
    l.weight = offset;
    offset += static_cast<Eigen::Index>(in) * out;
    l.bias = offset;
    offset += out;
    l.activate = act;
    stack.push_back(l);
  };
  // The first layer reading the observation; returns its output width.
  auto add_input_layer = [&](std::vector<Layer>& stack) {
    if (arch_.enb_shared_first_layer) {
      add(stack, per_enb, S, N, true);
      return S * N;
    }
    add(stack, static_cast<int>(shape_.size()), S, 1, true);
    return S;
  };

  int head_in = static_cast<int>(shape_.size());
  bool head_reads_obs = true;
  if (arch_.feature_depth > 0) {
    int w = add_input_layer(trunk_);
    for (int i = 1; i < arch_.feature_depth; ++i) {
      add(trunk_, w, S, 1, true);
      w = S;
    }
    head_in = w;
    head_reads_obs = false;
  }
  for (auto* stack : {&policy_, &value_}) {
    int w = head_in;
    for (int i = 0; i < arch_.head_depth; ++i) {
      if (i == 0 && head_reads_obs) {
        w = add_input_layer(*stack);
      } else {
        add(*stack, w, S, 1, true);
        w = S;
      }
    }
    add(*stack, w, stack == &policy_ ? n_actions_ : 1, 1, false);
  }
  params_ = Vector::Zero(offset);
  initialize(init_seed);
}

void ActorCritic::initialize(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto init_stack = [&](const std::vector<Layer>& stack, double out_gain) {
    for (std::size_t k = 0; k < stack.size(); ++k) {
      const Layer& l = stack[k];
      const bool last = k + 1 == stack.size() && !l.activate;
      Eigen::Map<Matrix> w(params_.data() + l.weight, l.out, l.in);
      Eigen::Map<Vector> b(params_.data() + l.bias, l.out);
      if (arch_.orthogonal_init) {
        w = orthogonal(l.out, l.in, last ? out_gain : std::sqrt(2.0), rng);
        b.setZero();
      } else {
        const double bound = 1.0 / std::sqrt(static_cast<double>(l.in));
        std::uniform_real_distribution<double> u(-bound, bound);
        for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = u(rng);
        for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = u(rng);
      }
    }
  };
  init_stack(trunk_, std::sqrt(2.0));
  init_stack(policy_, 0.01);
  init_stack(value_, 1.0);
}

Matrix ActorCritic::apply_layer(const Layer& l, const Matrix& in) const {
  Eigen::Map<const Matrix> w(params_.data() + l.weight, l.out, l.in);
  Eigen::Map<const Vector> b(params_.data() + l.bias, l.out);
  const Eigen::Index batch = in.cols();
  if (l.groups == 1) {
    if (in.rows() != l.in) throw std::invalid_argument("layer input size mismatch");
    Matrix z = w * in;
    z.colwise() += b;
    return z;
  }
  if (in.rows() != static_cast<Eigen::Index>(l.in) * l.groups)
    throw std::invalid_argument("shared layer input size mismatch");
  Eigen::Map<const Matrix> x(in.data(), l.in, l.groups * batch);
  Matrix z = w * x;
  z.colwise() += b;
  z.resize(static_cast<Eigen::Index>(l.out) * l.groups, batch);
  return z;
}

Matrix ActorCritic::forward_stack(const std::vector<Layer>& stack, const Matrix& in,
                                  std::vector<Matrix>* tape) const {
  Matrix h = in;
  for (const Layer& l : stack) {
    if (tape != nullptr) tape->push_back(h);
    h = apply_layer(l, h);
    if (l.activate) activate_inplace(h, arch_.activation);
  }
  if (tape != nullptr) tape->push_back(h);
  return h;
}

ActorCritic::Output ActorCritic::forward(const Matrix& obs) const {
  const Matrix h = trunk_.empty() ? obs : forward_stack(trunk_, obs, nullptr);
  Output out;
  out.logits = forward_stack(policy_, h, nullptr);
  out.values = forward_stack(value_, h, nullptr).row(0).transpose();
  return out;
}

ActorCritic::Output ActorCritic::forward(const Matrix& obs, Tape& tape) const {
  tape = Tape{};
  const Matrix h = trunk_.empty() ? obs : forward_stack(trunk_, obs, &tape.trunk);
  Output out;
  out.logits = forward_stack(policy_, h, &tape.policy);
  out.values = forward_stack(value_, h, &tape.value).row(0).transpose();
  return out;
}

Matrix ActorCritic::backward_stack(const std::vector<Layer>& stack,
                                   const std::vector<Matrix>& tape, const Matrix& dout,
                                   Vector& grad) const {
  Matrix d = dout;
  for (std::size_t k = stack.size(); k-- > 0;) {
    const Layer& l = stack[k];
    const Matrix& in = tape[k];
    if (l.activate) d = activation_backward(d, tape[k + 1], arch_.activation);
    Eigen::Map<const Matrix> w(params_.data() + l.weight, l.out, l.in);
    Eigen::Map<Matrix> gw(grad.data() + l.weight, l.out, l.in);
    Eigen::Map<Vector> gb(grad.data() + l.bias, l.out);
    const Eigen::Index batch = in.cols();
    if (l.groups == 1) {
      gw.noalias() += d * in.transpose();
      gb += d.rowwise().sum();
      d = w.transpose() * d;
    } else {
      Eigen::Map<const Matrix> x(in.data(), l.in, l.groups * batch);
      Eigen::Map<const Matrix> dz(d.data(), l.out, l.groups * batch);
      gw.noalias() += dz * x.transpose();
      gb += dz.rowwise().sum();
      Matrix dx = w.transpose() * dz;
      dx.resize(static_cast<Eigen::Index>(l.in) * l.groups, batch);
      d = std::move(dx);
    }
  }
  return d;
}

void ActorCritic::backward(const Tape& tape, const Matrix& dlogits, const Vector& dvalues,
                           Vector& grad) const {
  if (grad.size() != params_.size()) grad = Vector::Zero(params_.size());
  const Matrix dh_pol = backward_stack(policy_, tape.policy, dlogits, grad);
  const Matrix dh_val = backward_stack(value_, tape.value, dvalues.transpose(), grad);
  if (!trunk_.empty()) backward_stack(trunk_, tape.trunk, dh_pol + dh_val, grad);
}

Matrix ActorCritic::first_layer_preactivation(const Matrix& obs) const {
  const Layer& l = trunk_.empty() ? policy_.front() : trunk_.front();
  return apply_layer(l, obs);
}

std::vector<ActorCritic::Block> ActorCritic::blocks() const {
  std::vector<Block> out;
  auto add = [&](const std::string& prefix, const std::vector<Layer>& stack) {
    for (std::size_t k = 0; k < stack.size(); ++k) {
      const std::string n = prefix + "." + std::to_string(k);
      out.push_back({n + ".weight", stack[k].out, stack[k].in, stack[k].weight});
      out.push_back({n + ".bias", stack[k].out, 1, stack[k].bias});
    }
  };
  add("trunk", trunk_);
  add("policy", policy_);
  add("value", value_);
  return out;
}

Matrix log_softmax(const Matrix& logits) {
  Matrix out = logits;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const double m = out.col(j).maxCoeff();
    const double lse = m + std::log((out.col(j).array() - m).exp().sum());
    out.col(j).array() -= lse;
  }
  return out;
}

Matrix to_column(const envproto::Observation& obs) {
  return Eigen::Map<const Vector>(obs.values.data(), static_cast<Eigen::Index>(obs.values.size()));
}

Matrix stack_observations(const std::vector<const envproto::Observation*>& obs) {
  if (obs.empty()) return Matrix();
  const auto d = static_cast<Eigen::Index>(obs.front()->values.size());
  Matrix m(d, static_cast<Eigen::Index>(obs.size()));
  for (std::size_t j = 0; j < obs.size(); ++j) {
    if (static_cast<Eigen::Index>(obs[j]->values.size()) != d)
      throw std::invalid_argument("observation size mismatch");
    m.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Vector>(obs[j]->values.data(), d);
  }
  return m;
}

}  // namespace ranbench::rlagent
