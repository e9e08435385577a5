#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ranbench/envproto/env.hpp"

namespace ranbench::rlagent {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Activation { Tanh, Relu };

Activation parse_activation(const std::string& s);
std::string to_string(Activation a);

/// Actor-critic layout. With feature_depth = 0 the policy and value heads
/// read the raw observation and share nothing. When enb_shared_first_layer
/// is set, the first layer applied to the observation runs the same weights
/// over every eNB row and concatenates the per-eNB embeddings.
struct PolicyArch {
  int feature_depth = 0;
  int head_depth = 2;
  int width = 256;
  Activation activation = Activation::Relu;
  bool enb_shared_first_layer = false;
  bool orthogonal_init = false;

  void validate() const;
};

/// Dense layer, or a group-shared layer when groups > 1 (then `in` and
/// `out` are per group). Offsets index the flat parameter vector; weights
/// are stored column-major as out x in.
struct Layer {
  int in = 0;
  int out = 0;
  int groups = 1;
  Eigen::Index weight = 0;
  Eigen::Index bias = 0;
  bool activate = true;
};

class ActorCritic {
 public:
  struct Output {
    Matrix logits;  // actions x batch
    Vector values;  // batch
  };

  /// Activations recorded by a forward pass, consumed by backward().
  struct Tape {
    std::vector<Matrix> trunk, policy, value;  // layer inputs, then final output
  };

  ActorCritic(envproto::ObservationShape shape, int n_actions, PolicyArch arch,
              std::uint64_t init_seed);

  const envproto::ObservationShape& observation_shape() const { return shape_; }
  int action_count() const { return n_actions_; }
  const PolicyArch& arch() const { return arch_; }

  Vector& params() { return params_; }
  const Vector& params() const { return params_; }

  /// `obs` holds one flattened observation per column.
  Output forward(const Matrix& obs) const;
  Output forward(const Matrix& obs, Tape& tape) const;

  /// Accumulates dLoss/dparams into `grad` (sized like params()).
  void backward(const Tape& tape, const Matrix& dlogits, const Vector& dvalues, Vector& grad) const;

  /// Output of the first layer that reads the observation (before the
  /// activation); exposed for layer-sharing checks.
  Matrix first_layer_preactivation(const Matrix& obs) const;

  const std::vector<Layer>& trunk_layers() const { return trunk_; }
  const std::vector<Layer>& policy_layers() const { return policy_; }
  const std::vector<Layer>& value_layers() const { return value_; }

  /// (name, rows, cols, offset) for every weight and bias block.
  struct Block {
    std::string name;
    int rows;
    int cols;
    Eigen::Index offset;
  };
  std::vector<Block> blocks() const;

 private:
  Matrix forward_stack(const std::vector<Layer>& stack, const Matrix& in,
                       std::vector<Matrix>* tape) const;
  Matrix backward_stack(const std::vector<Layer>& stack, const std::vector<Matrix>& tape,
                        const Matrix& dout, Vector& grad) const;
  Matrix apply_layer(const Layer& l, const Matrix& in) const;
  void initialize(std::uint64_t seed);

  envproto::ObservationShape shape_;
  int n_actions_;
  PolicyArch arch_;
  std::vector<Layer> trunk_, policy_, value_;
  Vector params_;
};

/// Column-wise log-softmax.
Matrix log_softmax(const Matrix& logits);

/// Stacks observations into a column matrix.
Matrix stack_observations(const std::vector<const envproto::Observation*>& obs);
Matrix to_column(const envproto::Observation& obs);

}  // namespace ranbench::rlagent
