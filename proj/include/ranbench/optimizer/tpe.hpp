#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ranbench/optimizer/domain.hpp"

namespace ranbench::optimizer {

/// min(ceil(0.1 n), 25)
int default_gamma(int n);

struct TpeConfig {
  int n_startup = 10;
  int n_candidates = 24;
  std::function<int(int)> gamma = default_gamma;
  double min_bandwidth_fraction = 0.01;
  /// Also floor bandwidths at span / min(100, kernels), kernels counting
  /// the prior component.
  bool adaptive_bandwidth_floor = true;
  /// Joint kernels over all parameters when every parameter is numeric and
  /// unconditional; otherwise parameters are proposed independently.
  bool multivariate = true;

  void validate() const;
};

/// Mixture of Gaussians truncated to [lo, hi]: one component per
/// observation plus a prior component spanning the whole range, all with
/// equal weight. Components follow the observation order when
/// `keep_order` is set, sorted otherwise; the prior is last.
class ParzenEstimator {
 public:
  ParzenEstimator(const std::vector<double>& observations, double lo, double hi,
                  double min_bandwidth_fraction, bool adaptive_floor = false,
                  bool keep_order = false);

  double log_pdf(double x) const;
  /// Log density of component k alone, truncation included.
  double log_kernel(std::size_t k, double x) const;
  double sample(std::mt19937_64& rng) const;
  double sample_kernel(std::size_t k, std::mt19937_64& rng) const;

  const std::vector<double>& mus() const { return mus_; }
  const std::vector<double>& sigmas() const { return sigmas_; }

 private:
  double lo_, hi_;
  std::vector<double> mus_, sigmas_, log_mass_;
};

/// Proposes the next parameter assignment. Below `n_startup` completed
/// trials every parameter is drawn from its prior; afterwards each active
/// parameter is chosen independently as the candidate (drawn from the
/// good-trial density l) maximizing l(x)/g(x). Scores are maximized.
Params suggest(const Space& space, const std::vector<TrialRecord>& history, const TpeConfig& cfg,
               std::uint64_t rng_seed);

}  // namespace ranbench::optimizer
