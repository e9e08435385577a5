#pragma once

#include <vector>

namespace ranbench::rlagent {

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;
};

/// Generalized advantage estimation over one environment's rollout.
/// dones[t] marks that the episode ended after step t, so no value is
/// bootstrapped across it. `last_value` is V(s_T) for the state after the
/// final step.
GaeResult compute_gae(const std::vector<double>& rewards, const std::vector<double>& values,
                      const std::vector<bool>& dones, double last_value, double gamma,
                      double lambda);

}  // namespace ranbench::rlagent
