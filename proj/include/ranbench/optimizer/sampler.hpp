#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ranbench/optimizer/domain.hpp"

namespace ranbench::optimizer {

/// One draw from the domain's prior.
ParamValue sample_prior(const ParamDomain& d, std::mt19937_64& rng);

/// Draws all active parameters of `space` in order.
Params sample_space(const Space& space, std::mt19937_64& rng);

/// `n` independent prior samples; deterministic under `seed`.
std::vector<Params> random_sample(const Space& space, int n, std::uint64_t seed);

/// Full Cartesian product of `levels` (one list per domain), first domain
/// varying slowest.
std::vector<Params> grid(const Space& space, const std::vector<std::vector<ParamValue>>& levels);

}  // namespace ranbench::optimizer
