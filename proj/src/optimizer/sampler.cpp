#include "ranbench/optimizer/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ranbench::optimizer {

ParamValue sample_prior(const ParamDomain& d, std::mt19937_64& rng) {
  if (const auto* u = std::get_if<Uniform>(&d.kind)) {
    return std::uniform_real_distribution<double>(u->lo, u->hi)(rng);
  }
  if (const auto* l = std::get_if<LogUniform>(&d.kind)) {
    const double x =
        std::exp(std::uniform_real_distribution<double>(std::log(l->lo), std::log(l->hi))(rng));
    return std::clamp(x, l->lo, l->hi);
  }
  const auto& c = std::get<Categorical>(d.kind);
  std::uniform_int_distribution<std::size_t> pick(0, c.choices.size() - 1);
  return c.choices[pick(rng)];
}

Params sample_space(const Space& space, std::mt19937_64& rng) {
  Params p;
  for (const auto& d : space)
    if (is_active(d, p)) p[d.name] = sample_prior(d, rng);
  return p;
}

std::vector<Params> random_sample(const Space& space, int n, std::uint64_t seed) {
  validate_space(space);
  if (n < 0) throw std::invalid_argument("random_sample: negative count");
  std::mt19937_64 rng(seed);
  std::vector<Params> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(sample_space(space, rng));
  return out;
}

std::vector<Params> grid(const Space& space, const std::vector<std::vector<ParamValue>>& levels) {
  validate_space(space);
  if (levels.size() != space.size())
    throw std::invalid_argument("grid: need one level list per domain");
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (levels[i].empty()) throw std::invalid_argument("grid: empty level list for " + space[i].name);
    for (const auto& v : levels[i])
      if (!space[i].contains(v))
        throw std::invalid_argument("grid: level " + to_string(v) + " outside " + space[i].name);
  }
  std::vector<Params> out;
  std::vector<std::size_t> idx(space.size(), 0);
  while (true) {
    Params p;
    for (std::size_t i = 0; i < space.size(); ++i) p[space[i].name] = levels[i][idx[i]];
    out.push_back(std::move(p));
    std::size_t k = space.size();
    while (k > 0) {
      --k;
      if (++idx[k] < levels[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

}  // namespace ranbench::optimizer
