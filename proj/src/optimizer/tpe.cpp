#include "ranbench/optimizer/tpe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ranbench/optimizer/sampler.hpp"

namespace ranbench::optimizer {

int default_gamma(int n) { return std::min(static_cast<int>(std::ceil(0.1 * n)), 25); }

void TpeConfig::validate() const {
  if (n_startup < 1) throw std::invalid_argument("tpe: n_startup must be >= 1");
  if (n_candidates < 1) throw std::invalid_argument("tpe: n_candidates must be >= 1");
  if (!gamma) throw std::invalid_argument("tpe: gamma function missing");
  if (!(min_bandwidth_fraction > 0.0)) throw std::invalid_argument("tpe: bandwidth floor must be positive");
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double log_sum_exp(const std::vector<double>& xs) {
  const double m = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

ParzenEstimator::ParzenEstimator(const std::vector<double>& observations, double lo, double hi,
                                 double min_bandwidth_fraction, bool adaptive_floor,
                                 bool keep_order)
    : lo_(lo), hi_(hi) {
  const double span = hi - lo;
  double floor_bw = min_bandwidth_fraction * span;
  // Few kernels: keep them wide so the good density still explores.
  if (adaptive_floor)
    floor_bw = std::max(floor_bw, span / std::min(100.0, 2.0 + static_cast<double>(observations.size())));

  std::vector<std::size_t> order(observations.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return observations[a] < observations[b]; });
  mus_.assign(observations.begin(), observations.end());
  sigmas_.assign(observations.size(), 0.0);
  // Bandwidth of each observation: the larger gap to its sorted neighbours,
  // with the domain bounds acting as outer neighbours.
  for (std::size_t r = 0; r < order.size(); ++r) {
    const double x = observations[order[r]];
    const double left = r == 0 ? lo : observations[order[r - 1]];
    const double right = r + 1 == order.size() ? hi : observations[order[r + 1]];
    const double bw = std::max(x - left, right - x);
    sigmas_[order[r]] = std::clamp(bw, floor_bw, span);
  }
  if (!keep_order) {
    std::sort(mus_.begin(), mus_.end());
    std::vector<double> s(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) s[r] = sigmas_[order[r]];
    sigmas_ = std::move(s);
  }
  mus_.push_back(0.5 * (lo + hi));
  sigmas_.push_back(span);

  for (std::size_t k = 0; k < mus_.size(); ++k) {
    const double mass =
        normal_cdf((hi_ - mus_[k]) / sigmas_[k]) - normal_cdf((lo_ - mus_[k]) / sigmas_[k]);
    log_mass_.push_back(std::log(std::max(mass, std::numeric_limits<double>::min())));
  }
}

double ParzenEstimator::log_kernel(std::size_t k, double x) const {
  const double z = (x - mus_[k]) / sigmas_[k];
  return -0.5 * z * z - std::log(sigmas_[k]) - 0.5 * std::log(2.0 * std::numbers::pi) -
         log_mass_[k];
}

double ParzenEstimator::log_pdf(double x) const {
  if (x < lo_ || x > hi_) return -std::numeric_limits<double>::infinity();
  const double log_w = -std::log(static_cast<double>(mus_.size()));
  std::vector<double> terms(mus_.size());
  for (std::size_t k = 0; k < mus_.size(); ++k) terms[k] = log_w + log_kernel(k, x);
  return log_sum_exp(terms);
}

double ParzenEstimator::sample(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, mus_.size() - 1);
  return sample_kernel(pick(rng), rng);
}

double ParzenEstimator::sample_kernel(std::size_t k, std::mt19937_64& rng) const {
  std::normal_distribution<double> normal(mus_[k], sigmas_[k]);
  // Every centre lies inside [lo, hi], so at least a sixth of the mass is
  // inside the box and rejection terminates quickly.
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const double x = normal(rng);
    if (x >= lo_ && x <= hi_) return x;
  }
  return std::clamp(mus_[k], lo_, hi_);
}

namespace {

struct Ranked {
  double score;
  int trial_id;
  const Params* params;
};

ParamValue suggest_numeric(const ParamDomain& d, const std::vector<ParamValue>& good,
                           const std::vector<ParamValue>& bad, const TpeConfig& cfg,
                           std::mt19937_64& rng) {
  const bool log_scale = std::holds_alternative<LogUniform>(d.kind);
  double lo, hi;
  if (log_scale) {
    const auto& l = std::get<LogUniform>(d.kind);
    lo = std::log(l.lo);
    hi = std::log(l.hi);
  } else {
    const auto& u = std::get<Uniform>(d.kind);
    lo = u.lo;
    hi = u.hi;
  }
  auto to_internal = [&](const ParamValue& v) {
    const double x = as_double(v);
    return std::clamp(log_scale ? std::log(x) : x, lo, hi);
  };
  std::vector<double> g_obs, b_obs;
  for (const auto& v : good) g_obs.push_back(to_internal(v));
  for (const auto& v : bad) b_obs.push_back(to_internal(v));

  const ParzenEstimator l(g_obs, lo, hi, cfg.min_bandwidth_fraction, cfg.adaptive_bandwidth_floor);
  const ParzenEstimator g(b_obs, lo, hi, cfg.min_bandwidth_fraction, cfg.adaptive_bandwidth_floor);

  double best_x = 0.0;
  double best_ratio = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.n_candidates; ++i) {
    const double x = l.sample(rng);
    const double ratio = l.log_pdf(x) - g.log_pdf(x);
    if (i == 0 || ratio > best_ratio) {
      best_ratio = ratio;
      best_x = x;
    }
  }
  if (!log_scale) return best_x;
  const auto& dom = std::get<LogUniform>(d.kind);
  return std::clamp(std::exp(best_x), dom.lo, dom.hi);
}

ParamValue suggest_categorical(const ParamDomain& d, const std::vector<ParamValue>& good,
                               const std::vector<ParamValue>& bad, const TpeConfig& cfg,
                               std::mt19937_64& rng) {
  const auto& choices = std::get<Categorical>(d.kind).choices;
  const auto k = choices.size();
  // Laplace-smoothed choice frequencies.
  auto weights = [&](const std::vector<ParamValue>& vals) {
    std::vector<double> w(k, 1.0);
    for (const auto& v : vals) {
      const int idx = d.choice_index(v);
      if (idx >= 0) w[idx] += 1.0;
    }
    const double total = static_cast<double>(vals.size() + k);
    for (auto& x : w) x /= total;
    return w;
  };
  const auto pl = weights(good);
  const auto pg = weights(bad);
  std::discrete_distribution<std::size_t> draw(pl.begin(), pl.end());
  std::size_t best = 0;
  double best_ratio = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.n_candidates; ++i) {
    const std::size_t c = draw(rng);
    const double ratio = std::log(pl[c]) - std::log(pg[c]);
    if (i == 0 || ratio > best_ratio) {
      best_ratio = ratio;
      best = c;
    }
  }
  return choices[best];
}

struct Bounds {
  double lo, hi;
  bool log_scale;
};

Bounds internal_bounds(const ParamDomain& d) {
  if (const auto* l = std::get_if<LogUniform>(&d.kind))
    return {std::log(l->lo), std::log(l->hi), true};
  const auto& u = std::get<Uniform>(d.kind);
  return {u.lo, u.hi, false};
}

// One kernel per trial over all dimensions, plus the prior kernel.
struct JointParzen {
  std::vector<ParzenEstimator> dims;

  double log_pdf(const std::vector<double>& x, const std::vector<Bounds>& b) const {
    const std::size_t k_count = dims.front().mus().size();
    std::vector<double> terms(k_count, -std::log(static_cast<double>(k_count)));
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (x[j] < b[j].lo || x[j] > b[j].hi) return -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < k_count; ++k) terms[k] += dims[j].log_kernel(k, x[j]);
    }
    return log_sum_exp(terms);
  }
};

JointParzen joint_parzen(const std::vector<std::vector<double>>& obs, const std::vector<Bounds>& b,
                         const TpeConfig& cfg) {
  JointParzen jp;
  for (std::size_t j = 0; j < b.size(); ++j) {
    std::vector<double> col;
    for (const auto& o : obs) col.push_back(o[j]);
    jp.dims.emplace_back(col, b[j].lo, b[j].hi, cfg.min_bandwidth_fraction,
                         cfg.adaptive_bandwidth_floor, /*keep_order=*/true);
  }
  return jp;
}

Params suggest_joint(const Space& space, const std::vector<Ranked>& ranked, const TpeConfig& cfg,
                     std::mt19937_64& rng) {
  std::vector<Bounds> b;
  for (const auto& d : space) b.push_back(internal_bounds(d));
  std::vector<std::vector<double>> rows;
  for (const auto& r : ranked) {
    std::vector<double> row;
    for (std::size_t j = 0; j < space.size(); ++j) {
      const double x = as_double(r.params->at(space[j].name));
      row.push_back(std::clamp(b[j].log_scale ? std::log(x) : x, b[j].lo, b[j].hi));
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  const int n_good = std::clamp(cfg.gamma(n), 1, n - 1);
  const std::vector<std::vector<double>> good(rows.begin(), rows.begin() + n_good);
  const std::vector<std::vector<double>> bad(rows.begin() + n_good, rows.end());
  const JointParzen l = joint_parzen(good, b, cfg);
  const JointParzen g = joint_parzen(bad, b, cfg);

  std::uniform_int_distribution<std::size_t> pick(0, l.dims.front().mus().size() - 1);
  std::vector<double> best_x;
  double best_ratio = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.n_candidates; ++i) {
    const std::size_t k = pick(rng);
    std::vector<double> x;
    for (const auto& dim : l.dims) x.push_back(dim.sample_kernel(k, rng));
    const double ratio = l.log_pdf(x, b) - g.log_pdf(x, b);
    if (i == 0 || ratio > best_ratio) {
      best_ratio = ratio;
      best_x = std::move(x);
    }
  }
  Params out;
  for (std::size_t j = 0; j < space.size(); ++j) {
    if (!b[j].log_scale) {
      out[space[j].name] = best_x[j];
    } else {
      const auto& dom = std::get<LogUniform>(space[j].kind);
      out[space[j].name] = std::clamp(std::exp(best_x[j]), dom.lo, dom.hi);
    }
  }
  return out;
}

bool joint_eligible(const Space& space) {
  for (const auto& d : space)
    if (d.is_categorical() || d.condition) return false;
  return !space.empty();
}

}  // namespace

Params suggest(const Space& space, const std::vector<TrialRecord>& history, const TpeConfig& cfg,
               std::uint64_t rng_seed) {
  validate_space(space);
  cfg.validate();
  std::mt19937_64 rng(rng_seed);

  std::vector<Ranked> ranked;
  for (const auto& t : history)
    if (t.state == TrialState::Complete && std::isfinite(t.score))
      ranked.push_back({t.score, t.trial_id, &t.params});
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.trial_id < b.trial_id;
  });
  const bool startup = static_cast<int>(ranked.size()) < cfg.n_startup;
  if (cfg.multivariate && !startup && ranked.size() >= 2 && joint_eligible(space))
    return suggest_joint(space, ranked, cfg, rng);

  Params out;
  for (const auto& d : space) {
    if (!is_active(d, out)) continue;
    std::vector<ParamValue> values;
    for (const auto& r : ranked) {
      const auto it = r.params->find(d.name);
      if (it != r.params->end()) values.push_back(it->second);
    }
    const int n = static_cast<int>(values.size());
    if (startup || n < 2) {
      out[d.name] = sample_prior(d, rng);
      continue;
    }
    const int n_good = std::clamp(cfg.gamma(n), 1, n - 1);
    const std::vector<ParamValue> good(values.begin(), values.begin() + n_good);
    const std::vector<ParamValue> bad(values.begin() + n_good, values.end());
    out[d.name] = d.is_categorical() ? suggest_categorical(d, good, bad, cfg, rng)
                                     : suggest_numeric(d, good, bad, cfg, rng);
  }
  return out;
}

}  // namespace ranbench::optimizer
