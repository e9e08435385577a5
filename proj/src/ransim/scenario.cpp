#include "ranbench/ransim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ranbench::ransim {

namespace {

constexpr int kMaxClusters = 3;
constexpr double kMinClusterRadius = 50.0;
constexpr double kMaxClusterRadius = 300.0;

Vec2 uniform_in_disc(std::mt19937_64& rng, Vec2 center, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double phi = 2.0 * std::numbers::pi * unit(rng);
  return {center.x + r * std::cos(phi), center.y + r * std::sin(phi)};
}

bool in_arena(Vec2 p, double arena) { return std::hypot(p.x, p.y) <= arena; }

/// Uniformly random composition of `total` into `parts` positive integers.
std::vector<int> random_composition(std::mt19937_64& rng, int total, int parts) {
  std::vector<int> cuts(total - 1);
  for (int i = 0; i < total - 1; ++i) cuts[i] = i + 1;
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(parts - 1);
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> sizes;
  int prev = 0;
  for (int c : cuts) {
    sizes.push_back(c - prev);
    prev = c;
  }
  sizes.push_back(total - prev);
  return sizes;
}

}  // namespace

void ScenarioSpec::validate(const RadioConfig& radio) const {
  if (ue_positions.empty()) throw std::invalid_argument("scenario '" + name + "': no UEs");
  const double arena = arena_radius(radio);
  for (const auto& p : ue_positions)
    if (!in_arena(p, arena + 1e-9))
      throw std::invalid_argument("scenario '" + name + "': UE outside arena");
  int clustered = 0;
  for (const auto& c : clusters) {
    if (c.ue_count < 1 || c.radius_m <= 0)
      throw std::invalid_argument("scenario '" + name + "': degenerate cluster");
    clustered += c.ue_count;
  }
  if (!clusters.empty() && clustered != static_cast<int>(ue_positions.size()))
    throw std::invalid_argument("scenario '" + name + "': cluster UE counts do not sum to UE count");
  if (ue_speed_mps < 0) throw std::invalid_argument("scenario '" + name + "': negative speed");
  for (const auto& w : waypoint_schedule) {
    if (w.targets.size() != ue_positions.size())
      throw std::invalid_argument("scenario '" + name + "': waypoint target count mismatch");
    if (w.dwell_s < 0) throw std::invalid_argument("scenario '" + name + "': negative dwell");
  }
  if (!waypoint_schedule.empty() && ue_speed_mps <= 0)
    throw std::invalid_argument("scenario '" + name + "': waypoints need a positive speed");
}

ScenarioSpec sample_scenario(std::uint64_t seed, int num_ues, const RadioConfig& radio) {
  if (num_ues < 1) throw std::invalid_argument("sample_scenario: num_ues must be >= 1");
  std::mt19937_64 rng(seed);
  const double arena = arena_radius(radio);

  std::uniform_int_distribution<int> cluster_count(1, std::min(kMaxClusters, num_ues));
  std::uniform_real_distribution<double> radius_dist(kMinClusterRadius, kMaxClusterRadius);

  ScenarioSpec spec;
  spec.name = "seed-" + std::to_string(seed);
  spec.seed = seed;
  const int k = cluster_count(rng);
  const std::vector<int> sizes = random_composition(rng, num_ues, k);
  for (int i = 0; i < k; ++i) {
    ClusterSpec c;
    c.center = uniform_in_disc(rng, {0.0, 0.0}, arena);
    c.radius_m = radius_dist(rng);
    c.ue_count = sizes[i];
    spec.clusters.push_back(c);
  }
  for (const auto& c : spec.clusters) {
    for (int u = 0; u < c.ue_count; ++u) {
      Vec2 p;
      do {
        p = uniform_in_disc(rng, c.center, c.radius_m);
      } while (!in_arena(p, arena));
      spec.ue_positions.push_back(p);
    }
  }
  return spec;
}

void to_json(nlohmann::json& j, const Vec2& v) { j = nlohmann::json::array({v.x, v.y}); }
void from_json(const nlohmann::json& j, Vec2& v) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("position must be [x, y]");
  v.x = j[0].get<double>();
  v.y = j[1].get<double>();
}

void to_json(nlohmann::json& j, const ClusterSpec& c) {
  j = {{"center", c.center}, {"radius_m", c.radius_m}, {"ue_count", c.ue_count}};
}
void from_json(const nlohmann::json& j, ClusterSpec& c) {
  j.at("center").get_to(c.center);
  j.at("radius_m").get_to(c.radius_m);
  j.at("ue_count").get_to(c.ue_count);
}

void to_json(nlohmann::json& j, const Waypoint& w) {
  j = {{"targets", w.targets}, {"dwell_s", w.dwell_s}};
}
void from_json(const nlohmann::json& j, Waypoint& w) {
  j.at("targets").get_to(w.targets);
  j.at("dwell_s").get_to(w.dwell_s);
}

void to_json(nlohmann::json& j, const ScenarioSpec& s) {
  j = {{"name", s.name},
       {"seed", s.seed},
       {"clusters", s.clusters},
       {"ue_positions", s.ue_positions},
       {"waypoint_schedule", s.waypoint_schedule},
       {"ue_speed_mps", s.ue_speed_mps}};
}
void from_json(const nlohmann::json& j, ScenarioSpec& s) {
  j.at("name").get_to(s.name);
  j.at("seed").get_to(s.seed);
  s.clusters = j.value("clusters", std::vector<ClusterSpec>{});
  j.at("ue_positions").get_to(s.ue_positions);
  s.waypoint_schedule = j.value("waypoint_schedule", std::vector<Waypoint>{});
  s.ue_speed_mps = j.value("ue_speed_mps", 0.0);
}

}  // namespace ranbench::ransim
