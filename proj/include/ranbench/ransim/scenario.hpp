#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ranbench/ransim/radio.hpp"

namespace ranbench::ransim {

inline constexpr double kMovingSpeedMps = 14.0;

struct ClusterSpec {
  Vec2 center;
  double radius_m = 0.0;
  int ue_count = 0;
};

/// One mobility leg: every UE walks straight to its target, and once the
/// last UE has arrived they all hold still for `dwell_s`.
struct Waypoint {
  std::vector<Vec2> targets;
  double dwell_s = 0.0;
};

struct ScenarioSpec {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<ClusterSpec> clusters;
  std::vector<Vec2> ue_positions;
  std::vector<Waypoint> waypoint_schedule;
  double ue_speed_mps = 0.0;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate(const RadioConfig& radio) const;
};

/// Hierarchical sampling: cluster count, then per-cluster center, radius and
/// UE count, then UE positions inside each cluster disc (rejection-resampled
/// into the arena). A pure function of `seed`.
ScenarioSpec sample_scenario(std::uint64_t seed, int num_ues, const RadioConfig& radio = {});

void to_json(nlohmann::json& j, const Vec2& v);
void from_json(const nlohmann::json& j, Vec2& v);
void to_json(nlohmann::json& j, const ClusterSpec& c);
void from_json(const nlohmann::json& j, ClusterSpec& c);
void to_json(nlohmann::json& j, const Waypoint& w);
void from_json(const nlohmann::json& j, Waypoint& w);
void to_json(nlohmann::json& j, const ScenarioSpec& s);
void from_json(const nlohmann::json& j, ScenarioSpec& s);

}  // namespace ranbench::ransim
