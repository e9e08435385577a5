#pragma once

#include <string>

#include <json.hpp>

#include "ranbench/rlagent/policy.hpp"

namespace ranbench::rlagent {

inline constexpr int kCheckpointVersion = 1;

nlohmann::json arch_to_json(const PolicyArch& a);
PolicyArch arch_from_json(const nlohmann::json& j);

/// Self-describing: observation shape, action count, arch, and one named
/// block (rows, cols, column-major values) per weight matrix and bias.
nlohmann::json checkpoint_to_json(const ActorCritic& net);
ActorCritic checkpoint_from_json(const nlohmann::json& j);

/// Writes atomically (temp file + rename).
void save_checkpoint(const std::string& path, const ActorCritic& net);
ActorCritic load_checkpoint(const std::string& path);

}  // namespace ranbench::rlagent
