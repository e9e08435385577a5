#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ranbench/ransim/scenario.hpp"

namespace ranbench::bench {

/// The committed test scenarios TS1..TSk.
struct TsManifest {
  int max_enbs_used = 2;
  std::uint64_t scan_first = 0;
  std::uint64_t scan_last = 9999;
  std::vector<ransim::ScenarioSpec> scenarios;  // named TS1, TS2, ...

  const ransim::ScenarioSpec& get(const std::string& name) const;
  std::vector<std::string> names() const;
};

/// Number of distinct eNBs serving UEs after warmup with all powers at the
/// default level.
int baseline_enbs_used(const ransim::ScenarioSpec& s, const ransim::RadioConfig& radio,
                       int warmup_ms = 4000);

/// Scans seeds in increasing order and keeps the first `count` whose
/// equal-power attachment uses at most `max_enbs_used` eNBs.
TsManifest generate_manifest(const ransim::RadioConfig& radio, int count = 6, int num_ues = 12,
                             std::uint64_t scan_first = 0, std::uint64_t scan_last = 9999,
                             int max_enbs_used = 2);

void save_manifest(const std::string& path, const TsManifest& m);
TsManifest load_manifest(const std::string& path);

/// data/ts_manifest.json in the source tree.
std::string default_manifest_path();

}  // namespace ranbench::bench
