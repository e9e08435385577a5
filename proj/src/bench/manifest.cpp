#include "ranbench/bench/manifest.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "ranbench/ransim/network.hpp"

namespace ranbench::bench {

using nlohmann::json;

const ransim::ScenarioSpec& TsManifest::get(const std::string& name) const {
  for (const auto& s : scenarios)
    if (s.name == name) return s;
  throw std::invalid_argument("scenario '" + name + "' is not in the manifest");
}

std::vector<std::string> TsManifest::names() const {
  std::vector<std::string> out;
  for (const auto& s : scenarios) out.push_back(s.name);
  return out;
}

int baseline_enbs_used(const ransim::ScenarioSpec& s, const ransim::RadioConfig& radio,
                       int warmup_ms) {
  const double p = 30.0;
  auto st = ransim::make_network(s, {p, p, p}, radio, warmup_ms);
  ransim::advance(st, warmup_ms);
  const std::set<int> used(st.attachments.begin(), st.attachments.end());
  return static_cast<int>(used.size());
}

TsManifest generate_manifest(const ransim::RadioConfig& radio, int count, int num_ues,
                             std::uint64_t scan_first, std::uint64_t scan_last,
                             int max_enbs_used) {
  TsManifest m;
  m.max_enbs_used = max_enbs_used;
  m.scan_first = scan_first;
  m.scan_last = scan_last;
  for (std::uint64_t seed = scan_first; seed <= scan_last; ++seed) {
    if (static_cast<int>(m.scenarios.size()) == count) break;
    ransim::ScenarioSpec s = ransim::sample_scenario(seed, num_ues, radio);
    if (baseline_enbs_used(s, radio) > max_enbs_used) continue;
    s.name = "TS" + std::to_string(m.scenarios.size() + 1);
    m.scenarios.push_back(std::move(s));
  }
  if (static_cast<int>(m.scenarios.size()) < count)
    throw std::runtime_error("seed scan found only " + std::to_string(m.scenarios.size()) +
                             " qualifying scenarios");
  return m;
}

void save_manifest(const std::string& path, const TsManifest& m) {
  json j = {{"version", 1},
            {"selection",
             {{"rule", "equal-power attachment uses at most max_enbs_used eNBs"},
              {"max_enbs_used", m.max_enbs_used},
              {"scan_first", m.scan_first},
              {"scan_last", m.scan_last}}},
            {"scenarios", m.scenarios}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest " + path);
  out << j.dump(2) << '\n';
}

TsManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read manifest " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("manifest " + path + " is not valid JSON: " + e.what());
  }
  if (j.value("version", 0) != 1) throw std::runtime_error("unsupported manifest version");
  TsManifest m;
  const auto& sel = j.at("selection");
  m.max_enbs_used = sel.at("max_enbs_used").get<int>();
  m.scan_first = sel.at("scan_first").get<std::uint64_t>();
  m.scan_last = sel.at("scan_last").get<std::uint64_t>();
  m.scenarios = j.at("scenarios").get<std::vector<ransim::ScenarioSpec>>();
  for (const auto& s : m.scenarios) s.validate({});
  return m;
}

std::string default_manifest_path() { return std::string(RANBENCH_DATA_DIR) + "/ts_manifest.json"; }

}  // namespace ranbench::bench
