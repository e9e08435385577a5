#include "ranbench/rlagent/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ranbench::rlagent {

using nlohmann::json;

json arch_to_json(const PolicyArch& a) {
  return {{"feature_depth", a.feature_depth},
          {"head_depth", a.head_depth},
          {"width", a.width},
          {"activation", to_string(a.activation)},
          {"enb_shared_first_layer", a.enb_shared_first_layer},
          {"orthogonal_init", a.orthogonal_init}};
}

PolicyArch arch_from_json(const json& j) {
  PolicyArch a;
  a.feature_depth = j.value("feature_depth", a.feature_depth);
  a.head_depth = j.value("head_depth", a.head_depth);
  a.width = j.value("width", a.width);
  a.activation = parse_activation(j.value("activation", to_string(a.activation)));
  a.enb_shared_first_layer = j.value("enb_shared_first_layer", a.enb_shared_first_layer);
  a.orthogonal_init = j.value("orthogonal_init", a.orthogonal_init);
  a.validate();
  return a;
}

json checkpoint_to_json(const ActorCritic& net) {
  const auto& s = net.observation_shape();
  json blocks = json::array();
  for (const auto& b : net.blocks()) {
    std::vector<double> values(net.params().data() + b.offset,
                               net.params().data() + b.offset + static_cast<Eigen::Index>(b.rows) * b.cols);
    blocks.push_back({{"name", b.name}, {"rows", b.rows}, {"cols", b.cols}, {"values", values}});
  }
  return {{"format", "ranbench-policy"},
          {"version", kCheckpointVersion},
          {"observation_shape", {{"enbs", s.enbs}, {"history", s.history}, {"features", s.features}}},
          {"n_actions", net.action_count()},
          {"arch", arch_to_json(net.arch())},
          {"blocks", blocks}};
}

ActorCritic checkpoint_from_json(const json& j) {
  if (j.value("format", std::string()) != "ranbench-policy")
    throw std::runtime_error("not a policy checkpoint");
  if (j.value("version", 0) != kCheckpointVersion)
    throw std::runtime_error("unsupported checkpoint version");
  const auto& sj = j.at("observation_shape");
  envproto::ObservationShape shape{sj.at("enbs").get<int>(), sj.at("history").get<int>(),
                                   sj.at("features").get<int>()};
  ActorCritic net(shape, j.at("n_actions").get<int>(), arch_from_json(j.at("arch")), 0);
  const auto expected = net.blocks();
  const auto& blocks = j.at("blocks");
  if (blocks.size() != expected.size()) throw std::runtime_error("checkpoint block count mismatch");
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& e = expected[i];
    const auto& b = blocks[i];
    if (b.at("name").get<std::string>() != e.name || b.at("rows").get<int>() != e.rows ||
        b.at("cols").get<int>() != e.cols)
      throw std::runtime_error("checkpoint block '" + e.name + "' has the wrong shape");
    const auto values = b.at("values").get<std::vector<double>>();
    if (values.size() != static_cast<std::size_t>(e.rows) * e.cols)
      throw std::runtime_error("checkpoint block '" + e.name + "' has the wrong size");
    std::copy(values.begin(), values.end(), net.params().data() + e.offset);
  }
  return net;
}

void save_checkpoint(const std::string& path, const ActorCritic& net) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << checkpoint_to_json(net).dump() << '\n';
    if (!out) throw std::runtime_error("write to " + tmp + " failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move checkpoint into " + path);
}

ActorCritic load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("checkpoint " + path + " is not valid JSON: " + e.what());
  }
  return checkpoint_from_json(j);
}

}  // namespace ranbench::rlagent
