#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ranbench::optimizer {

using ParamValue = std::variant<bool, std::int64_t, double, std::string>;
using Params = std::map<std::string, ParamValue>;

struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
};

struct LogUniform {
  double lo = 1e-5;
  double hi = 1.0;
};

struct Categorical {
  std::vector<ParamValue> choices;
};

/// The parameter only exists in a trial when `param` took one of `values`.
struct Condition {
  std::string param;
  std::vector<ParamValue> values;
};

struct ParamDomain {
  std::string name;
  std::variant<Uniform, LogUniform, Categorical> kind;
  std::optional<Condition> condition;

  void validate() const;
  bool contains(const ParamValue& v) const;
  bool is_categorical() const { return std::holds_alternative<Categorical>(kind); }
  /// Index of `v` among the categorical choices, or -1.
  int choice_index(const ParamValue& v) const;
};

using Space = std::vector<ParamDomain>;

enum class TrialState { Complete, Failed };

struct TrialRecord {
  std::string study;
  int trial_id = -1;  // assigned by the store when -1
  Params params;
  double score = 0.0;
  TrialState state = TrialState::Complete;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  nlohmann::json attrs = nlohmann::json::object();
};

/// Unique names, valid kinds, conditions referring to earlier parameters.
void validate_space(const Space& space);

bool is_active(const ParamDomain& d, const Params& assigned);

/// Throws std::invalid_argument unless `params` holds exactly the active
/// parameters of `space`, each inside its domain.
void check_params(const Space& space, const Params& params);

double as_double(const ParamValue& v);
std::int64_t as_int(const ParamValue& v);
bool as_bool(const ParamValue& v);
const std::string& as_string(const ParamValue& v);
std::string to_string(const ParamValue& v);

nlohmann::json to_json_value(const ParamValue& v);
ParamValue from_json_value(const nlohmann::json& j);

nlohmann::json space_to_json(const Space& space);
Space space_from_json(const nlohmann::json& j);
Space load_space(const std::string& path);

}  // namespace ranbench::optimizer
