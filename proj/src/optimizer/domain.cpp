#include "ranbench/optimizer/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace ranbench::optimizer {

void ParamDomain::validate() const {
  if (name.empty()) throw std::invalid_argument("parameter without a name");
  if (const auto* u = std::get_if<Uniform>(&kind)) {
    if (!(u->lo < u->hi)) throw std::invalid_argument(name + ": uniform needs lo < hi");
  } else if (const auto* l = std::get_if<LogUniform>(&kind)) {
    if (!(l->lo < l->hi)) throw std::invalid_argument(name + ": log-uniform needs lo < hi");
    if (!(l->lo > 0)) throw std::invalid_argument(name + ": log-uniform needs lo > 0");
  } else {
    const auto& c = std::get<Categorical>(kind);
    if (c.choices.empty()) throw std::invalid_argument(name + ": categorical without choices");
    for (std::size_t i = 0; i < c.choices.size(); ++i)
      for (std::size_t j = i + 1; j < c.choices.size(); ++j)
        if (c.choices[i] == c.choices[j])
          throw std::invalid_argument(name + ": duplicate categorical choice");
  }
}

bool ParamDomain::contains(const ParamValue& v) const {
  if (const auto* u = std::get_if<Uniform>(&kind)) {
    if (!std::holds_alternative<double>(v)) return false;
    const double x = std::get<double>(v);
    return x >= u->lo && x <= u->hi;
  }
  if (const auto* l = std::get_if<LogUniform>(&kind)) {
    if (!std::holds_alternative<double>(v)) return false;
    const double x = std::get<double>(v);
    return x >= l->lo && x <= l->hi;
  }
  return choice_index(v) >= 0;
}

int ParamDomain::choice_index(const ParamValue& v) const {
  const auto* c = std::get_if<Categorical>(&kind);
  if (c == nullptr) return -1;
  const auto it = std::find(c->choices.begin(), c->choices.end(), v);
  return it == c->choices.end() ? -1 : static_cast<int>(it - c->choices.begin());
}

void validate_space(const Space& space) {
  if (space.empty()) throw std::invalid_argument("empty parameter space");
  std::set<std::string> seen;
  for (const auto& d : space) {
    d.validate();
    if (d.condition && !seen.count(d.condition->param))
      throw std::invalid_argument(d.name + ": condition refers to unknown or later parameter '" +
                                  d.condition->param + "'");
    if (!seen.insert(d.name).second) throw std::invalid_argument("duplicate parameter " + d.name);
  }
}

bool is_active(const ParamDomain& d, const Params& assigned) {
  if (!d.condition) return true;
  const auto it = assigned.find(d.condition->param);
  if (it == assigned.end()) return false;
  const auto& vals = d.condition->values;
  return std::find(vals.begin(), vals.end(), it->second) != vals.end();
}

void check_params(const Space& space, const Params& params) {
  std::size_t active = 0;
  for (const auto& d : space) {
    const auto it = params.find(d.name);
    if (!is_active(d, params)) {
      if (it != params.end()) throw std::invalid_argument("inactive parameter present: " + d.name);
      continue;
    }
    ++active;
    if (it == params.end()) throw std::invalid_argument("missing parameter: " + d.name);
    if (!d.contains(it->second))
      throw std::invalid_argument("parameter outside its domain: " + d.name + "=" +
                                  to_string(it->second));
  }
  if (active != params.size()) throw std::invalid_argument("unknown parameter in trial");
}

double as_double(const ParamValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? 1.0 : 0.0;
  throw std::invalid_argument("parameter value is not numeric: " + std::get<std::string>(v));
}

std::int64_t as_int(const ParamValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  const double d = as_double(v);
  if (d != std::floor(d)) throw std::invalid_argument("parameter value is not integral");
  return static_cast<std::int64_t>(d);
}

bool as_bool(const ParamValue& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  throw std::invalid_argument("parameter value is not boolean: " + to_string(v));
}

const std::string& as_string(const ParamValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw std::invalid_argument("parameter value is not a string: " + to_string(v));
}

std::string to_string(const ParamValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return to_json_value(v).dump();
}

nlohmann::json to_json_value(const ParamValue& v) {
  return std::visit([](const auto& x) { return nlohmann::json(x); }, v);
}

ParamValue from_json_value(const nlohmann::json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw std::invalid_argument("unsupported parameter value: " + j.dump());
}

nlohmann::json space_to_json(const Space& space) {
  nlohmann::json params = nlohmann::json::array();
  for (const auto& d : space) {
    nlohmann::json p = {{"name", d.name}};
    if (const auto* u = std::get_if<Uniform>(&d.kind)) {
      p["kind"] = "uniform";
      p["low"] = u->lo;
      p["high"] = u->hi;
    } else if (const auto* l = std::get_if<LogUniform>(&d.kind)) {
      p["kind"] = "loguniform";
      p["low"] = l->lo;
      p["high"] = l->hi;
    } else {
      p["kind"] = "categorical";
      p["choices"] = nlohmann::json::array();
      for (const auto& c : std::get<Categorical>(d.kind).choices)
        p["choices"].push_back(to_json_value(c));
    }
    if (d.condition) {
      nlohmann::json vals = nlohmann::json::array();
      for (const auto& v : d.condition->values) vals.push_back(to_json_value(v));
      p["condition"] = {{"param", d.condition->param}, {"values", vals}};
    }
    params.push_back(std::move(p));
  }
  return {{"params", params}};
}

Space space_from_json(const nlohmann::json& j) {
  Space space;
  for (const auto& p : j.at("params")) {
    ParamDomain d;
    d.name = p.at("name").get<std::string>();
    const auto kind = p.at("kind").get<std::string>();
    if (kind == "uniform") {
      d.kind = Uniform{p.at("low").get<double>(), p.at("high").get<double>()};
    } else if (kind == "loguniform") {
      d.kind = LogUniform{p.at("low").get<double>(), p.at("high").get<double>()};
    } else if (kind == "categorical") {
      Categorical c;
      for (const auto& v : p.at("choices")) c.choices.push_back(from_json_value(v));
      d.kind = std::move(c);
    } else {
      throw std::invalid_argument(d.name + ": unknown kind '" + kind + "'");
    }
    if (p.contains("condition")) {
      Condition c;
      c.param = p["condition"].at("param").get<std::string>();
      for (const auto& v : p["condition"].at("values")) c.values.push_back(from_json_value(v));
      d.condition = std::move(c);
    }
    space.push_back(std::move(d));
  }
  validate_space(space);
  return space;
}

Space load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open parameter space file " + path);
  return space_from_json(nlohmann::json::parse(in));
}

}  // namespace ranbench::optimizer
