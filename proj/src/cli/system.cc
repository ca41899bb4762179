#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "rlfgen/cli.h"
#include "rlfgen/parser.h"

namespace rlfgen {

namespace {

using Json = nlohmann::json;

std::vector<std::string> string_list(const Json& j, const std::string& key) {
  if (!j.is_array()) throw Error("'" + key + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw Error("'" + key + "' must be a list of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string text_of(const Json& j, const std::string& key) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw Error("'" + key + "' must be a string");
}

Polynomial parse_field_poly(const std::string& what, const std::string& text, const Ring& ring) {
  try {
    return parse_poly(text, ring);
  } catch (const ParseError& e) {
    throw Error(what + ": " + e.what());
  }
}

void read_config(const Json& c, RlfgConfig& config) {
  if (!c.is_object()) throw Error("'config' must be an object");
  for (const auto& [key, value] : c.items()) {
    if (key == "mode") {
      config.mode = parse_search_mode(text_of(value, key));
    } else if (key == "backend") {
      config.qe.backend = parse_backend(text_of(value, key));
    } else if (key == "grid") {
      config.grid.clear();
      for (const auto& axis : string_list(value, key)) config.grid.push_back(parse_grid_axis(axis));
    } else if (key == "radii") {
      config.radii.clear();
      for (const auto& r : string_list(value, key)) config.radii.push_back(parse_rational(r));
    } else if (key == "radius") {
      config.fixed_radius = parse_rational(text_of(value, key));
    } else if (key == "whole_space") {
      if (!value.is_boolean()) throw Error("'whole_space' must be a boolean");
      config.whole_space = value.get<bool>();
    } else if (key == "max_order") {
      if (!value.is_number_unsigned()) throw Error("'max_order' must be a non-negative integer");
      config.max_order = value.get<unsigned>();
    } else if (key == "budget_ms") {
      if (!value.is_number_unsigned()) throw Error("'budget_ms' must be a non-negative integer");
      config.qe.budget = std::chrono::milliseconds(value.get<long long>());
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw Error("'seed' must be a non-negative integer");
      config.falsifier.seed = value.get<std::uint64_t>();
    } else if (key == "solver") {
      config.qe.solver.path = text_of(value, key);
    } else {
      throw Error("unknown config key '" + key + "'");
    }
  }
}

}  // namespace

SystemDefinition parse_system(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(std::string("system file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("system file must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    static const std::set<std::string> known{"vars", "field", "template", "params", "config"};
    if (!known.count(key)) throw Error("unknown system key '" + key + "'");
  }
  if (!j.contains("vars") || !j.contains("field")) throw Error("system file needs 'vars' and 'field'");
  const Ring state(string_list(j["vars"], "vars"));
  if (state.size() == 0) throw Error("'vars' must not be empty");
  std::set<std::string> seen;
  for (const auto& v : state.names()) {
    if (!seen.insert(v).second) throw Error("state variable '" + v + "' declared twice");
  }

  const Json& field = j["field"];
  if (!field.is_object()) throw Error("'field' must map each state variable to an expression");
  for (const auto& [key, _] : field.items()) {
    if (!state.index_of(key)) throw Error("'field' has an entry for undeclared variable '" + key + "'");
  }
  std::vector<Polynomial> components;
  for (const auto& v : state.names()) {
    if (!field.contains(v)) throw Error("'field' has no entry for '" + v + "'");
    components.push_back(parse_field_poly("field entry '" + v + "'", text_of(field[v], v), state));
  }
  SystemDefinition sys{VectorField(state, std::move(components)), std::nullopt, RlfgConfig{}};

  const Ring params(j.contains("params") ? string_list(j["params"], "params") : std::vector<std::string>{});
  if (j.contains("template")) {
    const Ring full = concat(params, state);
    sys.templ = Template(params, state, parse_field_poly("template", text_of(j["template"], "template"), full));
  } else if (params.size() > 0) {
    throw Error("'params' given without a 'template'");
  }
  if (j.contains("config")) read_config(j["config"], sys.config);
  return sys;
}

SystemDefinition load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open system file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

}  // namespace rlfgen
