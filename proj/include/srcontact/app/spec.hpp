#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "srcontact/contact/structure.hpp"

namespace srcontact {

/// Declarative description of a manifold chart, as read from a spec file.
struct ManifoldSpec {
  std::string name;
  std::string description;
  std::vector<std::string> coordinates;
  ParamMap params;
  std::vector<std::string> theta;
  std::vector<std::vector<std::string>> g;
  std::vector<Interval> domain;
  int samples = 100;
  std::uint64_t seed = 1;

  int dim() const noexcept { return static_cast<int>(coordinates.size()); }
};

namespace spec_detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw SpecError(path + ": " + what);
}

inline bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

inline const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("$.") + key, "missing required field");
  return *it;
}

inline std::string expression_text(const nlohmann::json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return printer_detail::format_number(v.get<double>());
  fail(path, "expected an expression string");
}

inline Expr parse_at(const std::string& text, const std::string& path, const ManifoldSpec& s,
                     const ParamMap& params) {
  try {
    return parse_expr(text, s.coordinates, params);
  } catch (const ParseError& e) {
    throw SpecError(path + ": " + e.what() + " in \"" + text + "\"");
  }
}

}  // namespace spec_detail

/// Check names, shapes and expressions; throws SpecError naming the field.
inline void validate(const ManifoldSpec& s) {
  using spec_detail::fail;
  const int d = s.dim();
  if (s.name.empty()) fail("$.name", "must be a non-empty string");
  if (d < 3 || d % 2 == 0 || d > kMaxJetDim) {
    fail("$.coordinates", "need an odd number of coordinates between 3 and " +
                              std::to_string(kMaxJetDim) + ", got " + std::to_string(d));
  }
  std::set<std::string> names;
  for (int i = 0; i < d; ++i) {
    const std::string path = "$.coordinates[" + std::to_string(i) + "]";
    const std::string& c = s.coordinates[i];
    if (!spec_detail::valid_identifier(c)) fail(path, "'" + c + "' is not an identifier");
    if (is_reserved_name(c)) fail(path, "'" + c + "' is a reserved name");
    if (!names.insert(c).second) fail(path, "duplicate coordinate '" + c + "'");
  }
  for (const auto& [p, v] : s.params) {
    const std::string path = "$.params." + p;
    if (!spec_detail::valid_identifier(p)) fail(path, "not an identifier");
    if (is_reserved_name(p)) fail(path, "reserved name");
    if (names.count(p)) fail(path, "parameter shadows a coordinate");
    if (!std::isfinite(v)) fail(path, "value must be finite");
  }
  if (static_cast<int>(s.theta.size()) != d) {
    fail("$.theta", "expected " + std::to_string(d) + " components, got " +
                        std::to_string(s.theta.size()));
  }
  for (int i = 0; i < d; ++i) {
    spec_detail::parse_at(s.theta[i], "$.theta[" + std::to_string(i) + "]", s, s.params);
  }
  if (static_cast<int>(s.g.size()) != d) fail("$.g", "expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
  std::vector<std::string> printed(d * d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(s.g[i].size()) != d) {
      fail("$.g[" + std::to_string(i) + "]", "expected " + std::to_string(d) + " entries");
    }
    for (int j = 0; j < d; ++j) {
      const std::string path = "$.g[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      printed[i * d + j] = to_string(spec_detail::parse_at(s.g[i][j], path, s, s.params), s.coordinates);
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (printed[i * d + j] != printed[j * d + i]) {
        fail("$.g[" + std::to_string(i) + "][" + std::to_string(j) + "]",
             "g is not symmetric: '" + s.g[i][j] + "' vs '" + s.g[j][i] + "'");
      }
    }
  }
  if (static_cast<int>(s.domain.size()) != d) {
    fail("$.domain", "expected " + std::to_string(d) + " intervals");
  }
  for (int i = 0; i < d; ++i) {
    const Interval& iv = s.domain[i];
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi)) {
      fail("$.domain[" + std::to_string(i) + "]", "need finite lo < hi");
    }
  }
  if (s.samples <= 0) fail("$.samples", "must be positive");
}

/// Resolve parameter overrides and build the structure.
inline ContactStructure build(const ManifoldSpec& spec, const ParamMap& overrides = {}) {
  ManifoldSpec s = spec;
  for (const auto& [k, v] : overrides) {
    auto it = s.params.find(k);
    if (it == s.params.end()) {
      std::string known;
      for (const auto& [p, _] : s.params) known += (known.empty() ? "" : ", ") + p;
      throw SpecError("unknown parameter '" + k + "' for " + s.name +
                      (known.empty() ? " (it has none)" : " (known: " + known + ")"));
    }
    it->second = v;
  }
  validate(s);
  const int d = s.dim();
  std::vector<Expr> theta;
  for (int i = 0; i < d; ++i) {
    theta.push_back(spec_detail::parse_at(s.theta[i], "$.theta[" + std::to_string(i) + "]", s, s.params));
  }
  std::vector<Expr> g;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      g.push_back(spec_detail::parse_at(s.g[i][j], "$.g", s, s.params));
    }
  }
  return ContactStructure(s.coordinates, FormField(d, 1, std::move(theta)), std::move(g), s.domain);
}

/// Read a spec from parsed JSON. Errors carry a JSON path to the field.
inline ManifoldSpec spec_from_json(const nlohmann::json& j) {
  using spec_detail::fail;
  using spec_detail::field;
  if (!j.is_object()) fail("$", "spec must be a JSON object");
  const auto& schema = field(j, "schema");
  if (!schema.is_number_integer() || schema.get<int>() != 1) fail("$.schema", "must be 1");

  ManifoldSpec s;
  const auto& name = field(j, "name");
  if (!name.is_string()) fail("$.name", "must be a string");
  s.name = name.get<std::string>();
  if (auto it = j.find("description"); it != j.end()) {
    if (!it->is_string()) fail("$.description", "must be a string");
    s.description = it->get<std::string>();
  }

  const auto& coords = field(j, "coordinates");
  if (!coords.is_array()) fail("$.coordinates", "must be an array of names");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!coords[i].is_string()) fail("$.coordinates[" + std::to_string(i) + "]", "must be a string");
    s.coordinates.push_back(coords[i].get<std::string>());
  }

  if (auto it = j.find("params"); it != j.end()) {
    if (!it->is_object()) fail("$.params", "must be an object of numbers");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_number()) fail("$.params." + k, "must be a number");
      s.params[k] = v.get<double>();
    }
  }

  const auto& theta = field(j, "theta");
  if (!theta.is_array()) fail("$.theta", "must be an array of expressions");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    s.theta.push_back(spec_detail::expression_text(theta[i], "$.theta[" + std::to_string(i) + "]"));
  }

  const auto& g = field(j, "g");
  if (!g.is_array()) fail("$.g", "must be a matrix of expressions");
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::string row_path = "$.g[" + std::to_string(i) + "]";
    if (!g[i].is_array()) fail(row_path, "must be an array");
    std::vector<std::string> row;
    for (std::size_t k = 0; k < g[i].size(); ++k) {
      row.push_back(spec_detail::expression_text(g[i][k], row_path + "[" + std::to_string(k) + "]"));
    }
    s.g.push_back(std::move(row));
  }

  const auto& domain = field(j, "domain");
  if (!domain.is_array()) fail("$.domain", "must be an array of [lo, hi] pairs");
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const std::string path = "$.domain[" + std::to_string(i) + "]";
    if (!domain[i].is_array() || domain[i].size() != 2 || !domain[i][0].is_number() ||
        !domain[i][1].is_number()) {
      fail(path, "must be a pair of numbers");
    }
    s.domain.push_back({domain[i][0].get<double>(), domain[i][1].get<double>()});
  }

  if (auto it = j.find("samples"); it != j.end()) {
    if (!it->is_number_integer()) fail("$.samples", "must be an integer");
    s.samples = it->get<int>();
  }
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) fail("$.seed", "must be a non-negative integer");
    s.seed = it->get<std::uint64_t>();
  }
  validate(s);
  return s;
}

inline ManifoldSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(path + ": invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  try {
    return spec_from_json(j);
  } catch (const SpecError& e) {
    throw SpecError(path + ": " + e.what());
  }
}

inline nlohmann::ordered_json to_json(const ManifoldSpec& s) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["name"] = s.name;
  if (!s.description.empty()) j["description"] = s.description;
  j["coordinates"] = s.coordinates;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.params) j["params"][k] = v;
  j["theta"] = s.theta;
  j["g"] = s.g;
  j["domain"] = nlohmann::ordered_json::array();
  for (const auto& iv : s.domain) j["domain"].push_back({iv.lo, iv.hi});
  j["samples"] = s.samples;
  j["seed"] = s.seed;
  return j;
}

}  // namespace srcontact
