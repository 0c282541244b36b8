// Copyright 2026 The rydsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "rydsim/error.hpp"
#include "rydsim/units.hpp"

// Schema helpers shared by the species data file and the run config.
namespace rydsim::yaml {

struct UnitSuffix {
  std::string_view suffix;
  double to_si;
};

inline constexpr UnitSuffix kTimeUnits[] = {
    {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}};
inline constexpr UnitSuffix kAngularUnits[] = {
    {"MHz_2pi", units::mhz_2pi(1.0)}, {"GHz_2pi", units::ghz_2pi(1.0)}};
inline constexpr UnitSuffix kLengthUnits[] = {{"um", 1.0}};

inline int line_of(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

[[noreturn]] inline void fail(const YAML::Node& node, const std::string& what) {
  throw ConfigError(what, line_of(node));
}

inline void expect_map(const YAML::Node& node, std::string_view what) {
  if (!node.IsMap()) fail(node, std::string(what) + " must be a mapping");
}

// Rejects keys not in `allowed`. Quantity keys are given as base names and
// expanded against the unit table, so `lifetime` allows `lifetime_ns` etc.
template <std::size_t M>
void check_keys(const YAML::Node& node, std::string_view what,
                std::initializer_list<std::string_view> plain,
                std::initializer_list<std::string_view> quantities = {},
                const UnitSuffix (&units)[M] = kTimeUnits) {
  expect_map(node, what);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    bool ok = false;
    for (auto p : plain) ok = ok || key == p;
    for (auto q : quantities)
      for (const auto& u : units)
        ok = ok || key == std::string(q) + "_" + std::string(u.suffix);
    if (!ok) fail(kv.first, "unknown key '" + key + "' in " + std::string(what));
  }
}

inline void check_keys(const YAML::Node& node, std::string_view what,
                       std::initializer_list<std::string_view> plain) {
  check_keys(node, what, plain, {}, kTimeUnits);
}

inline double as_double(const YAML::Node& node, std::string_view key) {
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    fail(node, "'" + std::string(key) + "' must be a number");
  }
}

inline std::string as_string(const YAML::Node& node, std::string_view key) {
  if (!node.IsScalar()) fail(node, "'" + std::string(key) + "' must be a scalar");
  return node.as<std::string>();
}

inline bool as_bool(const YAML::Node& node, std::string_view key) {
  try {
    return node.as<bool>();
  } catch (const YAML::Exception&) {
    fail(node, "'" + std::string(key) + "' must be true or false");
  }
}

inline int as_int(const YAML::Node& node, std::string_view key) {
  try {
    return node.as<int>();
  } catch (const YAML::Exception&) {
    fail(node, "'" + std::string(key) + "' must be an integer");
  }
}

// Reads `<base>_<unit>` and converts to SI. At most one unit variant may be
// present.
template <std::size_t M>
std::optional<double> quantity(const YAML::Node& map, std::string_view base,
                               const UnitSuffix (&units)[M]) {
  std::optional<double> out;
  for (const auto& u : units) {
    const std::string key = std::string(base) + "_" + std::string(u.suffix);
    if (const auto v = map[key]) {
      if (out) fail(v, "'" + std::string(base) + "' given with more than one unit");
      out = as_double(v, key) * u.to_si;
    }
  }
  return out;
}

}  // namespace rydsim::yaml
