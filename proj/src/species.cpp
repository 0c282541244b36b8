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

#include "rydsim/species.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rydsim/units.hpp"
#include "yaml_util.hpp"

namespace rydsim {

std::string_view to_string(Element e) { return e == Element::Rb87 ? "Rb87" : "Cs133"; }
std::string_view to_string(Intermediate i) { return i == Intermediate::First ? "first" : "second"; }

Element parse_element(std::string_view name) {
  if (name == "Rb87" || name == "Rb") return Element::Rb87;
  if (name == "Cs133" || name == "Cs") return Element::Cs133;
  throw std::invalid_argument("unknown species '" + std::string(name) + "'");
}

Intermediate parse_intermediate(std::string_view name) {
  if (name == "first") return Intermediate::First;
  if (name == "second") return Intermediate::Second;
  throw std::invalid_argument("unknown intermediate choice '" + std::string(name) +
                              "' (expected first or second)");
}

DecayRates decay_rates(const SpeciesSpec& spec) {
  if (!(spec.rydberg_lifetime > 0.0) || !(spec.intermediate_lifetime > 0.0)) {
    throw std::invalid_argument("lifetimes must be positive");
  }
  // 1/inf == 0 exactly, which is how decay is switched off.
  return {1.0 / spec.rydberg_lifetime, 1.0 / spec.intermediate_lifetime};
}

SpeciesRegistry SpeciesRegistry::builtin() {
  SpeciesRegistry reg;
  using units::ns;
  using units::us;
  reg.entries_[Element::Rb87] = Entry{{"77S1/2 mj=+1/2", us(505)},
                                      {{{"5P3/2 mj=3/2", ns(26.4)}, {"6P3/2 mj=3/2", ns(131)}}}};
  reg.entries_[Element::Cs133] = Entry{{"81S1/2 mj=-1/2", us(548)},
                                       {{{"6P3/2 mj=3/2", ns(30.5)}, {"7P3/2 mj=3/2", ns(118)}}}};
  return reg;
}

SpeciesSpec builtin_species(Element name, Intermediate choice) {
  return SpeciesRegistry::builtin().lookup(name, choice);
}

SpeciesSpec SpeciesRegistry::lookup(Element name, Intermediate choice) const {
  const auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw std::invalid_argument("species " + std::string(to_string(name)) + " not in registry");
  }
  const auto& inter = it->second.intermediates[static_cast<std::size_t>(choice)];
  return SpeciesSpec{name, it->second.rydberg.label, it->second.rydberg.lifetime, inter.label,
                     inter.lifetime};
}

namespace {

void read_level(const YAML::Node& node, SpeciesRegistry::Level& level, bool require_all) {
  yaml::check_keys(node, "level", {"label"}, {"lifetime"}, yaml::kTimeUnits);
  if (const auto label = node["label"]) {
    level.label = yaml::as_string(label, "label");
  } else if (require_all) {
    yaml::fail(node, "level is missing 'label'");
  }
  if (const auto t = yaml::quantity(node, "lifetime", yaml::kTimeUnits)) {
    if (!(*t > 0.0)) yaml::fail(node, "lifetime must be positive (use .inf to disable decay)");
    level.lifetime = *t;
  } else if (require_all) {
    yaml::fail(node, "level is missing a lifetime_<unit> key");
  }
}

void read_species(const YAML::Node& species, std::map<Element, SpeciesRegistry::Entry>& entries,
                  bool require_all) {
  yaml::expect_map(species, "species");
  for (const auto& kv : species) {
    Element e{};
    try {
      e = parse_element(kv.first.as<std::string>());
    } catch (const std::invalid_argument& ex) {
      yaml::fail(kv.first, ex.what());
    }
    if (!require_all && !entries.contains(e)) {
      yaml::fail(kv.first, "override for species not in registry");
    }
    auto& entry = entries[e];
    const auto& node = kv.second;
    yaml::check_keys(node, "species entry", {"rydberg", "intermediates"});
    if (const auto r = node["rydberg"]) {
      read_level(r, entry.rydberg, require_all);
    } else if (require_all) {
      yaml::fail(node, "species entry is missing 'rydberg'");
    }
    if (const auto inter = node["intermediates"]) {
      yaml::check_keys(inter, "intermediates", {"first", "second"});
      for (auto choice : {Intermediate::First, Intermediate::Second}) {
        const auto key = std::string(to_string(choice));
        if (const auto lvl = inter[key]) {
          read_level(lvl, entry.intermediates[static_cast<std::size_t>(choice)], require_all);
        } else if (require_all) {
          yaml::fail(inter, "intermediates is missing '" + key + "'");
        }
      }
    } else if (require_all) {
      yaml::fail(node, "species entry is missing 'intermediates'");
    }
  }
}

void emit_level(YAML::Emitter& out, const SpeciesRegistry::Level& level) {
  out << YAML::BeginMap;
  out << YAML::Key << "label" << YAML::Value << YAML::DoubleQuoted << level.label;
  out << YAML::Key << "lifetime_s" << YAML::Value << level.lifetime;
  out << YAML::EndMap;
}

}  // namespace

SpeciesRegistry SpeciesRegistry::from_yaml(const YAML::Node& root) {
  yaml::check_keys(root, "species file", {"schema_version", "species"});
  const auto version = root["schema_version"];
  if (!version) yaml::fail(root, "missing schema_version");
  if (yaml::as_int(version, "schema_version") != kSchemaVersion) {
    yaml::fail(version, "unsupported schema_version");
  }
  const auto species = root["species"];
  if (!species) yaml::fail(root, "missing 'species'");
  SpeciesRegistry reg;
  read_species(species, reg.entries_, true);
  return reg;
}

SpeciesRegistry SpeciesRegistry::load(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::ParserException& ex) {
    throw ConfigError(path + ": " + ex.msg, ex.mark.line + 1);
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot open species file " + path, 0);
  }
  return from_yaml(root);
}

void SpeciesRegistry::apply_overrides(const YAML::Node& node) { read_species(node, entries_, false); }

std::string SpeciesRegistry::to_yaml() const {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "schema_version" << YAML::Value << kSchemaVersion;
  out << YAML::Key << "species" << YAML::Value << YAML::BeginMap;
  for (const auto& [element, entry] : entries_) {
    out << YAML::Key << std::string(to_string(element)) << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "rydberg" << YAML::Value;
    emit_level(out, entry.rydberg);
    out << YAML::Key << "intermediates" << YAML::Value << YAML::BeginMap;
    for (auto choice : {Intermediate::First, Intermediate::Second}) {
      out << YAML::Key << std::string(to_string(choice)) << YAML::Value;
      emit_level(out, entry.intermediates[static_cast<std::size_t>(choice)]);
    }
    out << YAML::EndMap << YAML::EndMap;
  }
  out << YAML::EndMap << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace rydsim
