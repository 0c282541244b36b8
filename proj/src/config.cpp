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

#include "rydsim/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rydsim/units.hpp"
#include "yaml_util.hpp"

namespace rydsim {

namespace {

// Pair coefficients are kept in 2pi*GHz*um^n, so the factors convert to that.
constexpr yaml::UnitSuffix kC3Units[] = {{"GHz_2pi_um3", 1.0}, {"MHz_2pi_um3", 1e-3}};
constexpr yaml::UnitSuffix kC6Units[] = {{"GHz_2pi_um6", 1.0}, {"MHz_2pi_um6", 1e-3}};

template <class Parse>
auto parse_enum(const YAML::Node& node, std::string_view key, Parse parse) {
  try {
    return parse(yaml::as_string(node, key));
  } catch (const std::invalid_argument& ex) {
    yaml::fail(node, ex.what());
  }
}

void read_axis(const YAML::Node& node, std::string_view what, Axis& axis, bool length) {
  if (length) {
    yaml::check_keys(node, what, {"count"}, {"min", "max"}, yaml::kLengthUnits);
    if (auto v = yaml::quantity(node, "min", yaml::kLengthUnits)) axis.min = *v;
    if (auto v = yaml::quantity(node, "max", yaml::kLengthUnits)) axis.max = *v;
  } else {
    yaml::check_keys(node, what, {"min", "max", "count"});
    if (auto v = node["min"]) axis.min = yaml::as_double(v, "min");
    if (auto v = node["max"]) axis.max = yaml::as_double(v, "max");
  }
  if (auto v = node["count"]) axis.count = yaml::as_int(v, "count");
}

void check_pair_keys(const YAML::Node& node) {
  yaml::expect_map(node, "pair");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const bool known = key == "atoms" || key == "regime" || key == "c3_GHz_2pi_um3" ||
                       key == "c3_MHz_2pi_um3" || key == "c6_GHz_2pi_um6" ||
                       key == "c6_MHz_2pi_um6" || key == "le_roy_radius_um" ||
                       key == "vdw_radius_um";
    if (!known) yaml::fail(kv.first, "unknown key '" + key + "' in pair");
  }
}

void read_pairs(const YAML::Node& list, CoefficientSet& pairs) {
  if (!list.IsSequence()) yaml::fail(list, "'pairs' must be a list");
  for (const auto& node : list) {
    check_pair_keys(node);
    const auto atoms = node["atoms"];
    if (!atoms || !atoms.IsSequence() || atoms.size() != 2) {
      yaml::fail(node, "pair needs 'atoms: [<element>, <element>]'");
    }
    const auto a = parse_enum(atoms[0], "atoms", parse_element);
    const auto b = parse_enum(atoms[1], "atoms", parse_element);
    PairCoefficients c = pairs.contains(a, b) ? pairs.get(a, b) : PairCoefficients{a, b};
    if (auto v = yaml::quantity(node, "c3", kC3Units)) c.c3 = *v;
    if (auto v = yaml::quantity(node, "c6", kC6Units)) c.c6 = *v;
    if (auto v = yaml::quantity(node, "le_roy_radius", yaml::kLengthUnits)) c.le_roy_radius = *v;
    if (auto v = yaml::quantity(node, "vdw_radius", yaml::kLengthUnits)) c.vdw_radius = *v;
    if (auto v = node["regime"]) c.policy = parse_enum(v, "regime", parse_regime);
    try {
      pairs.set(c);
    } catch (const std::invalid_argument& ex) {
      yaml::fail(node, ex.what());
    }
  }
}

RunSpec read_spec(const YAML::Node& root) {
  if (root.IsNull()) return preset(GateKind::CnotN);
  yaml::check_keys(root, "config",
                   {"gate", "targets", "layout", "atoms", "intermediate", "decay", "ratio",
                    "fields", "interactions", "pairs", "species_file", "species", "integrator",
                    "target", "sweep", "distance_um"});

  const auto gate = root["gate"] ? parse_enum(root["gate"], "gate", parse_gate_kind)
                                 : GateKind::CnotN;
  int targets = gate == GateKind::C2Not2 ? 2 : 1;
  if (auto v = root["targets"]) {
    targets = yaml::as_int(v, "targets");
    if (gate == GateKind::C2Not2 && targets != 2) yaml::fail(v, "c2not2 has exactly 2 targets");
    if (targets < 1 || targets > 4) yaml::fail(v, "targets must be between 1 and 4");
  }
  RunSpec spec = preset(gate, targets);

  if (auto v = root["layout"]) spec.layout = parse_enum(v, "layout", parse_layout_kind);
  if (auto v = root["atoms"]) {
    yaml::check_keys(v, "atoms", {"control", "target"});
    if (auto c = v["control"]) spec.atoms.control = parse_enum(c, "control", parse_element);
    if (auto t = v["target"]) spec.atoms.target = parse_enum(t, "target", parse_element);
  }
  if (auto v = root["intermediate"]) {
    spec.intermediate = parse_enum(v, "intermediate", parse_intermediate);
  }
  if (auto v = root["decay"]) spec.decay = yaml::as_bool(v, "decay");
  if (auto v = root["distance_um"]) spec.distance_um = yaml::as_double(v, "distance_um");
  if (auto v = root["ratio"]) spec.ratio = yaml::as_double(v, "ratio");

  if (auto f = root["fields"]) {
    yaml::expect_map(f, "fields");
    for (const auto& kv : f) {
      // pi_duration carries a time unit, the rest angular units.
      const auto key = kv.first.as<std::string>();
      bool ok = false;
      for (const auto& u : yaml::kAngularUnits) {
        ok = ok || key == "probe_peak_" + std::string(u.suffix) ||
             key == "detuning_" + std::string(u.suffix);
      }
      for (const auto& u : yaml::kTimeUnits) ok = ok || key == "pi_duration_" + std::string(u.suffix);
      if (!ok) yaml::fail(kv.first, "unknown key '" + key + "' in fields");
    }
    if (auto v = yaml::quantity(f, "probe_peak", yaml::kAngularUnits)) spec.probe_peak = *v;
    if (auto v = yaml::quantity(f, "detuning", yaml::kAngularUnits)) spec.detuning = *v;
    if (auto v = yaml::quantity(f, "pi_duration", yaml::kTimeUnits)) spec.pi_duration = *v;
  }
  if (auto v = root["interactions"]) {
    yaml::check_keys(v, "interactions", {"control_target", "target_target", "control_control"});
    if (auto b = v["control_target"]) spec.interactions.control_target = yaml::as_bool(b, "control_target");
    if (auto b = v["target_target"]) spec.interactions.target_target = yaml::as_bool(b, "target_target");
    if (auto b = v["control_control"]) spec.interactions.control_control = yaml::as_bool(b, "control_control");
  }
  if (auto v = root["pairs"]) read_pairs(v, spec.pairs);

  if (auto v = root["species_file"]) spec.species = SpeciesRegistry::load(yaml::as_string(v, "species_file"));
  if (auto v = root["species"]) spec.species.apply_overrides(v);

  if (auto g = root["integrator"]) {
    yaml::check_keys(g, "integrator", {"method", "stability_limit"},
                     {"pi_step", "raman_step"}, yaml::kTimeUnits);
    if (auto v = g["method"]) spec.integrator.method = parse_enum(v, "method", parse_method);
    if (auto v = yaml::quantity(g, "pi_step", yaml::kTimeUnits)) spec.integrator.pi_step = *v;
    if (auto v = yaml::quantity(g, "raman_step", yaml::kTimeUnits)) spec.integrator.raman_step = *v;
    if (auto v = g["stability_limit"]) {
      spec.integrator.stability_limit = yaml::as_double(v, "stability_limit");
    }
  }
  if (auto v = root["target"]) spec.target = parse_enum(v, "target", parse_target_kind);

  if (auto s = root["sweep"]) {
    yaml::check_keys(s, "sweep", {"distance", "ratio", "jobs"});
    if (auto v = s["distance"]) read_axis(v, "sweep.distance", spec.sweep.distance, true);
    if (auto v = s["ratio"]) read_axis(v, "sweep.ratio", spec.sweep.ratio, false);
    if (auto v = s["jobs"]) spec.jobs = yaml::as_int(v, "jobs");
  }

  try {
    spec.validate();
  } catch (const std::invalid_argument& ex) {
    yaml::fail(root, ex.what());
  }
  return spec;
}

}  // namespace

double Axis::at(int i) const {
  if (count == 1) return min;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

void Axis::validate(const char* name) const {
  const std::string n(name);
  if (count < 1) throw std::invalid_argument(n + " axis count must be >= 1");
  if (count == 1 ? !(min <= max) : !(min < max)) {
    throw std::invalid_argument(n + " axis needs min < max");
  }
}

double SweepGrid::distance_at(std::size_t index) const {
  return distance.at(static_cast<int>(index / static_cast<std::size_t>(ratio.count)));
}

double SweepGrid::ratio_at(std::size_t index) const {
  return ratio.at(static_cast<int>(index % static_cast<std::size_t>(ratio.count)));
}

void SweepGrid::validate() const {
  distance.validate("distance");
  ratio.validate("ratio");
  if (!(distance.min > 0.0)) throw std::invalid_argument("sweep distances must be positive");
  if (ratio.min < 0.0) throw std::invalid_argument("sweep ratios must be non-negative");
}

void RunSpec::validate() const {
  if (gate == GateKind::C2Not2) {
    if (targets != 2) throw std::invalid_argument("c2not2 needs 2 targets");
    if (layout != LayoutKind::Rhombus) throw std::invalid_argument("c2not2 needs the rhombus layout");
  } else {
    if (targets < 1 || targets > 4) throw std::invalid_argument("targets must be 1..4");
    if (layout == LayoutKind::Rhombus) throw std::invalid_argument("rhombus layout is for c2not2");
    const int expected = layout == LayoutKind::Single   ? 1
                         : layout == LayoutKind::Linear ? 2
                         : layout == LayoutKind::Triangle ? 3
                                                          : 4;
    if (expected != targets) {
      throw std::invalid_argument("layout '" + std::string(to_string(layout)) + "' holds " +
                                  std::to_string(expected) + " targets, config asks for " +
                                  std::to_string(targets));
    }
  }
  if (!(distance_um > 0.0)) throw std::invalid_argument("distance_um must be positive");
  if (!(ratio >= 0.0)) throw std::invalid_argument("ratio must be non-negative");
  if (!(probe_peak > 0.0)) throw std::invalid_argument("probe_peak must be positive");
  if (!(detuning > 0.0)) throw std::invalid_argument("detuning must be positive");
  if (!(pi_duration > 0.0)) throw std::invalid_argument("pi_duration must be positive");
  if (jobs < 0) throw std::invalid_argument("jobs must be >= 0");
  integrator.validate(pi_duration);
  sweep.validate();
}

RunSpec preset(GateKind gate, int targets) {
  RunSpec spec;
  spec.gate = gate;
  spec.detuning = units::mhz_2pi(1200.0);
  if (gate == GateKind::C2Not2) {
    spec.targets = 2;
    spec.layout = LayoutKind::Rhombus;
    spec.probe_peak = units::mhz_2pi(20.0);
    spec.distance_um = 2.6;
    spec.sweep = {{2.2, 4.0, 25}, {1.0, 4.0, 25}};
  } else {
    spec.targets = targets;
    spec.layout = cnot_layout_for(targets);
    spec.probe_peak = units::mhz_2pi(50.0);
    spec.distance_um = 8.0;
    spec.sweep = {{2.5, 10.0, 25}, {1.0, 4.0, 25}};
  }
  return spec;
}

RunSpec parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& ex) {
    throw ConfigError(ex.msg, ex.mark.line + 1);
  }
  return read_spec(root);
}

RunSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path, 0);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& ex) {
    throw ConfigError(path + ": " + ex.what(), 0);
  }
}

Layout build_layout(const RunSpec& spec, double distance_um) {
  return standard_layout(spec.layout, distance_um, spec.atoms);
}

ModelConfig build_model(const RunSpec& spec, double distance_um, double ratio) {
  const Layout layout = build_layout(spec, distance_um);
  ModelConfig c;
  c.controls = layout.num_controls();
  c.targets = layout.num_targets();
  c.probe_peak = spec.probe_peak;
  c.detuning = spec.detuning;
  c.coupling = ratio * spec.probe_peak;
  c.pi_duration = spec.pi_duration;
  c.interactions = interaction_table(layout, spec.pairs, spec.interactions);
  for (int i = 0; i < c.controls; ++i) {
    const auto rates =
        decay_rates(spec.species.lookup(layout.control(i).species, spec.intermediate));
    c.control_decay.push_back(spec.decay ? rates.rydberg : 0.0);
  }
  for (int j = 0; j < c.targets; ++j) {
    const auto rates =
        decay_rates(spec.species.lookup(layout.target(j).species, spec.intermediate));
    c.target_decay.push_back(spec.decay ? rates.intermediate : 0.0);
  }
  c.validate();
  return c;
}

nlohmann::ordered_json to_json(const RunSpec& spec) {
  using json = nlohmann::ordered_json;
  json j;
  j["gate"] = to_string(spec.gate);
  j["targets"] = spec.targets;
  j["layout"] = to_string(spec.layout);
  j["atoms"] = {{"control", to_string(spec.atoms.control)},
                {"target", to_string(spec.atoms.target)}};
  j["intermediate"] = to_string(spec.intermediate);
  j["decay"] = spec.decay;
  j["distance_um"] = spec.distance_um;
  j["ratio"] = spec.ratio;
  j["probe_peak_rad_s"] = spec.probe_peak;
  j["detuning_rad_s"] = spec.detuning;
  j["pi_duration_s"] = spec.pi_duration;
  j["interactions"] = {{"control_target", spec.interactions.control_target},
                       {"target_target", spec.interactions.target_target},
                       {"control_control", spec.interactions.control_control}};
  json pairs = json::array();
  for (const auto& [key, c] : spec.pairs.pairs()) {
    pairs.push_back({{"atoms", {to_string(c.first), to_string(c.second)}},
                     {"c3_GHz_2pi_um3", c.c3},
                     {"c6_GHz_2pi_um6", c.c6},
                     {"le_roy_radius_um", c.le_roy_radius},
                     {"vdw_radius_um", c.vdw_radius},
                     {"regime", to_string(c.policy)}});
  }
  j["pairs"] = pairs;
  json species = json::object();
  for (const auto& [element, entry] : spec.species.entries()) {
    const auto& inter = entry.intermediates;
    species[std::string(to_string(element))] = {
        {"rydberg", {{"label", entry.rydberg.label}, {"lifetime_s", entry.rydberg.lifetime}}},
        {"first", {{"label", inter[0].label}, {"lifetime_s", inter[0].lifetime}}},
        {"second", {{"label", inter[1].label}, {"lifetime_s", inter[1].lifetime}}}};
  }
  j["species"] = species;
  j["integrator"] = {{"method", to_string(spec.integrator.method)},
                     {"pi_step_s", spec.integrator.pi_step},
                     {"raman_step_s", spec.integrator.raman_step},
                     {"stability_limit", spec.integrator.stability_limit}};
  j["target"] = to_string(spec.target);
  j["sweep"] = {{"distance_um", {spec.sweep.distance.min, spec.sweep.distance.max,
                                 spec.sweep.distance.count}},
                {"ratio", {spec.sweep.ratio.min, spec.sweep.ratio.max, spec.sweep.ratio.count}}};
  return j;
}

std::string config_hash(const RunSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : to_json(spec).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rydsim
