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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rydsim/fidelity.hpp"
#include "rydsim/geometry.hpp"
#include "rydsim/hamiltonian.hpp"
#include "rydsim/propagator.hpp"
#include "rydsim/species.hpp"

namespace rydsim {

// Inclusive, evenly spaced axis. A single-point axis has min == max.
struct Axis {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  double at(int i) const;
  void validate(const char* name) const;
};

// R axis (um; R_CT for CNOT^N, R_CC for C2NOT2) by Omega_c/Omega_p axis.
struct SweepGrid {
  Axis distance;
  Axis ratio;

  std::size_t size() const {
    return static_cast<std::size_t>(distance.count) * static_cast<std::size_t>(ratio.count);
  }
  // Row-major: distance outer, ratio inner.
  double distance_at(std::size_t index) const;
  double ratio_at(std::size_t index) const;
  void validate() const;
};

// Fully resolved run description. Fields are in SI / rad s^-1 except
// distances, which stay in um as everywhere else in the geometry code.
struct RunSpec {
  GateKind gate = GateKind::CnotN;
  int targets = 1;
  LayoutKind layout = LayoutKind::Single;
  SpeciesMap atoms;
  Intermediate intermediate = Intermediate::Second;
  bool decay = true;

  double distance_um = 8.0;  // R_CT (CNOT^N) or R_CC (C2NOT2)
  double ratio = 3.0;        // Omega_c / Omega_p

  double probe_peak = 0.0;
  double detuning = 0.0;
  double pi_duration = 10e-9;

  InteractionFlags interactions;
  CoefficientSet pairs = CoefficientSet::builtin();
  SpeciesRegistry species = SpeciesRegistry::builtin();
  IntegratorOptions integrator;
  TargetKind target = TargetKind::Ghz;

  SweepGrid sweep;
  int jobs = 0;  // 0: one worker per hardware thread

  int controls() const { return gate == GateKind::C2Not2 ? 2 : 1; }
  void validate() const;
};

// Defaults for a gate: CNOT^N uses Omega_p = 2pi x 50 MHz, Delta = 2pi x
// 1200 MHz and the natural layout for `targets`; C2NOT2 uses Omega_p =
// 2pi x 20 MHz on the rhombus.
RunSpec preset(GateKind gate, int targets = 1);

// YAML run configuration; throws ConfigError with a line number on any
// schema violation (unknown key, bad unit suffix, wrong type).
RunSpec parse_config(const std::string& text);
RunSpec load_config(const std::string& path);

Layout build_layout(const RunSpec& spec, double distance_um);
// Throws ValidityError when a pair sits at or below its Le Roy radius.
ModelConfig build_model(const RunSpec& spec, double distance_um, double ratio);
inline ModelConfig build_model(const RunSpec& spec) {
  return build_model(spec, spec.distance_um, spec.ratio);
}

// Canonical JSON form (fixed key order, SI values) and its FNV-1a hash.
nlohmann::ordered_json to_json(const RunSpec& spec);
std::string config_hash(const RunSpec& spec);

}  // namespace rydsim
