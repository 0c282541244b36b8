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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rydsim/species.hpp"

namespace rydsim {

enum class AtomRole : std::uint8_t { Control, Target };

struct Atom {
  AtomRole role = AtomRole::Control;
  Element species = Element::Rb87;
  Eigen::Vector3d position_um = Eigen::Vector3d::Zero();
};

// Atom positions with controls stored first, then targets, each in the
// order given. Atoms lie in the z = 0 plane (quantization axis along z,
// theta = pi/2 for every pair).
class Layout {
 public:
  explicit Layout(std::vector<Atom> atoms);

  int num_controls() const { return num_controls_; }
  int num_targets() const { return static_cast<int>(atoms_.size()) - num_controls_; }
  int size() const { return static_cast<int>(atoms_.size()); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Atom& atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  const Atom& control(int i) const { return atom(i); }
  const Atom& target(int j) const { return atom(num_controls_ + j); }
  int control_slot(int i) const { return i; }
  int target_slot(int j) const { return num_controls_ + j; }

  double distance(int a, int b) const;

 private:
  std::vector<Atom> atoms_;
  int num_controls_ = 0;
};

enum class LayoutKind : std::uint8_t { Single, Linear, Triangle, Square, Rhombus };

std::string_view to_string(LayoutKind kind);
LayoutKind parse_layout_kind(std::string_view name);
// Natural layout for a CNOT^N register: single, linear, triangle, square.
LayoutKind cnot_layout_for(int targets);

struct SpeciesMap {
  Element control = Element::Cs133;
  Element target = Element::Rb87;
};

// `scale_um` is the control-target distance R for the CNOT layouts and the
// control-control distance R_CC for the rhombus.
Layout standard_layout(LayoutKind kind, double scale_um, SpeciesMap species);

enum class Regime : std::uint8_t { DipoleDipole, VanDerWaals, AutoCrossover };

std::string_view to_string(Regime regime);
Regime parse_regime(std::string_view name);

// C3 in 2pi*GHz*um^3, C6 in 2pi*GHz*um^6, radii in um.
struct PairCoefficients {
  Element first = Element::Rb87;
  Element second = Element::Rb87;
  double c3 = 0.0;
  double c6 = 0.0;
  double le_roy_radius = 0.0;
  double vdw_radius = 0.0;
  Regime policy = Regime::AutoCrossover;
  double theta = 1.5707963267948966;
  double phi = 0.0;

  void validate() const;
};

PairCoefficients builtin_pair(Element a, Element b);

struct Potential {
  double value = 0.0;  // rad/s
  Regime regime = Regime::DipoleDipole;  // resolved: never AutoCrossover
  std::optional<std::string> warning;
};

// Throws ValidityError for R <= Le Roy radius. A distance on the wrong side
// of the van der Waals radius for a fixed-regime policy yields a warning.
Potential pair_potential(const PairCoefficients& coeffs, double r_um);

class CoefficientSet {
 public:
  static CoefficientSet builtin();
  void set(PairCoefficients coeffs);
  const PairCoefficients& get(Element a, Element b) const;
  bool contains(Element a, Element b) const;
  const std::map<std::pair<Element, Element>, PairCoefficients>& pairs() const { return pairs_; }

 private:
  static std::pair<Element, Element> key(Element a, Element b);
  std::map<std::pair<Element, Element>, PairCoefficients> pairs_;
};

struct InteractionFlags {
  bool control_target = true;
  bool target_target = true;
  bool control_control = true;
};

// Symmetric pair energies (rad/s) indexed by layout slot.
struct InteractionTable {
  int controls = 0;
  int targets = 0;
  Eigen::MatrixXd energy;
  std::vector<std::string> warnings;

  double control_target(int c, int t) const { return energy(c, controls + t); }
  double target_target(int a, int b) const { return energy(controls + a, controls + b); }
  double control_control(int a, int b) const { return energy(a, b); }
};

InteractionTable interaction_table(const Layout& layout, const CoefficientSet& coeffs,
                                   InteractionFlags flags = {});

}  // namespace rydsim
