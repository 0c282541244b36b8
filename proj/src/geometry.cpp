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

#include "rydsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rydsim/error.hpp"
#include "rydsim/units.hpp"

namespace rydsim {

Layout::Layout(std::vector<Atom> atoms) {
  std::stable_partition(atoms.begin(), atoms.end(),
                        [](const Atom& a) { return a.role == AtomRole::Control; });
  atoms_ = std::move(atoms);
  num_controls_ = static_cast<int>(std::count_if(
      atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.role == AtomRole::Control; }));
  if (num_controls_ < 1 || num_targets() < 1) {
    throw std::invalid_argument("layout needs at least one control and one target atom");
  }
  for (int a = 0; a < size(); ++a) {
    if (std::abs(atom(a).position_um.z()) > 1e-12) {
      throw std::invalid_argument("atoms must lie in the z = 0 plane");
    }
    for (int b = a + 1; b < size(); ++b) {
      if (!(distance(a, b) > 0.0)) throw std::invalid_argument("two atoms share a position");
    }
  }
}

double Layout::distance(int a, int b) const {
  return (atom(a).position_um - atom(b).position_um).norm();
}

std::string_view to_string(LayoutKind kind) {
  switch (kind) {
    case LayoutKind::Single: return "single";
    case LayoutKind::Linear: return "linear";
    case LayoutKind::Triangle: return "triangle";
    case LayoutKind::Square: return "square";
    case LayoutKind::Rhombus: return "rhombus";
  }
  return "?";
}

LayoutKind parse_layout_kind(std::string_view name) {
  for (auto k : {LayoutKind::Single, LayoutKind::Linear, LayoutKind::Triangle, LayoutKind::Square,
                 LayoutKind::Rhombus}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown layout kind '" + std::string(name) + "'");
}

LayoutKind cnot_layout_for(int targets) {
  switch (targets) {
    case 1: return LayoutKind::Single;
    case 2: return LayoutKind::Linear;
    case 3: return LayoutKind::Triangle;
    case 4: return LayoutKind::Square;
    default: throw std::invalid_argument("no standard CNOT layout for this many targets");
  }
}

Layout standard_layout(LayoutKind kind, double scale_um, SpeciesMap species) {
  if (!(scale_um > 0.0)) throw std::invalid_argument("layout scale must be positive");
  const double r = scale_um;
  auto control = [&](double x, double y) {
    return Atom{AtomRole::Control, species.control, {x, y, 0.0}};
  };
  auto target = [&](double x, double y) {
    return Atom{AtomRole::Target, species.target, {x, y, 0.0}};
  };
  switch (kind) {
    case LayoutKind::Single:
      return Layout({control(0, 0), target(r, 0)});
    case LayoutKind::Linear:
      return Layout({control(0, 0), target(r, 0), target(-r, 0)});
    case LayoutKind::Triangle: {
      const double d = r / std::sqrt(2.0);
      return Layout({control(0, 0), target(-r, 0), target(0, r), target(d, -d)});
    }
    case LayoutKind::Square:
      return Layout({control(0, 0), target(r, 0), target(-r, 0), target(0, r), target(0, -r)});
    case LayoutKind::Rhombus:
      // Controls on the short diagonal, targets on the long one: R_TT = 2 R_CC.
      return Layout({control(0, r / 2), control(0, -r / 2), target(r, 0), target(-r, 0)});
  }
  throw std::invalid_argument("unknown layout kind");
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::DipoleDipole: return "dipole-dipole";
    case Regime::VanDerWaals: return "van-der-waals";
    case Regime::AutoCrossover: return "auto-crossover";
  }
  return "?";
}

Regime parse_regime(std::string_view name) {
  for (auto r : {Regime::DipoleDipole, Regime::VanDerWaals, Regime::AutoCrossover}) {
    if (name == to_string(r)) return r;
  }
  throw std::invalid_argument("unknown interaction regime '" + std::string(name) + "'");
}

void PairCoefficients::validate() const {
  if (!(c3 > 0.0 && c6 > 0.0 && le_roy_radius > 0.0 && vdw_radius > 0.0)) {
    throw std::invalid_argument("pair coefficients and radii must be positive");
  }
  if (!(le_roy_radius < vdw_radius)) {
    throw std::invalid_argument("Le Roy radius must be below the van der Waals radius");
  }
}

PairCoefficients builtin_pair(Element a, Element b) {
  if (a > b) std::swap(a, b);
  if (a == Element::Rb87 && b == Element::Rb87) {
    return {a, b, 4.20, 2036.0, 1.8, 4.5, Regime::VanDerWaals};
  }
  if (a == Element::Cs133 && b == Element::Cs133) {
    return {a, b, 1.92, 2364.0, 2.0, 9.5, Regime::DipoleDipole};
  }
  return {a, b, 14.25, 2484.0, 1.9, 31.5, Regime::DipoleDipole};
}

Potential pair_potential(const PairCoefficients& coeffs, double r_um) {
  if (!(r_um > coeffs.le_roy_radius)) {
    std::ostringstream msg;
    msg << to_string(coeffs.first) << "-" << to_string(coeffs.second) << " distance " << r_um
        << " um is not above the Le Roy radius " << coeffs.le_roy_radius
        << " um; asymptotic potential invalid";
    throw ValidityError(msg.str(), r_um);
  }
  Potential out;
  out.regime = coeffs.policy;
  if (coeffs.policy == Regime::AutoCrossover) {
    out.regime = r_um < coeffs.vdw_radius ? Regime::DipoleDipole : Regime::VanDerWaals;
  }
  if (out.regime == Regime::DipoleDipole) {
    out.value = units::ghz_2pi(coeffs.c3 / (r_um * r_um * r_um));
    if (r_um >= coeffs.vdw_radius) {
      out.warning = "dipole-dipole form used beyond the van der Waals radius";
    }
  } else {
    const double r3 = r_um * r_um * r_um;
    out.value = units::ghz_2pi(coeffs.c6 / (r3 * r3));
    if (r_um < coeffs.vdw_radius) {
      out.warning = "van der Waals form used inside the van der Waals radius";
    }
  }
  return out;
}

std::pair<Element, Element> CoefficientSet::key(Element a, Element b) {
  return a <= b ? std::pair{a, b} : std::pair{b, a};
}

CoefficientSet CoefficientSet::builtin() {
  CoefficientSet set;
  set.set(builtin_pair(Element::Rb87, Element::Rb87));
  set.set(builtin_pair(Element::Cs133, Element::Cs133));
  set.set(builtin_pair(Element::Rb87, Element::Cs133));
  return set;
}

void CoefficientSet::set(PairCoefficients coeffs) {
  coeffs.validate();
  const auto k = key(coeffs.first, coeffs.second);
  coeffs.first = k.first;
  coeffs.second = k.second;
  pairs_[k] = coeffs;
}

bool CoefficientSet::contains(Element a, Element b) const { return pairs_.contains(key(a, b)); }

const PairCoefficients& CoefficientSet::get(Element a, Element b) const {
  const auto it = pairs_.find(key(a, b));
  if (it == pairs_.end()) {
    throw std::invalid_argument("no coefficients for pair " + std::string(to_string(a)) + "-" +
                                std::string(to_string(b)));
  }
  return it->second;
}

InteractionTable interaction_table(const Layout& layout, const CoefficientSet& coeffs,
                                   InteractionFlags flags) {
  InteractionTable table;
  table.controls = layout.num_controls();
  table.targets = layout.num_targets();
  table.energy = Eigen::MatrixXd::Zero(layout.size(), layout.size());
  for (int a = 0; a < layout.size(); ++a) {
    for (int b = a + 1; b < layout.size(); ++b) {
      const auto ra = layout.atom(a).role, rb = layout.atom(b).role;
      const bool enabled = (ra == AtomRole::Control && rb == AtomRole::Control)
                               ? flags.control_control
                           : (ra == AtomRole::Target && rb == AtomRole::Target)
                               ? flags.target_target
                               : flags.control_target;
      if (!enabled) continue;
      const auto& c = coeffs.get(layout.atom(a).species, layout.atom(b).species);
      const auto v = pair_potential(c, layout.distance(a, b));
      if (v.warning) {
        std::ostringstream msg;
        msg << "atoms " << a << "-" << b << " at " << layout.distance(a, b)
            << " um: " << *v.warning;
        table.warnings.push_back(msg.str());
      }
      table.energy(a, b) = table.energy(b, a) = v.value;
    }
  }
  return table;
}

}  // namespace rydsim
