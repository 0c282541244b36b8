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

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace YAML {
class Node;
}

namespace rydsim {

enum class Element : std::uint8_t { Rb87, Cs133 };
enum class Intermediate : std::uint8_t { First, Second };

std::string_view to_string(Element e);
std::string_view to_string(Intermediate i);
Element parse_element(std::string_view name);
Intermediate parse_intermediate(std::string_view name);

// Lifetimes in seconds. An infinite lifetime switches the corresponding
// decay off (rate exactly zero).
struct SpeciesSpec {
  Element name = Element::Rb87;
  std::string rydberg_label;
  double rydberg_lifetime = 0.0;
  std::string intermediate_label;
  double intermediate_lifetime = 0.0;

  bool operator==(const SpeciesSpec&) const = default;
};

// Angular decay rates in s^-1, used as -i*gamma/2 on |r> (control) and
// |P> (target).
struct DecayRates {
  double rydberg = 0.0;
  double intermediate = 0.0;
};

DecayRates decay_rates(const SpeciesSpec& spec);

// Built-in catalogue: Rb 77S1/2 and Cs 81S1/2 Rydberg states, each with the
// first and second resonance P3/2 levels as intermediate state.
SpeciesSpec builtin_species(Element name, Intermediate choice = Intermediate::Second);

class SpeciesRegistry {
 public:
  struct Level {
    std::string label;
    double lifetime = 0.0;
    bool operator==(const Level&) const = default;
  };
  struct Entry {
    Level rydberg;
    std::array<Level, 2> intermediates;  // indexed by Intermediate
    bool operator==(const Entry&) const = default;
  };

  static SpeciesRegistry builtin();
  static SpeciesRegistry from_yaml(const YAML::Node& root);
  static SpeciesRegistry load(const std::string& path);
  std::string to_yaml() const;

  SpeciesSpec lookup(Element name, Intermediate choice) const;
  // Merges entries from a `species:` override node (same schema as the
  // data file, all keys optional).
  void apply_overrides(const YAML::Node& node);

  const std::map<Element, Entry>& entries() const { return entries_; }
  bool operator==(const SpeciesRegistry&) const = default;

  static constexpr int kSchemaVersion = 1;

 private:
  std::map<Element, Entry> entries_;
};

}  // namespace rydsim
