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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>
#include <yaml-cpp/yaml.h>

#include "rydsim/error.hpp"
#include "rydsim/species.hpp"

using namespace rydsim;

TEST(Species, BuiltinLifetimes) {
  const auto rb = builtin_species(Element::Rb87, Intermediate::Second);
  EXPECT_DOUBLE_EQ(rb.rydberg_lifetime, 505e-6);
  EXPECT_DOUBLE_EQ(rb.intermediate_lifetime, 0.131e-6);
  EXPECT_DOUBLE_EQ(builtin_species(Element::Rb87, Intermediate::First).intermediate_lifetime, 26.4e-9);
  const auto cs = builtin_species(Element::Cs133, Intermediate::Second);
  EXPECT_DOUBLE_EQ(cs.rydberg_lifetime, 548e-6);
  EXPECT_DOUBLE_EQ(cs.intermediate_lifetime, 0.118e-6);
  EXPECT_DOUBLE_EQ(builtin_species(Element::Cs133, Intermediate::First).intermediate_lifetime, 30.5e-9);
}

TEST(Species, DefaultIntermediateIsSecondResonance) {
  EXPECT_EQ(builtin_species(Element::Rb87), builtin_species(Element::Rb87, Intermediate::Second));
}

TEST(Species, DecayRateIsInverseLifetime) {
  const auto r = decay_rates(builtin_species(Element::Rb87, Intermediate::First));
  EXPECT_DOUBLE_EQ(r.rydberg, 1.0 / 505e-6);
  EXPECT_DOUBLE_EQ(r.intermediate, 1.0 / 26.4e-9);
}

TEST(Species, InfiniteLifetimeDisablesDecay) {
  auto s = builtin_species(Element::Cs133);
  s.rydberg_lifetime = std::numeric_limits<double>::infinity();
  EXPECT_EQ(decay_rates(s).rydberg, 0.0);
}

TEST(Species, FirstIntermediateDecaysFaster) {
  for (auto e : {Element::Rb87, Element::Cs133}) {
    EXPECT_GT(decay_rates(builtin_species(e, Intermediate::First)).intermediate,
              decay_rates(builtin_species(e, Intermediate::Second)).intermediate);
  }
}

TEST(Species, DataFileMatchesBuiltin) {
  const auto loaded = SpeciesRegistry::load(std::string(RYDSIM_DATA_DIR) + "/species.yaml");
  EXPECT_EQ(loaded, SpeciesRegistry::builtin());
}

TEST(Species, YamlRoundTrip) {
  const auto reg = SpeciesRegistry::builtin();
  EXPECT_EQ(SpeciesRegistry::from_yaml(YAML::Load(reg.to_yaml())), reg);
}

TEST(Species, LookupCombinesLevels) {
  const auto s = SpeciesRegistry::builtin().lookup(Element::Cs133, Intermediate::First);
  EXPECT_EQ(s.name, Element::Cs133);
  EXPECT_EQ(s, builtin_species(Element::Cs133, Intermediate::First));
}

TEST(Species, OverridesMergeSingleFields) {
  auto reg = SpeciesRegistry::builtin();
  reg.apply_overrides(YAML::Load("Rb87:\n  rydberg:\n    lifetime_us: 100\n"));
  const auto s = reg.lookup(Element::Rb87, Intermediate::Second);
  EXPECT_DOUBLE_EQ(s.rydberg_lifetime, 100e-6);
  EXPECT_DOUBLE_EQ(s.intermediate_lifetime, 0.131e-6);
  EXPECT_EQ(s.rydberg_label, "77S1/2 mj=+1/2");
}

TEST(Species, OverrideInfinityDisablesDecay) {
  auto reg = SpeciesRegistry::builtin();
  reg.apply_overrides(YAML::Load("Cs133:\n  rydberg:\n    lifetime_s: .inf\n"));
  EXPECT_EQ(decay_rates(reg.lookup(Element::Cs133, Intermediate::Second)).rydberg, 0.0);
}

TEST(Species, SchemaErrorsCarryLineNumbers) {
  const char* bad_unit =
      "schema_version: 1\n"
      "species:\n"
      "  Rb87:\n"
      "    rydberg:\n"
      "      label: x\n"
      "      lifetime_min: 3\n";
  try {
    SpeciesRegistry::from_yaml(YAML::Load(bad_unit));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 6);
    EXPECT_NE(std::string(e.what()).find("lifetime_min"), std::string::npos);
  }
}

TEST(Species, SchemaRejectsBadInput) {
  EXPECT_THROW(SpeciesRegistry::from_yaml(YAML::Load("species: {}\n")), ConfigError);
  EXPECT_THROW(SpeciesRegistry::from_yaml(YAML::Load("schema_version: 2\nspecies: {}\n")),
               ConfigError);
  auto reg = SpeciesRegistry::builtin();
  EXPECT_THROW(reg.apply_overrides(YAML::Load("K39: {}\n")), ConfigError);
  EXPECT_THROW(reg.apply_overrides(YAML::Load("Rb87:\n  rydberg:\n    lifetime_us: -1\n")),
               ConfigError);
  EXPECT_THROW(
      reg.apply_overrides(YAML::Load("Rb87:\n  rydberg:\n    lifetime_us: 1\n    lifetime_ns: 1\n")),
      ConfigError);
  EXPECT_THROW(SpeciesRegistry::load("/nonexistent/species.yaml"), ConfigError);
}

TEST(Species, ParseNames) {
  EXPECT_EQ(parse_element("Cs"), Element::Cs133);
  EXPECT_EQ(parse_element("Rb87"), Element::Rb87);
  EXPECT_EQ(parse_intermediate("first"), Intermediate::First);
  EXPECT_THROW(parse_element("Na"), std::invalid_argument);
}
