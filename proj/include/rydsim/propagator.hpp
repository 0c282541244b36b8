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

#include <bitset>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rydsim/hamiltonian.hpp"
#include "rydsim/hilbert.hpp"

namespace rydsim {

enum class Method : std::uint8_t {
  Rk4Fixed,     // classical RK4 on every segment
  ExpmSegment,  // exact exponential on constant segments, RK4 on the Raman window
  // Dense exponentials of each segment's constant part; the modulated probe
  // enters through exponential time differencing (ETD-RK4). Meant for very
  // stiff models such as near-infinite blockade shifts; dim <=
  // Operator::kMaxDenseDim.
  ExpRk4,
};

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

struct IntegratorOptions {
  Method method = Method::Rk4Fixed;
  double pi_step = 1e-12;     // s, inside pi-pulse (and idle) segments
  double raman_step = 5e-12;  // s, inside the Raman window
  // Record a snapshot every `record_stride` steps; 0 records only t = 0 and
  // segment boundaries.
  int record_stride = 0;
  // The RK4 step is additionally capped at stability_limit / ||H||, which
  // only matters for very stiff models (huge blockade shifts).
  double stability_limit = 1.0;
  bool keep_states = true;

  void validate(double pi_duration) const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;  // empty unless keep_states
  std::vector<double> norms;        // squared norms
  StateVector final_state;
};

// Integrates i d(psi)/dt = H(t) psi over the whole schedule. Throws
// IntegratorFailure if amplitudes become non-finite.
Trajectory evolve(const TimeDependentHamiltonian& h, const StateVector& psi0,
                  const IntegratorOptions& opts = {});

// Final states only, one column per initial state. With Method::ExpRk4 the
// columns are advanced together.
Eigen::MatrixXcd evolve_columns(const TimeDependentHamiltonian& h, const Eigen::MatrixXcd& psi0,
                                const IntegratorOptions& opts = {});

// psi <- exp(-i H dt) psi for a constant operator, by sub-stepped Taylor
// series applied matrix-free.
void exp_propagate(const Operator& h, double dt, StateVector& psi);

// exp(-i H dt) as a dense matrix; dim <= Operator::kMaxDenseDim.
Eigen::MatrixXcd dense_propagator(const Operator& h, double dt);

// Per-atom level sets. Text form has one token per atom, controls first:
// a level character (0 1 r | A B P R), '*' for any level, or a bracketed
// set such as "[PR]". Example: "1[PR]*".
class PopulationPattern {
 public:
  static PopulationPattern parse(std::string_view text, RegisterShape shape);
  static PopulationPattern from_label(const BasisLabel& label);

  bool matches(std::size_t index, RegisterShape shape) const;
  double population(const StateVector& psi, RegisterShape shape) const;
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::vector<std::bitset<4>> allowed_;
};

// |amplitude|^2 summed over each pattern, one series per pattern.
std::vector<std::vector<double>> populations(const Trajectory& traj,
                                             std::span<const PopulationPattern> patterns,
                                             RegisterShape shape);

}  // namespace rydsim
