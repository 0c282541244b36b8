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
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rydsim/hamiltonian.hpp"
#include "rydsim/hilbert.hpp"
#include "rydsim/propagator.hpp"
#include "rydsim/pulses.hpp"

namespace rydsim {

// Amplitudes on {0,1}^k x {A,B}^N, qubit-ordered with the first control as
// the most significant bit (0/A -> 0, 1/B -> 1). Not renormalised.
struct ComputationalProjection {
  RegisterShape shape;
  Eigen::VectorXcd amplitudes;
  double leaked = 0.0;  // 1 - |projected|^2 / |psi|^2

  Eigen::MatrixXcd density() const { return amplitudes * amplitudes.adjoint(); }
};

ComputationalProjection project_computational(const StateVector& psi, RegisterShape shape);

// Full-register index of a computational basis state given by its qubit bits.
std::size_t full_index_of_qubits(std::size_t qubits, RegisterShape shape);

// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)) via Hermitian square
// roots. Throws std::invalid_argument if rho has an eigenvalue below -1e-10.
double fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma);
// Shortcut for pure sigma = |phi><phi|: sqrt(<phi|rho|phi>).
double fidelity_pure(const Eigen::MatrixXcd& rho, const Eigen::VectorXcd& phi);

enum class TargetKind : std::uint8_t { Ghz, Product };

std::string_view to_string(TargetKind kind);
TargetKind parse_target_kind(std::string_view name);

struct TargetState {
  TargetKind kind = TargetKind::Ghz;
  RegisterShape shape;
  Eigen::VectorXcd amplitudes;  // on the 2^(k+N) computational space
  Complex phase{1.0, 0.0};      // relative phase of the |1..1>|B^N> branch
};

// Phase the ideal schedule puts on a flipped row: every control in |1>
// picks up -1 from its two pi-pulses, and each flipped target picks up -1
// from the Raman pi-pulse. For k = 1 this is -(-1)^N.
Complex ideal_row_phase(int excited_controls, int flipped_targets);

// (|0..0>|A^N> + s |1..1>|B^N>) / sqrt(2), s = ideal_row_phase(k, N).
TargetState ghz_target(int controls, int targets);
// Normalised product of (|0> + |1>) and (|A> + |B>) factors.
TargetState product_target(int controls, int targets);

enum class GateKind : std::uint8_t { CnotN, C2Not2 };

std::string_view to_string(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

struct TruthTableRow {
  std::string input;
  std::string expected;
  Complex expected_phase{1.0, 0.0};
  double population = 0.0;   // |<expected|psi_out>|^2
  double phase_error = 0.0;  // arg(amplitude / expected_phase), rad
};

// Ideal output of a computational input (qubit bits) and its phase: if any
// control is |1> every target flips.
std::pair<std::size_t, Complex> ideal_gate_output(std::size_t qubits, RegisterShape shape);

// Runs every computational input row through the schedule.
std::vector<TruthTableRow> truth_table_check(GateKind gate, const ModelConfig& config,
                                             const IntegratorOptions& opts = {});

struct GateRun {
  double fidelity = 0.0;
  double leaked = 0.0;
  double final_norm = 0.0;
  double duration = 0.0;
  ComputationalProjection projection;
};

// Schedule for the gate and model (CNOT^N or C2NOT2 pulse order).
Schedule gate_schedule(GateKind gate, const ModelConfig& config);

// (|0..0> + |1..1>)/sqrt(2) on the controls, all targets in |A>.
StateVector ghz_preparation_input(RegisterShape shape);

GateRun gate_fidelity_run(const ModelConfig& config, const Schedule& schedule,
                          const IntegratorOptions& opts = {},
                          TargetKind target = TargetKind::Ghz);

}  // namespace rydsim
