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

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rydsim/geometry.hpp"
#include "rydsim/hilbert.hpp"
#include "rydsim/pulses.hpp"

namespace rydsim {

// Everything the Hamiltonian needs, already in rad/s and seconds.
struct ModelConfig {
  int controls = 1;
  int targets = 1;
  double probe_peak = 0.0;   // max Omega_p
  double detuning = 0.0;     // Delta
  double coupling = 0.0;     // Omega_c
  double pi_duration = 10e-9;
  InteractionTable interactions;
  std::vector<double> control_decay;  // gamma_r per control atom
  std::vector<double> target_decay;   // gamma_p per target atom

  RegisterShape shape() const { return {controls, targets}; }
  double pi_rabi() const;
  void validate() const;
};

// (1/2) Omega_r (|1><r| + |r><1|) - (i/2) gamma_r |r><r|.
Eigen::Matrix3cd control_hamiltonian(double rabi, double gamma_r);

// Inverted-Y target atom: Omega_p couples A-P and B-P, Omega_c couples P-R,
// -Delta on P (the printed -2 Delta times 1/2), and -(i/2) gamma_p on P.
Eigen::Matrix4cd target_hamiltonian(double probe, double coupling, double detuning,
                                    double gamma_p);

// H(t) = constant + f(t) * modulated within one schedule segment, where
// f(t) is the Raman envelope (zero outside Raman windows).
struct SegmentHamiltonian {
  double start = 0.0;
  double end = 0.0;
  Operator constant;
  std::optional<Operator> modulated;
  std::optional<RamanPulse> pulse;

  double modulation(double t) const {
    return pulse ? pulse->peak * pulse->shape(t - start) : 0.0;
  }
  // y = H(t) x
  void apply(double t, const StateVector& x, StateVector& y) const;
  double norm_bound() const;
  bool is_constant() const { return !modulated.has_value(); }
};

class TimeDependentHamiltonian {
 public:
  TimeDependentHamiltonian(RegisterShape shape, std::vector<SegmentHamiltonian> segments);

  RegisterShape shape() const { return shape_; }
  const std::vector<SegmentHamiltonian>& segments() const { return segments_; }
  double duration() const { return segments_.back().end; }

  const SegmentHamiltonian& segment_at(double t) const;
  void apply(double t, const StateVector& x, StateVector& y) const;
  Eigen::MatrixXcd dense_at(double t) const;

 private:
  RegisterShape shape_;
  std::vector<SegmentHamiltonian> segments_;
};

// General assembly for k control and N target atoms.
TimeDependentHamiltonian assemble(const ModelConfig& config, const Schedule& schedule);
// k = 1 register (any N).
TimeDependentHamiltonian assemble_cnotn(const ModelConfig& config, const Schedule& schedule);
// k = 2, N = 2 register, including the control-control term.
TimeDependentHamiltonian assemble_c2not2(const ModelConfig& config, const Schedule& schedule);

}  // namespace rydsim
