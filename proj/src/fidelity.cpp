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

#include "rydsim/fidelity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace rydsim {

std::size_t full_index_of_qubits(std::size_t qubits, RegisterShape shape) {
  std::size_t index = 0;
  const int sites = shape.num_sites();
  for (int s = 0; s < sites; ++s) {
    const std::size_t bit = (qubits >> (sites - 1 - s)) & 1u;
    index = index * static_cast<std::size_t>(shape.site_dim(s)) + bit;
  }
  return index;
}

ComputationalProjection project_computational(const StateVector& psi, RegisterShape shape) {
  if (psi.size() != static_cast<Eigen::Index>(shape.dim())) {
    throw std::invalid_argument("state dimension does not match register");
  }
  ComputationalProjection out;
  out.shape = shape;
  const auto m = static_cast<Eigen::Index>(shape.computational_dim());
  out.amplitudes.resize(m);
  for (Eigen::Index q = 0; q < m; ++q) {
    out.amplitudes(q) =
        psi(static_cast<Eigen::Index>(full_index_of_qubits(static_cast<std::size_t>(q), shape)));
  }
  const double total = psi.squaredNorm();
  out.leaked = total > 0.0 ? std::clamp(1.0 - out.amplitudes.squaredNorm() / total, 0.0, 1.0) : 0.0;
  return out;
}

namespace {

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m, double tolerance) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (m + m.adjoint()));
  if (eig.info() != Eigen::Success) throw std::runtime_error("eigen-decomposition failed");
  if (eig.eigenvalues().minCoeff() < -tolerance) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().adjoint();
}

void check_psd(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (rho + rho.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

}  // namespace

double fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols() || rho.rows() != rho.cols()) {
    throw std::invalid_argument("density matrices must be square and the same size");
  }
  const Eigen::MatrixXcd root = hermitian_sqrt(rho, 1e-10);
  const Eigen::MatrixXcd inner = root * sigma * root;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (inner + inner.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  // Round-off eigenvalues of a rank-deficient product would each add ~1e-8
  // after the square root.
  const Eigen::VectorXd ev = eig.eigenvalues();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(ev.cwiseAbs().maxCoeff(), 1e-300) * static_cast<double>(ev.size());
  double f = 0.0;
  for (double v : ev)
    if (v > floor) f += std::sqrt(v);
  return std::clamp(f, 0.0, 1.0);
}

double fidelity_pure(const Eigen::MatrixXcd& rho, const Eigen::VectorXcd& phi) {
  if (rho.rows() != phi.size()) throw std::invalid_argument("target dimension mismatch");
  check_psd(rho);
  const double overlap = (phi.adjoint() * rho * phi)(0, 0).real();
  return std::clamp(std::sqrt(std::max(overlap, 0.0)), 0.0, 1.0);
}

std::string_view to_string(TargetKind kind) { return kind == TargetKind::Ghz ? "ghz" : "product"; }

TargetKind parse_target_kind(std::string_view name) {
  if (name == "ghz") return TargetKind::Ghz;
  if (name == "product") return TargetKind::Product;
  throw std::invalid_argument("unknown target state '" + std::string(name) + "'");
}

Complex ideal_row_phase(int excited_controls, int flipped_targets) {
  return ((excited_controls + flipped_targets) % 2 == 0) ? Complex{1.0} : Complex{-1.0};
}

TargetState ghz_target(int controls, int targets) {
  if (controls < 1 || controls > 2) throw std::invalid_argument("GHZ target supports k = 1 or 2");
  if (targets < 1) throw std::invalid_argument("GHZ target needs at least one target");
  TargetState s;
  s.kind = TargetKind::Ghz;
  s.shape = {controls, targets};
  s.phase = ideal_row_phase(controls, targets);
  const auto m = static_cast<Eigen::Index>(s.shape.computational_dim());
  s.amplitudes = Eigen::VectorXcd::Zero(m);
  // |0..0>|A^N> is qubit word 0; |1..1>|B^N> is all ones.
  const double h = 1.0 / std::sqrt(2.0);
  s.amplitudes(0) = h;
  s.amplitudes(m - 1) += s.phase * h;
  return s;
}

TargetState product_target(int controls, int targets) {
  if (controls < 1 || targets < 1) throw std::invalid_argument("empty register");
  TargetState s;
  s.kind = TargetKind::Product;
  s.shape = {controls, targets};
  const auto m = static_cast<Eigen::Index>(s.shape.computational_dim());
  s.amplitudes = Eigen::VectorXcd::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
  return s;
}

std::string_view to_string(GateKind kind) { return kind == GateKind::CnotN ? "cnotn" : "c2not2"; }

GateKind parse_gate_kind(std::string_view name) {
  if (name == "cnotn" || name == "cnot") return GateKind::CnotN;
  if (name == "c2not2") return GateKind::C2Not2;
  throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

std::pair<std::size_t, Complex> ideal_gate_output(std::size_t qubits, RegisterShape shape) {
  const std::size_t target_mask = (std::size_t{1} << shape.targets) - 1;
  const std::size_t control_bits = qubits >> shape.targets;
  const int excited = std::popcount(control_bits);
  if (excited == 0) return {qubits, Complex{1.0}};
  return {qubits ^ target_mask, ideal_row_phase(excited, shape.targets)};
}

namespace {

std::string qubit_label(std::size_t qubits, RegisterShape shape) {
  std::string s;
  const int sites = shape.num_sites();
  for (int i = 0; i < sites; ++i) {
    const bool one = (qubits >> (sites - 1 - i)) & 1u;
    if (i < shape.controls) {
      s.push_back(one ? '1' : '0');
    } else {
      s.push_back(one ? 'B' : 'A');
    }
  }
  return s;
}

}  // namespace

Schedule gate_schedule(GateKind gate, const ModelConfig& config) {
  if (gate == GateKind::CnotN) {
    if (config.controls != 1) throw std::invalid_argument("CNOT^N needs exactly one control");
    return build_cnot_schedule(config.targets, config.probe_peak, config.detuning,
                               config.coupling, config.pi_duration);
  }
  if (config.controls != 2 || config.targets != 2) {
    throw std::invalid_argument("C2NOT2 needs two controls and two targets");
  }
  return build_c2not2_schedule(config.probe_peak, config.detuning, config.coupling,
                               config.pi_duration);
}

std::vector<TruthTableRow> truth_table_check(GateKind gate, const ModelConfig& config,
                                             const IntegratorOptions& opts) {
  const auto schedule = gate_schedule(gate, config);
  const auto h = assemble(config, schedule);
  const auto shape = config.shape();
  const auto inputs = static_cast<Eigen::Index>(shape.computational_dim());
  Eigen::MatrixXcd psi0 = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(shape.dim()), inputs);
  for (Eigen::Index q = 0; q < inputs; ++q) {
    psi0(static_cast<Eigen::Index>(full_index_of_qubits(static_cast<std::size_t>(q), shape)), q) = 1.0;
  }
  const Eigen::MatrixXcd final_states = evolve_columns(h, psi0, opts);
  std::vector<TruthTableRow> rows;
  for (std::size_t q = 0; q < shape.computational_dim(); ++q) {
    const auto [out, phase] = ideal_gate_output(q, shape);
    const Complex amp = final_states(static_cast<Eigen::Index>(full_index_of_qubits(out, shape)),
                                     static_cast<Eigen::Index>(q));
    TruthTableRow row;
    row.input = qubit_label(q, shape);
    row.expected = qubit_label(out, shape);
    row.expected_phase = phase;
    row.population = std::norm(amp);
    row.phase_error = std::abs(amp) > 0.0 ? std::arg(amp / phase) : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

StateVector ghz_preparation_input(RegisterShape shape) {
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(shape.dim()));
  const std::size_t controls_one = ((std::size_t{1} << shape.controls) - 1) << shape.targets;
  const double h = 1.0 / std::sqrt(2.0);
  psi(static_cast<Eigen::Index>(full_index_of_qubits(0, shape))) = h;
  psi(static_cast<Eigen::Index>(full_index_of_qubits(controls_one, shape))) = h;
  return psi;
}

GateRun gate_fidelity_run(const ModelConfig& config, const Schedule& schedule,
                          const IntegratorOptions& opts, TargetKind target) {
  const auto h = assemble(config, schedule);
  IntegratorOptions run_opts = opts;
  run_opts.keep_states = false;
  run_opts.record_stride = 0;
  const auto traj = evolve(h, ghz_preparation_input(config.shape()), run_opts);
  GateRun run;
  run.projection = project_computational(traj.final_state, config.shape());
  const auto goal = target == TargetKind::Ghz ? ghz_target(config.controls, config.targets)
                                              : product_target(config.controls, config.targets);
  run.fidelity = fidelity_pure(run.projection.density(), goal.amplitudes);
  run.leaked = run.projection.leaked;
  run.final_norm = traj.final_state.squaredNorm();
  run.duration = schedule.total_duration();
  return run;
}

}  // namespace rydsim
