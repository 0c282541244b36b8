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
#include <random>

#include <gtest/gtest.h>

#include "rydsim/fidelity.hpp"
#include "rydsim/units.hpp"

using namespace rydsim;

namespace {

const SpeciesMap kCsRb{Element::Cs133, Element::Rb87};

ModelConfig blockade_model(int controls, int targets, double peak_mhz, double ratio) {
  // gamma = 0, V_TT = V_CC = 0, V_CT = 1e4 Omega_c.
  ModelConfig c;
  c.controls = controls;
  c.targets = targets;
  c.probe_peak = units::mhz_2pi(peak_mhz);
  c.detuning = units::mhz_2pi(1200);
  c.coupling = ratio * c.probe_peak;
  c.interactions.controls = controls;
  c.interactions.targets = targets;
  c.interactions.energy = Eigen::MatrixXd::Zero(controls + targets, controls + targets);
  for (int a = 0; a < controls; ++a)
    for (int t = 0; t < targets; ++t)
      c.interactions.energy(a, controls + t) = c.interactions.energy(controls + t, a) =
          1e4 * c.coupling;
  c.control_decay.assign(static_cast<std::size_t>(controls), 0.0);
  c.target_decay.assign(static_cast<std::size_t>(targets), 0.0);
  return c;
}

// The 1e4 Omega_c shift is far outside explicit RK4's stability region; the
// exponential scheme absorbs it into exact segment propagators.
IntegratorOptions stiff_options() {
  IntegratorOptions o;
  o.method = Method::ExpRk4;
  o.raman_step = 40e-12;
  return o;
}

Eigen::VectorXcd random_state(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = {g(rng), g(rng)};
  return v.normalized();
}

}  // namespace

TEST(Fidelity, ProjectionExamples) {
  const RegisterShape s{1, 1};
  auto p = project_computational(basis_state(BasisLabel::parse("0A", s), s), s);
  EXPECT_EQ(p.amplitudes.size(), 4);
  EXPECT_EQ(p.amplitudes(0), Complex(1.0));
  EXPECT_EQ(p.amplitudes.tail(3).norm(), 0.0);
  EXPECT_EQ(p.leaked, 0.0);

  p = project_computational(basis_state(BasisLabel::parse("rA", s), s), s);
  EXPECT_EQ(p.amplitudes.norm(), 0.0);
  EXPECT_EQ(p.leaked, 1.0);

  const StateVector mix = (basis_state(BasisLabel::parse("0A", s), s) +
                           basis_state(BasisLabel::parse("1R", s), s)) / std::sqrt(2.0);
  p = project_computational(mix, s);
  EXPECT_NEAR(std::abs(p.amplitudes(0)), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(p.leaked, 0.5, 1e-15);
}

TEST(Fidelity, ProjectionQubitOrdering) {
  // First control is the most significant qubit; 0/A -> 0, 1/B -> 1.
  const RegisterShape s{2, 2};
  const auto p = project_computational(basis_state(BasisLabel::parse("10BA", s), s), s);
  EXPECT_EQ(p.amplitudes(0b1010), Complex(1.0));
  EXPECT_EQ(full_index_of_qubits(0b1010, s), flat_index(BasisLabel::parse("10BA", s), s));
  EXPECT_EQ(p.amplitudes.size(), 16);
}

TEST(Fidelity, IdenticalStatesGiveOne) {
  std::mt19937 rng(1);
  const auto phi = random_state(8, rng);
  const Eigen::MatrixXcd sigma = phi * phi.adjoint();
  EXPECT_NEAR(fidelity(sigma, sigma), 1.0, 1e-10);
  EXPECT_NEAR(fidelity_pure(sigma, phi), 1.0, 1e-14);
}

TEST(Fidelity, HalfMixtureWithOrthogonalState) {
  const Eigen::Vector4cd phi(1, 0, 0, 0), perp(0, 1, 0, 0);
  const Eigen::MatrixXcd rho = 0.5 * phi * phi.adjoint() + 0.5 * perp * perp.adjoint();
  EXPECT_NEAR(fidelity_pure(rho, phi), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(fidelity(rho, phi * phi.adjoint()), std::sqrt(0.5), 1e-10);
}

TEST(Fidelity, TraceDeficientRho) {
  std::mt19937 rng(2);
  const auto phi = random_state(4, rng);
  for (double w : {0.0, 0.1, 0.5, 0.9}) {
    const Eigen::VectorXcd psi = std::sqrt(1.0 - w) * phi;
    EXPECT_NEAR(fidelity_pure(psi * psi.adjoint(), phi), std::sqrt(1.0 - w), 1e-14);
  }
}

TEST(Fidelity, HermitianRootAgreesWithPureShortcut) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto phi = random_state(16, rng);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(16, 16);
    for (int k = 0; k < 3; ++k) {
      const auto v = random_state(16, rng);
      rho += (0.3 - 0.05 * k) * v * v.adjoint();
    }
    EXPECT_NEAR(fidelity(rho, phi * phi.adjoint()), fidelity_pure(rho, phi), 1e-10);
  }
}

TEST(Fidelity, MonotoneUnderLeakage) {
  std::mt19937 rng(4);
  const auto phi = random_state(4, rng);
  const auto dir = (0.9 * phi + 0.1 * random_state(4, rng)).normalized().eval();
  double last = 2.0;
  for (double w = 0.0; w < 1.0; w += 0.05) {
    const Eigen::VectorXcd psi = std::sqrt(1.0 - w) * dir;
    const double f = fidelity_pure(psi * psi.adjoint(), phi);
    EXPECT_LT(f, last);
    last = f;
  }
}

TEST(Fidelity, GlobalPhaseInvariant) {
  std::mt19937 rng(5);
  const auto phi = random_state(8, rng);
  const auto psi = random_state(8, rng);
  const Eigen::VectorXcd rotated = std::polar(1.0, 1.234) * psi;
  EXPECT_NEAR(fidelity_pure(psi * psi.adjoint(), phi),
              fidelity_pure(rotated * rotated.adjoint(), phi), 1e-14);
}

TEST(Fidelity, RejectsNonPsdRho) {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = 1.0;
  rho(1, 1) = -1e-6;
  EXPECT_THROW(fidelity(rho, rho.cwiseAbs().cast<Complex>()), std::invalid_argument);
}

TEST(Fidelity, GhzTargetPhaseConvention) {
  for (int n = 1; n <= 4; ++n) {
    const auto t = ghz_target(1, n);
    EXPECT_NEAR(t.amplitudes.norm(), 1.0, 1e-15);
    // The transferred branch carries -(-1)^N.
    EXPECT_EQ(t.phase, Complex(n % 2 ? 1.0 : -1.0));
    EXPECT_NEAR(std::abs(t.amplitudes(0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_EQ(t.amplitudes(t.amplitudes.size() - 1), t.phase / std::sqrt(2.0));
  }
  EXPECT_EQ(ghz_target(2, 2).phase, Complex(1.0));
  EXPECT_THROW(ghz_target(3, 1), std::invalid_argument);
}

TEST(Fidelity, GhzTargetMatchesIdealTruthTableOutput) {
  for (const RegisterShape s : {RegisterShape{1, 1}, RegisterShape{1, 3}, RegisterShape{2, 2}}) {
    // Apply the ideal gate to (|0..0> + |1..1>)|A^N> / sqrt2, qubit by qubit.
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(s.computational_dim()));
    const std::size_t all_controls = ((std::size_t{1} << s.controls) - 1) << s.targets;
    for (std::size_t in : {std::size_t{0}, all_controls}) {
      const auto [q, phase] = ideal_gate_output(in, s);
      out(static_cast<Eigen::Index>(q)) += phase / std::sqrt(2.0);
    }
    const auto t = ghz_target(s.controls, s.targets);
    EXPECT_NEAR(std::abs(t.amplitudes.dot(out)), 1.0, 1e-14);
    EXPECT_NEAR(std::real(t.amplitudes.dot(out)), 1.0, 1e-14);
  }
}

TEST(Fidelity, ProductTargetIsUniform) {
  const auto t = product_target(1, 2);
  EXPECT_EQ(t.amplitudes.size(), 8);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(t.amplitudes(i)), 1.0 / std::sqrt(8.0), 1e-15);
}

TEST(Fidelity, IdealGateOutput) {
  const RegisterShape s{2, 2};
  // |0 1>|A B> -> |0 1>|B A>: any control in |1> flips every target. One
  // excited control and two flipped targets give (-1)^3.
  const auto [q, phase] = ideal_gate_output(0b0101, s);
  EXPECT_EQ(q, 0b0110u);
  EXPECT_EQ(phase, Complex(-1.0));
  EXPECT_EQ(ideal_gate_output(0b0001, s).first, 0b0001u);
  EXPECT_EQ(ideal_gate_output(0b1100, s).first, 0b1111u);
  EXPECT_EQ(ideal_gate_output(0b1100, s).second, Complex(1.0));
  EXPECT_EQ(ideal_gate_output(0b10, RegisterShape{1, 1}).second, Complex(1.0));
}

TEST(Fidelity, BlockadeLimitTruthTableCnot) {
  for (int n : {1, 2}) {
    const auto c = blockade_model(1, n, 50, 4.0);
    for (const auto& row : truth_table_check(GateKind::CnotN, c, stiff_options())) {
      EXPECT_GE(row.population, 0.999) << row.input << " -> " << row.expected;
    }
  }
}

TEST(Fidelity, BlockadeLimitTruthTableC2Not2) {
  const auto c = blockade_model(2, 2, 50, 4.0);
  const auto rows = truth_table_check(GateKind::C2Not2, c, stiff_options());
  ASSERT_EQ(rows.size(), 16u);
  bool saw_swap_row = false;
  for (const auto& row : rows) {
    EXPECT_GE(row.population, 0.999) << row.input << " -> " << row.expected;
    saw_swap_row = saw_swap_row || (row.input == "01AB" && row.expected == "01BA");
  }
  EXPECT_TRUE(saw_swap_row);
}

TEST(Fidelity, NoTransferRowBlocked) {
  const auto layout = standard_layout(LayoutKind::Single, 6.0, kCsRb);
  ModelConfig c;
  c.probe_peak = units::mhz_2pi(50);
  c.detuning = units::mhz_2pi(1200);
  c.coupling = 3.0 * c.probe_peak;
  c.interactions = interaction_table(layout, CoefficientSet::builtin());
  c.control_decay = {0.0};
  c.target_decay = {0.0};
  const auto rows = truth_table_check(GateKind::CnotN, c);
  EXPECT_EQ(rows[0].input, "0A");
  EXPECT_GE(rows[0].population, 0.99);
}

TEST(Fidelity, GateRunReportsLeakAndDuration) {
  const auto layout = standard_layout(LayoutKind::Single, 5.0, kCsRb);
  ModelConfig c;
  c.probe_peak = units::mhz_2pi(50);
  c.detuning = units::mhz_2pi(1200);
  c.coupling = 3.0 * c.probe_peak;
  c.interactions = interaction_table(layout, CoefficientSet::builtin());
  c.control_decay = {1.0 / 548e-6};
  c.target_decay = {1.0 / 0.131e-6};
  const auto run = gate_fidelity_run(c, gate_schedule(GateKind::CnotN, c));
  EXPECT_NEAR(run.duration, 1.3e-6, 1e-15);
  EXPECT_GT(run.fidelity, 0.99);
  EXPECT_LE(run.fidelity, 1.0);
  EXPECT_LT(run.final_norm, 1.0);
  // Trace-deficient rho: F^2 <= 1 - leaked weight.
  EXPECT_LE(run.fidelity * run.fidelity, run.projection.amplitudes.squaredNorm() + 1e-15);
}
