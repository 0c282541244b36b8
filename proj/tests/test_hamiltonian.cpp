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

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "rydsim/hamiltonian.hpp"
#include "rydsim/units.hpp"

using namespace rydsim;

namespace {

const SpeciesMap kCsRb{Element::Cs133, Element::Rb87};

ModelConfig model_for(const Layout& layout, double ratio, bool decay) {
  ModelConfig c;
  c.controls = layout.num_controls();
  c.targets = layout.num_targets();
  c.probe_peak = units::mhz_2pi(50);
  c.detuning = units::mhz_2pi(1200);
  c.coupling = ratio * c.probe_peak;
  c.interactions = interaction_table(layout, CoefficientSet::builtin());
  c.control_decay.assign(static_cast<std::size_t>(c.controls), decay ? 1.0 / 548e-6 : 0.0);
  c.target_decay.assign(static_cast<std::size_t>(c.targets), decay ? 1.0 / 0.131e-6 : 0.0);
  return c;
}

// Builds H(t) from scratch with Kronecker products.
oracle::Mat oracle_hamiltonian(const ModelConfig& c, double rabi_controls[], double probe,
                               double coupling) {
  std::vector<int> dims(static_cast<std::size_t>(c.controls), 3);
  dims.insert(dims.end(), static_cast<std::size_t>(c.targets), 4);
  const int n = [&] {
    int d = 1;
    for (int x : dims) d *= x;
    return d;
  }();
  oracle::Mat h = oracle::Mat::Zero(n, n);
  const oracle::cd i(0.0, 1.0);
  for (int k = 0; k < c.controls; ++k) {
    oracle::Mat hc = oracle::Mat::Zero(3, 3);
    hc(1, 2) = hc(2, 1) = rabi_controls[k] / 2;
    hc(2, 2) = -i * c.control_decay[k] / 2.0;
    h += oracle::embed(dims, k, hc);
  }
  for (int t = 0; t < c.targets; ++t) {
    oracle::Mat ht = oracle::Mat::Zero(4, 4);
    ht(0, 2) = ht(2, 0) = probe / 2;
    ht(1, 2) = ht(2, 1) = probe / 2;
    ht(2, 3) = ht(3, 2) = coupling / 2;
    ht(2, 2) = -c.detuning - i * c.target_decay[t] / 2.0;
    h += oracle::embed(dims, c.controls + t, ht);
  }
  const auto pr = oracle::projector(3, 2), pR = oracle::projector(4, 3);
  for (int a = 0; a < c.controls + c.targets; ++a) {
    for (int b = a + 1; b < c.controls + c.targets; ++b) {
      const double v = c.interactions.energy(a, b);
      h += v * oracle::embed2(dims, a, a < c.controls ? pr : pR, b, b < c.controls ? pr : pR);
    }
  }
  return h;
}

}  // namespace

TEST(Hamiltonian, ControlMatrix) {
  const auto h = control_hamiltonian(2.0, 4.0);
  EXPECT_EQ(h(1, 2), Complex(1.0));
  EXPECT_EQ(h(2, 1), Complex(1.0));
  EXPECT_EQ(h(2, 2), Complex(0.0, -2.0));
  EXPECT_EQ(h(0, 0), Complex(0.0));
  EXPECT_EQ(h.row(0).cwiseAbs().sum(), 0.0);
}

TEST(Hamiltonian, TargetMatrix) {
  const auto h = target_hamiltonian(2.0, 6.0, 10.0, 8.0);
  EXPECT_EQ(h(0, 2), Complex(1.0));
  EXPECT_EQ(h(1, 2), Complex(1.0));
  EXPECT_EQ(h(2, 3), Complex(3.0));
  EXPECT_EQ(h(2, 2), Complex(-10.0, -4.0));
  EXPECT_EQ(h(3, 3), Complex(0.0));
  EXPECT_EQ(h(0, 1), Complex(0.0));
}

TEST(Hamiltonian, CnotMatchesKroneckerOracle) {
  const auto layout = standard_layout(LayoutKind::Linear, 5.0, kCsRb);
  const auto c = model_for(layout, 3.0, true);
  const auto s = build_cnot_schedule(2, c.probe_peak, c.detuning, c.coupling);
  const auto h = assemble_cnotn(c, s);
  double pi_rabi[] = {c.pi_rabi()}, off[] = {0.0};
  const auto during_pi = oracle_hamiltonian(c, pi_rabi, 0.0, 0.0);
  EXPECT_LT((h.dense_at(5e-9) - during_pi).cwiseAbs().maxCoeff() / during_pi.cwiseAbs().maxCoeff(),
            1e-14);
  const auto raman = std::get<RamanWindow>(s.segments()[1].fields).pulse;
  for (double frac : {0.1, 0.5, 0.77}) {
    const double t = s.segments()[1].start + frac * raman.duration;
    const auto expect = oracle_hamiltonian(c, off, raman.envelope(frac * raman.duration), c.coupling);
    // Entries are ~1e10 rad/s; compare relative to that scale.
    EXPECT_LT((h.dense_at(t) - expect).cwiseAbs().maxCoeff() / expect.cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Hamiltonian, C2Not2MatchesKroneckerOracle) {
  const auto layout = standard_layout(LayoutKind::Rhombus, 2.6, kCsRb);
  auto c = model_for(layout, 3.0, true);
  c.probe_peak = units::mhz_2pi(20);
  c.coupling = 3.0 * c.probe_peak;
  const auto s = build_c2not2_schedule(c.probe_peak, c.detuning, c.coupling);
  const auto h = assemble_c2not2(c, s);
  ASSERT_EQ(h.shape().dim(), 144u);
  for (int seg : {0, 1}) {
    double rabi[] = {seg == 0 ? c.pi_rabi() : 0.0, seg == 1 ? c.pi_rabi() : 0.0};
    const auto expect = oracle_hamiltonian(c, rabi, 0.0, 0.0);
    const double t = s.segments()[static_cast<std::size_t>(seg)].start + 1e-9;
    EXPECT_LT((h.dense_at(t) - expect).cwiseAbs().maxCoeff() / expect.cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Hamiltonian, HermitianWithoutDecay) {
  const auto layout = standard_layout(LayoutKind::Linear, 5.0, kCsRb);
  const auto c = model_for(layout, 3.0, false);
  const auto s = build_cnot_schedule(2, c.probe_peak, c.detuning, c.coupling);
  const auto h = assemble(c, s);
  for (double t : {1e-9, 0.3e-6, 0.64e-6, 1.295e-6}) {
    const auto m = h.dense_at(t);
    EXPECT_EQ((m - m.adjoint()).cwiseAbs().maxCoeff(), 0.0) << t;
  }
}

TEST(Hamiltonian, DecayIsPurelyAntiHermitianDiagonal) {
  const auto layout = standard_layout(LayoutKind::Single, 5.0, kCsRb);
  const auto c = model_for(layout, 3.0, true);
  const auto s = build_cnot_schedule(1, c.probe_peak, c.detuning, c.coupling);
  const auto m = assemble(c, s).dense_at(0.5e-6);
  const Eigen::MatrixXcd anti = (m - m.adjoint()) / 2.0;
  Eigen::MatrixXcd off = anti;
  off.diagonal().setZero();
  EXPECT_EQ(off.cwiseAbs().maxCoeff(), 0.0);
  // -i gamma/2 on every state with the control in |r> or the target in |P>.
  const RegisterShape shape = c.shape();
  for (std::size_t i = 0; i < shape.dim(); ++i) {
    const double expect = -(shape.digit(i, 0) == 2 ? c.control_decay[0] : 0.0) / 2 -
                          (shape.digit(i, 1) == 2 ? c.target_decay[0] : 0.0) / 2;
    EXPECT_NEAR(anti(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).imag(), expect, 1e-6);
  }
}

TEST(Hamiltonian, SparseStructure) {
  const auto layout = standard_layout(LayoutKind::Linear, 5.0, kCsRb);
  const auto c = model_for(layout, 3.0, true);
  const auto s = build_cnot_schedule(2, c.probe_peak, c.detuning, c.coupling);
  const auto m = assemble(c, s).dense_at(0.6e-6);
  const auto nnz = (m.array().abs() > 0.0).count();
  // Diagonal plus at most four off-diagonal links per target row.
  EXPECT_LE(nnz, static_cast<Eigen::Index>(48 + 48 * 2 * 3));
  EXPECT_GT(nnz, 48);
}

TEST(Hamiltonian, SingleControlEmbedsInC2Not2Subspace) {
  // k=1, N=2 versus k=2, N=2 with the second control decoupled: on the
  // subspace where control 2 stays in |0>, the Hamiltonians coincide.
  const auto cnot_layout = standard_layout(LayoutKind::Linear, 5.0, kCsRb);
  const auto c1 = model_for(cnot_layout, 3.0, true);

  ModelConfig c2 = c1;
  c2.controls = 2;
  c2.control_decay = {c1.control_decay[0], c1.control_decay[0]};
  c2.interactions.controls = 2;
  c2.interactions.energy = Eigen::MatrixXd::Zero(4, 4);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const int ia = a == 0 ? 0 : a + 1, ib = b == 0 ? 0 : b + 1;
      c2.interactions.energy(ia, ib) = c1.interactions.energy(a, b);
    }

  const auto s1 = build_cnot_schedule(2, c1.probe_peak, c1.detuning, c1.coupling);
  const auto s2 = build_c2not2_schedule(c2.probe_peak, c2.detuning, c2.coupling);
  const auto h1 = assemble_cnotn(c1, s1);
  const auto h2 = assemble_c2not2(c2, s2);

  const RegisterShape big{2, 2};
  std::vector<Eigen::Index> sub;
  for (std::size_t i = 0; i < big.dim(); ++i)
    if (big.digit(i, 1) == 0) sub.push_back(static_cast<Eigen::Index>(i));
  ASSERT_EQ(sub.size(), 48u);

  auto restrict_to = [&](const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd r(48, 48);
    for (int a = 0; a < 48; ++a)
      for (int b = 0; b < 48; ++b) r(a, b) = m(sub[a], sub[b]);
    return r;
  };
  // First pi-pulse (control 1 only) and the middle of the Raman window.
  const auto r1 = std::get<RamanWindow>(s1.segments()[1].fields).pulse;
  const std::pair<double, double> times[] = {
      {5e-9, 5e-9}, {s1.segments()[1].start + r1.duration / 3, s2.segments()[2].start + r1.duration / 3}};
  for (const auto& [t1, t2] : times) {
    const auto a = h1.dense_at(t1);
    const auto b = restrict_to(h2.dense_at(t2));
    EXPECT_LT((a - b).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Hamiltonian, AssemblyPreconditions) {
  const auto layout = standard_layout(LayoutKind::Rhombus, 2.6, kCsRb);
  const auto c = model_for(layout, 3.0, true);
  const auto s = build_c2not2_schedule(c.probe_peak, c.detuning, c.coupling);
  EXPECT_THROW(assemble_cnotn(c, s), std::invalid_argument);
  const auto s1 = build_cnot_schedule(2, c.probe_peak, c.detuning, c.coupling);
  EXPECT_THROW(assemble(c, s1), std::invalid_argument);
  ModelConfig bad = c;
  bad.target_decay.pop_back();
  EXPECT_THROW(assemble(bad, s), std::invalid_argument);
}

TEST(Hamiltonian, SegmentLookup) {
  const auto layout = standard_layout(LayoutKind::Single, 5.0, kCsRb);
  const auto c = model_for(layout, 3.0, true);
  const auto s = build_cnot_schedule(1, c.probe_peak, c.detuning, c.coupling);
  const auto h = assemble(c, s);
  EXPECT_TRUE(h.segment_at(0.0).is_constant());
  EXPECT_FALSE(h.segment_at(0.5e-6).is_constant());
  EXPECT_NEAR(h.duration(), 1.3e-6, 1e-15);
  EXPECT_THROW(h.segment_at(2e-6), std::out_of_range);
}
