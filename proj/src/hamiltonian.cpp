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

#include "rydsim/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rydsim {

namespace {
constexpr Complex kI{0.0, 1.0};
}

double ModelConfig::pi_rabi() const { return std::numbers::pi / pi_duration; }

void ModelConfig::validate() const {
  if (controls < 1 || targets < 1) throw std::invalid_argument("model needs controls and targets");
  if (!(probe_peak >= 0.0 && coupling >= 0.0 && pi_duration > 0.0)) {
    throw std::invalid_argument("field amplitudes must be non-negative");
  }
  if (interactions.controls != controls || interactions.targets != targets ||
      interactions.energy.rows() != controls + targets ||
      interactions.energy.cols() != controls + targets) {
    throw std::invalid_argument("interaction table does not match the register");
  }
  if (static_cast<int>(control_decay.size()) != controls ||
      static_cast<int>(target_decay.size()) != targets) {
    throw std::invalid_argument("decay rates must be given per atom");
  }
  auto negative = [](double g) { return !(g >= 0.0); };
  if (std::any_of(control_decay.begin(), control_decay.end(), negative) ||
      std::any_of(target_decay.begin(), target_decay.end(), negative)) {
    throw std::invalid_argument("decay rates must be non-negative");
  }
}

Eigen::Matrix3cd control_hamiltonian(double rabi, double gamma_r) {
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(1, 2) = h(2, 1) = 0.5 * rabi;
  h(2, 2) = -0.5 * kI * gamma_r;
  return h;
}

Eigen::Matrix4cd target_hamiltonian(double probe, double coupling, double detuning,
                                    double gamma_p) {
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h(0, 2) = h(2, 0) = 0.5 * probe;
  h(1, 2) = h(2, 1) = 0.5 * probe;
  h(2, 3) = h(3, 2) = 0.5 * coupling;
  h(2, 2) = -detuning - 0.5 * kI * gamma_p;
  return h;
}

void SegmentHamiltonian::apply(double t, const StateVector& x, StateVector& y) const {
  constant.apply(x, y);
  if (modulated) modulated->apply(x, y, modulation(t), true);
}

double SegmentHamiltonian::norm_bound() const {
  double n = constant.norm_bound();
  if (modulated && pulse) n += pulse->peak * modulated->norm_bound();
  return n;
}

TimeDependentHamiltonian::TimeDependentHamiltonian(RegisterShape shape,
                                                   std::vector<SegmentHamiltonian> segments)
    : shape_(shape), segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("Hamiltonian has no segments");
}

const SegmentHamiltonian& TimeDependentHamiltonian::segment_at(double t) const {
  if (t < segments_.front().start || t > segments_.back().end) {
    throw std::out_of_range("time outside the schedule");
  }
  const auto it = std::find_if(segments_.begin(), segments_.end(),
                               [t](const SegmentHamiltonian& s) { return t < s.end; });
  return it == segments_.end() ? segments_.back() : *it;
}

void TimeDependentHamiltonian::apply(double t, const StateVector& x, StateVector& y) const {
  segment_at(t).apply(t, x, y);
}

Eigen::MatrixXcd TimeDependentHamiltonian::dense_at(double t) const {
  const auto& seg = segment_at(t);
  Eigen::MatrixXcd h = seg.constant.to_dense();
  if (seg.modulated) h += seg.modulation(t) * seg.modulated->to_dense();
  return h;
}

TimeDependentHamiltonian assemble(const ModelConfig& config, const Schedule& schedule) {
  config.validate();
  if (schedule.controls() != config.controls || schedule.targets() != config.targets) {
    throw std::invalid_argument("schedule register does not match the model");
  }
  const RegisterShape shape = config.shape();
  const auto& v = config.interactions;

  // Detuning, decay and all Rydberg-Rydberg shifts: present in every segment.
  Operator base(shape);
  for (int c = 0; c < config.controls; ++c) {
    base += Operator::embed_site(
        {Site{SiteKind::Control, c}, control_hamiltonian(0.0, config.control_decay[c])}, shape);
  }
  for (int t = 0; t < config.targets; ++t) {
    base += Operator::embed_site(
        {Site{SiteKind::Target, t},
         target_hamiltonian(0.0, 0.0, config.detuning, config.target_decay[t])},
        shape);
  }
  auto add_pair = [&](double energy, const SiteOperator& a, const SiteOperator& b) {
    if (energy != 0.0) base += Complex{energy} * Operator::embed_pair(a, b, shape);
  };
  for (int c = 0; c < config.controls; ++c)
    for (int t = 0; t < config.targets; ++t)
      add_pair(v.control_target(c, t), control_projector(c, ControlLevel::Rydberg),
               target_projector(t, TargetLevel::R));
  for (int a = 0; a < config.targets; ++a)
    for (int b = a + 1; b < config.targets; ++b)
      add_pair(v.target_target(a, b), target_projector(a, TargetLevel::R),
               target_projector(b, TargetLevel::R));
  for (int a = 0; a < config.controls; ++a)
    for (int b = a + 1; b < config.controls; ++b)
      add_pair(v.control_control(a, b), control_projector(a, ControlLevel::Rydberg),
               control_projector(b, ControlLevel::Rydberg));

  std::vector<SegmentHamiltonian> segments;
  for (const auto& seg : schedule.segments()) {
    SegmentHamiltonian h{seg.start, seg.end, base, std::nullopt, std::nullopt};
    if (const auto* pi = std::get_if<PiPulse>(&seg.fields)) {
      h.constant += Operator::embed_site(
          {Site{SiteKind::Control, pi->control}, control_hamiltonian(pi->rabi, 0.0)}, shape);
    } else if (const auto* raman = std::get_if<RamanWindow>(&seg.fields)) {
      Operator probe(shape);
      for (int t = 0; t < config.targets; ++t) {
        h.constant += Operator::embed_site(
            {Site{SiteKind::Target, t}, target_hamiltonian(0.0, raman->coupling, 0.0, 0.0)},
            shape);
        probe += Operator::embed_site(
            {Site{SiteKind::Target, t}, target_hamiltonian(1.0, 0.0, 0.0, 0.0)}, shape);
      }
      h.modulated = std::move(probe);
      h.pulse = raman->pulse;
    }
    segments.push_back(std::move(h));
  }
  return TimeDependentHamiltonian(shape, std::move(segments));
}

TimeDependentHamiltonian assemble_cnotn(const ModelConfig& config, const Schedule& schedule) {
  if (config.controls != 1) throw std::invalid_argument("CNOT^N register has one control atom");
  return assemble(config, schedule);
}

TimeDependentHamiltonian assemble_c2not2(const ModelConfig& config, const Schedule& schedule) {
  if (config.controls != 2 || config.targets != 2) {
    throw std::invalid_argument("C2NOT2 register has two control and two target atoms");
  }
  return assemble(config, schedule);
}

}  // namespace rydsim
