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

#include "rydsim/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "rydsim/error.hpp"

namespace rydsim {

namespace {
constexpr Complex kMinusI{0.0, -1.0};
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Rk4Fixed: return "rk4";
    case Method::ExpmSegment: return "expm-segment";
    case Method::ExpRk4: return "exp-rk4";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "rk4" || name == "rk4-fixed") return Method::Rk4Fixed;
  if (name == "expm-segment") return Method::ExpmSegment;
  if (name == "exp-rk4") return Method::ExpRk4;
  throw std::invalid_argument("unknown integrator method '" + std::string(name) + "'");
}

void IntegratorOptions::validate(double pi_duration) const {
  if (!(pi_step > 0.0) || !(raman_step > 0.0)) {
    throw std::invalid_argument("integrator steps must be positive");
  }
  if (pi_step > pi_duration / 20.0 * (1.0 + 1e-12)) {
    throw std::invalid_argument("pi-pulse step must not exceed t_pi / 20");
  }
  if (record_stride < 0) throw std::invalid_argument("record_stride must be >= 0");
  if (!(stability_limit > 0.0)) throw std::invalid_argument("stability_limit must be positive");
}

namespace {

class Recorder {
 public:
  Recorder(Trajectory& traj, bool keep) : traj_(traj), keep_(keep) {}
  void operator()(double t, const StateVector& psi) {
    traj_.times.push_back(t);
    traj_.norms.push_back(psi.squaredNorm());
    if (keep_) traj_.states.push_back(psi);
  }

 private:
  Trajectory& traj_;
  bool keep_;
};

void check_finite(const StateVector& psi, double t) {
  if (!psi.allFinite()) {
    std::ostringstream msg;
    msg << "non-finite amplitudes at t = " << t << " s";
    throw IntegratorFailure(msg.str(), t);
  }
}

struct Rk4Scratch {
  explicit Rk4Scratch(Eigen::Index n) : k1(n), k2(n), k3(n), k4(n), tmp(n) {}
  StateVector k1, k2, k3, k4, tmp;
};

void rk4_step(const SegmentHamiltonian& h, double t, double dt, StateVector& psi, Rk4Scratch& s) {
  h.apply(t, psi, s.k1);
  s.tmp = psi + (0.5 * dt * kMinusI) * s.k1;
  h.apply(t + 0.5 * dt, s.tmp, s.k2);
  s.tmp = psi + (0.5 * dt * kMinusI) * s.k2;
  h.apply(t + 0.5 * dt, s.tmp, s.k3);
  s.tmp = psi + (dt * kMinusI) * s.k3;
  h.apply(t + dt, s.tmp, s.k4);
  psi += (dt / 6.0 * kMinusI) * (s.k1 + 2.0 * s.k2 + 2.0 * s.k3 + s.k4);
}

// Top block row of exp([[Z, I, 0..], [0, 0, I, ..], ..]) holds
// exp(Z), phi_1(Z), ..., phi_order(Z).
std::vector<Eigen::MatrixXcd> phi_functions(const Eigen::MatrixXcd& z, int order) {
  const Eigen::Index n = z.rows();
  const Eigen::Index m = n * (order + 1);
  Eigen::MatrixXcd aug = Eigen::MatrixXcd::Zero(m, m);
  aug.topLeftCorner(n, n) = z;
  for (int k = 0; k < order; ++k) aug.block(k * n, (k + 1) * n, n, n).setIdentity();
  const Eigen::MatrixXcd e = aug.exp();
  std::vector<Eigen::MatrixXcd> out;
  for (int k = 0; k <= order; ++k) out.emplace_back(e.block(0, k * n, n, n));
  return out;
}

// Exponential time differencing RK4 (Cox-Matthews) for
// psi' = L psi + N(t, psi) with L = -i H_const and N = -i f(t) P psi. The
// constant part enters only through exp and phi functions, so rapidly
// rotating components are integrated exactly instead of sampled.
// States are held as columns so a batch of inputs shares one set of dense
// products.
struct EtdStepper {
  EtdStepper(const SegmentHamiltonian& seg, double dt) : seg(seg), dt(dt) {
    const Eigen::MatrixXcd l = kMinusI * seg.constant.to_dense();
    auto half = phi_functions(0.5 * dt * l, 1);
    e_half = std::move(half[0]);
    phi1_half = (0.5 * dt) * half[1];
    auto full = phi_functions(dt * l, 3);
    e_full = std::move(full[0]);
    f1 = dt * (full[1] - 3.0 * full[2] + 4.0 * full[3]);
    f2 = dt * 2.0 * (full[2] - 2.0 * full[3]);
    f3 = dt * (4.0 * full[3] - full[2]);
    col_in.resize(l.rows());
    col_out.resize(l.rows());
  }

  void rhs(double t, const Eigen::MatrixXcd& x, Eigen::MatrixXcd& out) {
    out.resize(x.rows(), x.cols());
    const Complex scale = kMinusI * seg.modulation(t);
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      col_in = x.col(j);
      seg.modulated->apply(col_in, col_out, scale);
      out.col(j) = col_out;
    }
  }

  void step(double t, Eigen::MatrixXcd& psi) {
    const double mid = t + 0.5 * dt;
    rhs(t, psi, nu);
    tmp.noalias() = e_half * psi;
    a = tmp;
    a.noalias() += phi1_half * nu;
    rhs(mid, a, na);
    b = tmp;
    b.noalias() += phi1_half * na;
    rhs(mid, b, nb);
    c.noalias() = e_half * a;
    tmp = 2.0 * nb - nu;
    c.noalias() += phi1_half * tmp;
    rhs(t + dt, c, nc);
    tmp = na + nb;
    a.noalias() = e_full * psi;
    a.noalias() += f1 * nu;
    a.noalias() += f2 * tmp;
    a.noalias() += f3 * nc;
    psi.swap(a);
  }

  const SegmentHamiltonian& seg;
  double dt;
  Eigen::MatrixXcd e_half, phi1_half, e_full, f1, f2, f3;
  Eigen::MatrixXcd nu, na, nb, nc, a, b, c, tmp;
  StateVector col_in, col_out;
};

void validate_for(const TimeDependentHamiltonian& h, const IntegratorOptions& opts) {
  double min_pi = h.duration();
  for (const auto& seg : h.segments())
    if (!seg.modulated) min_pi = std::min(min_pi, seg.end - seg.start);
  opts.validate(min_pi);
}

long raman_steps(double span, double step) {
  return std::max<long>(1, static_cast<long>(std::ceil(span / step * (1.0 - 1e-12))));
}

}  // namespace

Eigen::MatrixXcd dense_propagator(const Operator& h, double dt) {
  const Eigen::MatrixXcd m = (kMinusI * dt) * h.to_dense();
  return m.exp();
}

void exp_propagate(const Operator& h, double dt, StateVector& psi) {
  const double bound = h.norm_bound() * std::abs(dt);
  const auto substeps = std::max<long>(1, static_cast<long>(std::ceil(bound / 0.5)));
  const double sub = dt / static_cast<double>(substeps);
  StateVector term(psi.size()), next(psi.size());
  for (long s = 0; s < substeps; ++s) {
    term = psi;
    const double scale = psi.norm();
    for (int k = 1; k <= 60; ++k) {
      h.apply(term, next, kMinusI * sub / static_cast<double>(k));
      term.swap(next);
      psi += term;
      if (term.norm() <= 1e-18 * scale) break;
    }
  }
}

Trajectory evolve(const TimeDependentHamiltonian& h, const StateVector& psi0,
                  const IntegratorOptions& opts) {
  const auto n = static_cast<Eigen::Index>(h.shape().dim());
  if (psi0.size() != n) throw std::invalid_argument("initial state dimension mismatch");
  if (std::abs(psi0.squaredNorm() - 1.0) > 1e-9) {
    throw std::invalid_argument("initial state must be normalized");
  }
  validate_for(h, opts);

  Trajectory traj;
  Recorder record(traj, opts.keep_states);
  StateVector psi = psi0;
  Rk4Scratch scratch(n);
  record(0.0, psi);

  for (const auto& seg : h.segments()) {
    const double span = seg.end - seg.start;
    if (seg.is_constant() && opts.method == Method::ExpmSegment) {
      exp_propagate(seg.constant, span, psi);
      check_finite(psi, seg.end);
      record(seg.end, psi);
      continue;
    }
    if (opts.method == Method::ExpRk4) {
      if (seg.is_constant()) {
        psi = dense_propagator(seg.constant, span) * psi;
      } else {
        const long steps = raman_steps(span, opts.raman_step);
        EtdStepper stepper(seg, span / static_cast<double>(steps));
        Eigen::MatrixXcd col = psi;
        for (long i = 0; i < steps; ++i) {
          const double t = seg.start + static_cast<double>(i) * stepper.dt;
          stepper.step(t, col);
          if (opts.record_stride > 0 && (i + 1) % opts.record_stride == 0 && i + 1 < steps) {
            psi = col.col(0);
            check_finite(psi, t + stepper.dt);
            record(t + stepper.dt, psi);
          }
        }
        psi = col.col(0);
      }
      check_finite(psi, seg.end);
      record(seg.end, psi);
      continue;
    }
    double step = seg.is_constant() ? opts.pi_step : opts.raman_step;
    step = std::min(step, opts.stability_limit / std::max(seg.norm_bound(), 1e-300));
    const auto steps = std::max<long>(1, static_cast<long>(std::ceil(span / step * (1.0 - 1e-12))));
    const double dt = span / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) {
      const double t = seg.start + static_cast<double>(i) * dt;
      rk4_step(seg, t, dt, psi, scratch);
      check_finite(psi, t + dt);
      if (opts.record_stride > 0 && (i + 1) % opts.record_stride == 0 && i + 1 < steps) {
        record(t + dt, psi);
      }
    }
    record(seg.end, psi);
  }
  traj.final_state = psi;
  return traj;
}

Eigen::MatrixXcd evolve_columns(const TimeDependentHamiltonian& h, const Eigen::MatrixXcd& psi0,
                                const IntegratorOptions& opts) {
  IntegratorOptions run = opts;
  run.keep_states = false;
  run.record_stride = 0;
  Eigen::MatrixXcd out(psi0.rows(), psi0.cols());
  if (opts.method != Method::ExpRk4 || psi0.cols() == 0) {
    for (Eigen::Index j = 0; j < psi0.cols(); ++j) {
      out.col(j) = evolve(h, psi0.col(j), run).final_state;
    }
    return out;
  }
  validate_for(h, opts);
  const auto n = static_cast<Eigen::Index>(h.shape().dim());
  if (psi0.rows() != n) throw std::invalid_argument("initial state dimension mismatch");
  for (Eigen::Index j = 0; j < psi0.cols(); ++j) {
    if (std::abs(psi0.col(j).squaredNorm() - 1.0) > 1e-9) {
      throw std::invalid_argument("initial state must be normalized");
    }
  }
  out = psi0;
  for (const auto& seg : h.segments()) {
    const double span = seg.end - seg.start;
    if (seg.is_constant()) {
      out = dense_propagator(seg.constant, span) * out;
    } else {
      const long steps = raman_steps(span, opts.raman_step);
      EtdStepper stepper(seg, span / static_cast<double>(steps));
      for (long i = 0; i < steps; ++i) stepper.step(seg.start + static_cast<double>(i) * stepper.dt, out);
    }
    if (!out.allFinite()) throw IntegratorFailure("non-finite amplitudes", seg.end);
  }
  return out;
}

PopulationPattern PopulationPattern::parse(std::string_view text, RegisterShape shape) {
  static constexpr std::string_view kControl = "01r";
  static constexpr std::string_view kTarget = "ABPR";
  PopulationPattern p;
  p.name_ = std::string(text);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '|' || c == ' ') continue;
    const bool control = static_cast<int>(p.allowed_.size()) < shape.controls;
    const auto alphabet = control ? kControl : kTarget;
    std::bitset<4> set;
    auto add = [&](char ch) {
      const auto pos = alphabet.find(ch);
      if (pos == std::string_view::npos) {
        throw std::invalid_argument(std::string("bad level '") + ch + "' in pattern " +
                                    std::string(text));
      }
      set.set(pos);
    };
    if (c == '*') {
      for (std::size_t b = 0; b < alphabet.size(); ++b) set.set(b);
    } else if (c == '[') {
      const auto close = text.find(']', i);
      if (close == std::string_view::npos) throw std::invalid_argument("unclosed '[' in pattern");
      for (std::size_t j = i + 1; j < close; ++j) add(text[j]);
      i = close;
    } else {
      add(c);
    }
    p.allowed_.push_back(set);
  }
  if (static_cast<int>(p.allowed_.size()) != shape.num_sites()) {
    throw std::invalid_argument("pattern " + std::string(text) + " does not match the register");
  }
  return p;
}

PopulationPattern PopulationPattern::from_label(const BasisLabel& label) {
  PopulationPattern p;
  p.name_ = label.to_string();
  for (auto l : label.controls) p.allowed_.emplace_back(1u << static_cast<unsigned>(l));
  for (auto l : label.targets) p.allowed_.emplace_back(1u << static_cast<unsigned>(l));
  return p;
}

bool PopulationPattern::matches(std::size_t index, RegisterShape shape) const {
  for (int s = shape.num_sites() - 1; s >= 0; --s) {
    const auto d = static_cast<std::size_t>(shape.site_dim(s));
    if (!allowed_[static_cast<std::size_t>(s)].test(index % d)) return false;
    index /= d;
  }
  return true;
}

double PopulationPattern::population(const StateVector& psi, RegisterShape shape) const {
  if (static_cast<int>(allowed_.size()) != shape.num_sites() ||
      psi.size() != static_cast<Eigen::Index>(shape.dim())) {
    throw std::invalid_argument("pattern does not match the register");
  }
  double p = 0.0;
  for (std::size_t i = 0; i < shape.dim(); ++i)
    if (matches(i, shape)) p += std::norm(psi(static_cast<Eigen::Index>(i)));
  return p;
}

std::vector<std::vector<double>> populations(const Trajectory& traj,
                                             std::span<const PopulationPattern> patterns,
                                             RegisterShape shape) {
  if (traj.states.size() != traj.times.size()) {
    throw std::invalid_argument("trajectory was recorded without states");
  }
  std::vector<std::vector<double>> out;
  for (const auto& p : patterns) {
    std::vector<double> series;
    series.reserve(traj.states.size());
    for (const auto& psi : traj.states) series.push_back(p.population(psi, shape));
    out.push_back(std::move(series));
  }
  return out;
}

}  // namespace rydsim
