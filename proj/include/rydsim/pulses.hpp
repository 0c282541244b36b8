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

#include <string>
#include <variant>
#include <vector>

namespace rydsim {

// Smooth two-photon Raman pi-pulse with envelope peak * sin^2(pi t / T).
// The duration is fixed by the area condition  int_0^T Omega_p^2 dt = 2 pi Delta,
// which gives T = 16 pi Delta / (3 peak^2).
struct RamanPulse {
  double peak = 0.0;      // max Omega_p, rad/s
  double detuning = 0.0;  // Delta, rad/s
  double duration = 0.0;  // T, s

  static RamanPulse from_peak(double peak, double detuning);

  // Throws std::out_of_range outside [0, T].
  double envelope(double t) const;
  // sin^2(pi t / T) with no range check; used in the integrator.
  double shape(double t) const;
};

// Square pi-pulse on one control atom: rabi * duration = pi.
struct PiPulse {
  double rabi = 0.0;
  double duration = 0.0;
  int control = 0;

  static PiPulse with_duration(double duration, int control);
};

// Raman envelope on every target with the constant coupling field Omega_c.
struct RamanWindow {
  RamanPulse pulse;
  double coupling = 0.0;
};

struct Idle {};

struct Segment {
  double start = 0.0;
  double end = 0.0;
  std::variant<PiPulse, RamanWindow, Idle> fields;

  double duration() const { return end - start; }
};

class Schedule {
 public:
  Schedule(int controls, int targets, std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  int controls() const { return controls_; }
  int targets() const { return targets_; }
  double total_duration() const;

 private:
  int controls_;
  int targets_;
  std::vector<Segment> segments_;
};

// pi(control) -> Raman + Omega_c on all targets -> pi(control).
Schedule build_cnot_schedule(int targets, double probe_peak, double detuning, double coupling,
                             double pi_duration = 10e-9);

// pi(c1), pi(c2) -> Raman + Omega_c -> pi(c2), pi(c1).
Schedule build_c2not2_schedule(double probe_peak, double detuning, double coupling,
                               double pi_duration = 10e-9);

// Segment table as JSON text: times in us, fields in 2pi*MHz.
std::string schedule_to_json(const Schedule& schedule);

}  // namespace rydsim
