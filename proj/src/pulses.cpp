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

#include "rydsim/pulses.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "rydsim/units.hpp"

namespace rydsim {

RamanPulse RamanPulse::from_peak(double peak, double detuning) {
  if (!(peak > 0.0) || !(detuning > 0.0)) {
    throw std::invalid_argument("Raman peak and detuning must be positive");
  }
  return {peak, detuning, 16.0 * std::numbers::pi * detuning / (3.0 * peak * peak)};
}

double RamanPulse::shape(double t) const {
  const double s = std::sin(std::numbers::pi * t / duration);
  return s * s;
}

double RamanPulse::envelope(double t) const {
  if (t < 0.0 || t > duration) throw std::out_of_range("time outside the Raman window");
  return peak * shape(t);
}

PiPulse PiPulse::with_duration(double duration, int control) {
  if (!(duration > 0.0)) throw std::invalid_argument("pi-pulse duration must be positive");
  return {std::numbers::pi / duration, duration, control};
}

Schedule::Schedule(int controls, int targets, std::vector<Segment> segments)
    : controls_(controls), targets_(targets), segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("schedule has no segments");
  double t = 0.0;
  for (const auto& s : segments_) {
    if (s.start != t) throw std::invalid_argument("schedule segments must be contiguous from t=0");
    if (!(s.end > s.start)) throw std::invalid_argument("schedule segment has no duration");
    if (const auto* p = std::get_if<PiPulse>(&s.fields); p && (p->control < 0 || p->control >= controls)) {
      throw std::invalid_argument("pi-pulse addresses a control atom outside the register");
    }
    t = s.end;
  }
}

double Schedule::total_duration() const {
  double total = 0.0;
  for (const auto& s : segments_) total += s.duration();
  return total;
}

namespace {

void check_fields(double probe_peak, double detuning, double coupling, double pi_duration) {
  if (!(probe_peak > 0.0) || !(detuning > 0.0) || !(pi_duration > 0.0) || !(coupling >= 0.0)) {
    throw std::invalid_argument("pulse parameters must be positive");
  }
}

class Builder {
 public:
  void add(double duration, std::variant<PiPulse, RamanWindow, Idle> fields) {
    segments_.push_back(Segment{t_, t_ + duration, fields});
    t_ += duration;
  }
  std::vector<Segment> take() { return std::move(segments_); }

 private:
  double t_ = 0.0;
  std::vector<Segment> segments_;
};

}  // namespace

Schedule build_cnot_schedule(int targets, double probe_peak, double detuning, double coupling,
                             double pi_duration) {
  check_fields(probe_peak, detuning, coupling, pi_duration);
  if (targets < 1) throw std::invalid_argument("need at least one target");
  const auto pi = PiPulse::with_duration(pi_duration, 0);
  const auto raman = RamanPulse::from_peak(probe_peak, detuning);
  Builder b;
  b.add(pi_duration, pi);
  b.add(raman.duration, RamanWindow{raman, coupling});
  b.add(pi_duration, pi);
  return Schedule(1, targets, b.take());
}

Schedule build_c2not2_schedule(double probe_peak, double detuning, double coupling,
                               double pi_duration) {
  check_fields(probe_peak, detuning, coupling, pi_duration);
  const auto raman = RamanPulse::from_peak(probe_peak, detuning);
  Builder b;
  b.add(pi_duration, PiPulse::with_duration(pi_duration, 0));
  b.add(pi_duration, PiPulse::with_duration(pi_duration, 1));
  b.add(raman.duration, RamanWindow{raman, coupling});
  b.add(pi_duration, PiPulse::with_duration(pi_duration, 1));
  b.add(pi_duration, PiPulse::with_duration(pi_duration, 0));
  return Schedule(2, 2, b.take());
}

std::string schedule_to_json(const Schedule& schedule) {
  using nlohmann::json;
  json segs = json::array();
  for (const auto& s : schedule.segments()) {
    json j{{"start_us", units::to_us(s.start)}, {"end_us", units::to_us(s.end)}};
    if (const auto* p = std::get_if<PiPulse>(&s.fields)) {
      j["kind"] = "pi-pulse";
      j["control"] = p->control;
      j["rabi_MHz_2pi"] = units::to_mhz_2pi(p->rabi);
    } else if (const auto* r = std::get_if<RamanWindow>(&s.fields)) {
      j["kind"] = "raman";
      j["targets"] = schedule.targets();
      j["probe_peak_MHz_2pi"] = units::to_mhz_2pi(r->pulse.peak);
      j["detuning_MHz_2pi"] = units::to_mhz_2pi(r->pulse.detuning);
      j["coupling_MHz_2pi"] = units::to_mhz_2pi(r->coupling);
    } else {
      j["kind"] = "idle";
    }
    segs.push_back(std::move(j));
  }
  json doc{{"controls", schedule.controls()},
           {"targets", schedule.targets()},
           {"total_duration_us", units::to_us(schedule.total_duration())},
           {"segments", segs}};
  return doc.dump(2) + "\n";
}

}  // namespace rydsim
