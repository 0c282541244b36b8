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

#include "rydsim/sweep.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rydsim/error.hpp"

namespace rydsim {

namespace {

std::string fmt(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Grid coordinates are compared through their printed form so that values
// read back from a CSV match the freshly generated axis.
std::string point_key(double r, double ratio) { return fmt(r, 10) + "," + fmt(ratio, 10); }

std::string record_line(const SweepRecord& r) {
  std::string line = point_key(r.distance_um, r.ratio) + ",";
  line += r.fidelity ? fmt(*r.fidelity, 12) : "";
  line += "," + fmt(r.leak, 12) + "," + fmt(r.norm_final, 12) + "," + fmt(r.duration_us, 12) +
          "," + std::string(to_string(r.status));
  return line;
}

unsigned worker_count(int jobs, std::size_t tasks) {
  unsigned n = jobs > 0 ? static_cast<unsigned>(jobs) : std::thread::hardware_concurrency();
  n = std::max(1u, n);
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

// Runs fn(i) for i in [0, n) on a small pool; results land by index.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  const unsigned workers = worker_count(jobs, n);
  if (workers == 1) {
    work();
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
}

}  // namespace

std::string_view to_string(PointStatus status) {
  switch (status) {
    case PointStatus::Ok: return "ok";
    case PointStatus::ValidityWarning: return "validity-warning";
    case PointStatus::IntegratorFailure: return "integrator-failure";
  }
  return "?";
}

PointStatus parse_point_status(std::string_view name) {
  for (auto s : {PointStatus::Ok, PointStatus::ValidityWarning, PointStatus::IntegratorFailure}) {
    if (name == to_string(s)) return s;
  }
  throw std::invalid_argument("unknown point status '" + std::string(name) + "'");
}

std::string_view to_string(ErrorVariant v) {
  switch (v) {
    case ErrorVariant::SecondIntermediate: return "second-intermediate";
    case ErrorVariant::FirstIntermediate: return "first-intermediate";
    case ErrorVariant::NoDecay: return "no-decay";
  }
  return "?";
}

SweepRecord evaluate_point(const RunSpec& spec, double distance_um, double ratio) {
  SweepRecord rec;
  rec.distance_um = distance_um;
  rec.ratio = ratio;
  try {
    const auto model = build_model(spec, distance_um, ratio);
    for (const auto& w : model.interactions.warnings) {
      rec.message += (rec.message.empty() ? "" : "; ") + w;
    }
    const auto schedule = gate_schedule(spec.gate, model);
    const auto run = gate_fidelity_run(model, schedule, spec.integrator, spec.target);
    rec.fidelity = run.fidelity;
    rec.leak = run.leaked;
    rec.norm_final = run.final_norm;
    rec.duration_us = run.duration * 1e6;
  } catch (const ValidityError& ex) {
    rec.status = PointStatus::ValidityWarning;
    rec.message = ex.what();
  } catch (const IntegratorFailure& ex) {
    rec.status = PointStatus::IntegratorFailure;
    rec.message = ex.what();
  } catch (const std::exception& ex) {
    rec.status = PointStatus::IntegratorFailure;
    rec.message = ex.what();
  }
  return rec;
}

bool SweepResult::any_hard_failure() const {
  return std::any_of(records.begin(), records.end(), [](const SweepRecord& r) {
    return r.status == PointStatus::IntegratorFailure;
  });
}

SweepResult run_sweep(const RunSpec& spec, const SweepGrid& grid, const SweepOptions& opts) {
  grid.validate();
  std::map<std::string, const SweepRecord*> cache;
  for (const auto& r : opts.cached) cache.emplace(point_key(r.distance_um, r.ratio), &r);

  SweepResult result;
  result.records.resize(grid.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.distance_at(i), q = grid.ratio_at(i);
    if (const auto it = cache.find(point_key(r, q)); it != cache.end()) {
      result.records[i] = *it->second;
      ++result.reused;
    } else {
      pending.push_back(i);
    }
  }

  std::atomic<std::size_t> done{result.reused};
  std::mutex progress_mutex;
  parallel_for(pending.size(), opts.jobs, [&](std::size_t k) {
    const std::size_t i = pending[k];
    result.records[i] = evaluate_point(spec, grid.distance_at(i), grid.ratio_at(i));
    const auto d = ++done;
    if (opts.progress) {
      std::lock_guard lock(progress_mutex);
      opts.progress(d, grid.size());
    }
  });
  return result;
}

std::vector<ErrorCurve> run_error_curves(const RunSpec& spec, double ratio, const Axis& distance,
                                         std::span<const ErrorVariant> variants,
                                         const SweepOptions& opts) {
  const SweepGrid grid{distance, {ratio, ratio, 1}};
  std::vector<ErrorCurve> curves;
  for (const auto v : variants) {
    RunSpec s = spec;
    s.decay = v != ErrorVariant::NoDecay;
    s.intermediate =
        v == ErrorVariant::FirstIntermediate ? Intermediate::First : Intermediate::Second;
    SweepOptions o = opts;
    o.cached = {};
    curves.push_back({v, run_sweep(s, grid, o).records});
  }
  return curves;
}

std::string sweep_csv(std::span<const SweepRecord> records) {
  std::string out = "R_um,ratio,F,leak,norm_final,duration_us,status\n";
  for (const auto& r : records) out += record_line(r) + "\n";
  return out;
}

std::vector<SweepRecord> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "R_um,ratio,F,leak,norm_final,duration_us,status") {
    throw std::invalid_argument("not a sweep CSV (header mismatch)");
  }
  std::vector<SweepRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 7) throw std::invalid_argument("malformed sweep CSV row: " + line);
    SweepRecord r;
    try {
      r.distance_um = std::stod(cells[0]);
      r.ratio = std::stod(cells[1]);
      if (!cells[2].empty()) r.fidelity = std::stod(cells[2]);
      r.leak = std::stod(cells[3]);
      r.norm_final = std::stod(cells[4]);
      r.duration_us = std::stod(cells[5]);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed number in sweep CSV row: " + line);
    }
    r.status = parse_point_status(cells[6]);
    records.push_back(r);
  }
  return records;
}

nlohmann::ordered_json sweep_json(const RunSpec& spec, const SweepGrid& grid,
                                  std::span<const SweepRecord> records) {
  using json = nlohmann::ordered_json;
  json j;
  j["tool"] = "rydsim";
  j["version"] = RYDSIM_VERSION;
  j["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                       std::to_string(EIGEN_MAJOR_VERSION) + "." +
                       std::to_string(EIGEN_MINOR_VERSION);
  j["config_hash"] = config_hash(spec);
  j["config"] = to_json(spec);
  j["grid"] = {{"distance_um", {grid.distance.min, grid.distance.max, grid.distance.count}},
               {"ratio", {grid.ratio.min, grid.ratio.max, grid.ratio.count}}};
  json points = json::array();
  for (const auto& r : records) {
    json p;
    p["R_um"] = r.distance_um;
    p["ratio"] = r.ratio;
    p["F"] = r.fidelity ? json(*r.fidelity) : json(nullptr);
    p["leak"] = r.leak;
    p["norm_final"] = r.norm_final;
    p["duration_us"] = r.duration_us;
    p["status"] = to_string(r.status);
    if (!r.message.empty()) p["message"] = r.message;
    points.push_back(std::move(p));
  }
  j["points"] = std::move(points);
  return j;
}

std::string curves_csv(std::span<const ErrorCurve> curves) {
  std::string out = "variant,R_um,ratio,F,leak,norm_final,duration_us,status\n";
  for (const auto& c : curves) {
    for (const auto& r : c.points) out += std::string(to_string(c.variant)) + "," + record_line(r) + "\n";
  }
  return out;
}

}  // namespace rydsim
