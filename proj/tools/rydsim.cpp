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

// rydsim command-line driver: simulate, sweep, truthtable, schedule, potential.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rydsim/config.hpp"
#include "rydsim/error.hpp"
#include "rydsim/sweep.hpp"
#include "rydsim/units.hpp"

namespace fs = std::filesystem;
using namespace rydsim;

namespace {

struct CommonArgs {
  std::string config;
  std::optional<std::string> gate;
  std::optional<int> targets;
  std::optional<double> distance;
  std::optional<double> ratio;
  std::optional<std::string> intermediate;
  bool no_decay = false;
  std::optional<std::string> target_state;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("-c,--config", a.config, "YAML run configuration");
  cmd->add_option("--gate", a.gate, "cnotn or c2not2 (only without --config)");
  cmd->add_option("--targets", a.targets, "number of target atoms (only without --config)");
  cmd->add_option("--distance", a.distance, "R_CT (CNOT^N) or R_CC (C2NOT2) in um");
  cmd->add_option("--ratio", a.ratio, "Omega_c / Omega_p");
  cmd->add_option("--intermediate", a.intermediate, "first or second resonance level");
  cmd->add_flag("--no-decay", a.no_decay, "switch off all spontaneous decay");
  cmd->add_option("--target-state", a.target_state, "ghz or product");
}

RunSpec resolve(const CommonArgs& a) {
  RunSpec spec;
  if (!a.config.empty()) {
    if (a.gate || a.targets) {
      throw std::invalid_argument("--gate/--targets go in the config file when --config is used");
    }
    spec = load_config(a.config);
  } else {
    const auto gate = a.gate ? parse_gate_kind(*a.gate) : GateKind::CnotN;
    spec = preset(gate, a.targets.value_or(gate == GateKind::C2Not2 ? 2 : 1));
  }
  if (a.distance) spec.distance_um = *a.distance;
  if (a.ratio) spec.ratio = *a.ratio;
  if (a.intermediate) spec.intermediate = parse_intermediate(*a.intermediate);
  if (a.no_decay) spec.decay = false;
  if (a.target_state) spec.target = parse_target_kind(*a.target_state);
  spec.validate();
  return spec;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// "ghz" or one or more basis labels joined by '+', equally weighted.
StateVector initial_state(const std::string& text, RegisterShape shape) {
  if (text == "ghz") return ghz_preparation_input(shape);
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(shape.dim()));
  std::stringstream ss(text);
  for (std::string label; std::getline(ss, label, '+');) {
    psi += basis_state(BasisLabel::parse(label, shape), shape);
  }
  if (psi.norm() == 0.0) throw std::invalid_argument("empty initial state");
  return psi.normalized();
}

std::vector<std::string> default_patterns(RegisterShape shape) {
  const std::string zeros(static_cast<std::size_t>(shape.controls), '0');
  const std::string ones(static_cast<std::size_t>(shape.controls), '1');
  const std::string as(static_cast<std::size_t>(shape.targets), 'A');
  const std::string bs(static_cast<std::size_t>(shape.targets), 'B');
  const std::string any(static_cast<std::size_t>(shape.targets), '*');
  std::string excited;
  for (int i = 0; i < shape.controls; ++i) excited += "*";
  return {zeros + as, zeros + bs, ones + as, ones + bs, "[r]" + excited.substr(1) + any};
}

int cmd_simulate(const CommonArgs& common, const std::string& input,
                 std::vector<std::string> patterns, int stride, const std::string& out) {
  const auto spec = resolve(common);
  const auto model = build_model(spec);
  const auto schedule = gate_schedule(spec.gate, model);
  const auto h = assemble(model, schedule);
  IntegratorOptions opts = spec.integrator;
  opts.record_stride = stride;
  opts.keep_states = true;
  const auto shape = model.shape();
  const auto traj = evolve(h, initial_state(input, shape), opts);

  if (patterns.empty()) patterns = default_patterns(shape);
  std::vector<PopulationPattern> parsed;
  for (const auto& p : patterns) parsed.push_back(PopulationPattern::parse(p, shape));
  const auto series = populations(traj, parsed, shape);

  std::string text = "time_us";
  for (const auto& p : parsed) text += ",P(" + p.name() + ")";
  text += ",norm\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    text += num(units::to_us(traj.times[i]));
    for (const auto& s : series) text += "," + num(s[i]);
    text += "," + num(traj.norms[i]) + "\n";
  }
  write_text(out, text);
  return 0;
}

struct GridArgs {
  std::optional<double> r_min, r_max, ratio_min, ratio_max;
  std::optional<int> r_count, ratio_count;
};

int cmd_sweep(const CommonArgs& common, const GridArgs& g, const std::string& out_dir,
              std::optional<int> jobs, bool resume, std::optional<double> curves_ratio,
              bool quiet) {
  RunSpec spec = resolve(common);
  if (g.r_min) spec.sweep.distance.min = *g.r_min;
  if (g.r_max) spec.sweep.distance.max = *g.r_max;
  if (g.r_count) spec.sweep.distance.count = *g.r_count;
  if (g.ratio_min) spec.sweep.ratio.min = *g.ratio_min;
  if (g.ratio_max) spec.sweep.ratio.max = *g.ratio_max;
  if (g.ratio_count) spec.sweep.ratio.count = *g.ratio_count;
  if (jobs) spec.jobs = *jobs;
  spec.validate();

  fs::create_directories(out_dir);
  SweepOptions opts;
  opts.jobs = spec.jobs;
  if (!quiet) {
    opts.progress = [](std::size_t done, std::size_t total) {
      std::fprintf(stderr, "\r%zu/%zu points", done, total);
      if (done == total) std::fprintf(stderr, "\n");
    };
  }

  if (curves_ratio) {
    const ErrorVariant variants[] = {ErrorVariant::SecondIntermediate,
                                     ErrorVariant::FirstIntermediate, ErrorVariant::NoDecay};
    const auto curves = run_error_curves(spec, *curves_ratio, spec.sweep.distance, variants, opts);
    write_text((fs::path(out_dir) / "curves.csv").string(), curves_csv(curves));
    bool failed = false;
    for (const auto& c : curves)
      for (const auto& r : c.points) failed = failed || r.status == PointStatus::IntegratorFailure;
    return failed ? 1 : 0;
  }

  const auto csv_path = fs::path(out_dir) / "sweep.csv";
  const auto json_path = fs::path(out_dir) / "sweep.json";
  std::vector<SweepRecord> cached;
  if (resume && fs::exists(csv_path) && fs::exists(json_path)) {
    const auto meta = nlohmann::json::parse(read_text(json_path));
    if (meta.value("config_hash", "") == config_hash(spec)) {
      cached = parse_sweep_csv(read_text(csv_path));
      // Messages live only in the JSON; restore them for reused points.
      const auto& points = meta.at("points");
      for (std::size_t i = 0; i < cached.size() && i < points.size(); ++i) {
        cached[i].message = points[i].value("message", "");
      }
    } else if (!quiet) {
      std::fprintf(stderr, "config changed since the cached sweep; recomputing\n");
    }
  }
  opts.cached = cached;
  const auto result = run_sweep(spec, spec.sweep, opts);
  if (!quiet && result.reused > 0) std::fprintf(stderr, "reused %zu cached points\n", result.reused);
  write_text(csv_path.string(), sweep_csv(result.records));
  write_text(json_path.string(), sweep_json(spec, spec.sweep, result.records).dump(2) + "\n");
  return result.any_hard_failure() ? 1 : 0;
}

int cmd_truthtable(const CommonArgs& common, const std::string& out) {
  const auto spec = resolve(common);
  const auto model = build_model(spec);
  const auto rows = truth_table_check(spec.gate, model, spec.integrator);
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    j.push_back({{"input", r.input},
                 {"expected", r.expected},
                 {"expected_phase", {r.expected_phase.real(), r.expected_phase.imag()}},
                 {"population", r.population},
                 {"phase_error_rad", r.phase_error}});
  }
  write_text(out, j.dump(2) + "\n");
  return 0;
}

int cmd_schedule(const CommonArgs& common, const std::string& out) {
  const auto spec = resolve(common);
  ModelConfig model;
  model.controls = spec.controls();
  model.targets = spec.targets;
  model.probe_peak = spec.probe_peak;
  model.detuning = spec.detuning;
  model.coupling = spec.ratio * spec.probe_peak;
  model.pi_duration = spec.pi_duration;
  write_text(out, schedule_to_json(gate_schedule(spec.gate, model)));
  return 0;
}

int cmd_potential(const CommonArgs& common, double r_min, double r_max, int count,
                  const std::string& out) {
  const auto spec = resolve(common);
  if (!(r_min > 0.0 && r_min < r_max && count >= 2)) {
    throw std::invalid_argument("potential range needs 0 < min < max and count >= 2");
  }
  std::string text = "R_um,pair,V_MHz_2pi,regime\n";
  for (const auto& [key, c] : spec.pairs.pairs()) {
    const std::string name = std::string(to_string(c.first)) + "-" + std::string(to_string(c.second));
    for (int i = 0; i < count; ++i) {
      const double r = r_min + (r_max - r_min) * i / (count - 1);
      try {
        const auto v = pair_potential(c, r);
        text += num(r) + "," + name + "," + num(units::to_mhz_2pi(v.value)) + "," +
                std::string(to_string(v.regime)) + "\n";
      } catch (const ValidityError&) {
        text += num(r) + "," + name + ",,invalid\n";
      }
    }
  }
  write_text(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rydsim: EIT-blockade CNOT^N and C2NOT2 gate simulator"};
  app.require_subcommand(1);

  CommonArgs common;

  auto* simulate = app.add_subcommand("simulate", "evolve one initial state, write populations CSV");
  add_common(simulate, common);
  std::string sim_input = "ghz", sim_out;
  std::vector<std::string> sim_patterns;
  int sim_stride = 100;
  simulate->add_option("--input", sim_input, "'ghz' or basis labels joined by '+' (e.g. 0A+1A)");
  simulate->add_option("-p,--population", sim_patterns, "population pattern, e.g. 1[PR]");
  simulate->add_option("--stride", sim_stride, "record every n integrator steps")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("-o,--out", sim_out, "output CSV (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "fidelity over an (R, Omega_c/Omega_p) grid");
  add_common(sweep, common);
  GridArgs grid;
  std::string sweep_out = "sweep_out";
  std::optional<int> jobs;
  std::optional<double> curves;
  bool resume = false, quiet = false;
  sweep->add_option("--r-min", grid.r_min, "distance axis minimum, um");
  sweep->add_option("--r-max", grid.r_max, "distance axis maximum, um");
  sweep->add_option("--r-count", grid.r_count, "distance axis points");
  sweep->add_option("--ratio-min", grid.ratio_min, "ratio axis minimum");
  sweep->add_option("--ratio-max", grid.ratio_max, "ratio axis maximum");
  sweep->add_option("--ratio-count", grid.ratio_count, "ratio axis points");
  sweep->add_option("-j,--jobs", jobs, "worker threads (0: all cores)");
  sweep->add_option("-o,--out", sweep_out, "output directory");
  sweep->add_flag("--resume", resume, "reuse points from an earlier sweep of the same config");
  sweep->add_option("--curves", curves,
                    "instead of the grid, F(R) curves for the decay variants at this ratio");
  sweep->add_flag("-q,--quiet", quiet, "no progress output");

  auto* truthtable = app.add_subcommand("truthtable", "per-row truth table report (JSON)");
  add_common(truthtable, common);
  std::string tt_out;
  truthtable->add_option("-o,--out", tt_out, "output JSON (default stdout)");

  auto* schedule = app.add_subcommand("schedule", "pulse schedule (JSON)");
  add_common(schedule, common);
  std::string sched_out;
  schedule->add_option("-o,--out", sched_out, "output JSON (default stdout)");

  auto* potential = app.add_subcommand("potential", "pair potentials V(R) (CSV)");
  add_common(potential, common);
  double pot_min = 2.0, pot_max = 12.0;
  int pot_count = 101;
  std::string pot_out;
  potential->add_option("--min", pot_min, "smallest R, um");
  potential->add_option("--max", pot_max, "largest R, um");
  potential->add_option("--count", pot_count, "number of radii");
  potential->add_option("-o,--out", pot_out, "output CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return cmd_simulate(common, sim_input, sim_patterns, sim_stride, sim_out);
    if (*sweep) return cmd_sweep(common, grid, sweep_out, jobs, resume, curves, quiet);
    if (*truthtable) return cmd_truthtable(common, tt_out);
    if (*schedule) return cmd_schedule(common, sched_out);
    if (*potential) return cmd_potential(common, pot_min, pot_max, pot_count, pot_out);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "rydsim: %s\n", ex.what());
    return 2;
  }
  return 0;
}
