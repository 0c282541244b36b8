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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rydsim/config.hpp"

namespace rydsim {

enum class PointStatus : std::uint8_t { Ok, ValidityWarning, IntegratorFailure };

std::string_view to_string(PointStatus status);
PointStatus parse_point_status(std::string_view name);

struct SweepRecord {
  double distance_um = 0.0;
  double ratio = 0.0;
  std::optional<double> fidelity;  // absent for validity-warning points
  double leak = 0.0;
  double norm_final = 0.0;
  double duration_us = 0.0;
  PointStatus status = PointStatus::Ok;
  std::string message;  // regime warnings or the failure reason
};

// One grid point: build the model, run the gate, project, score. Never
// throws for physics failures; they are reported through `status`.
SweepRecord evaluate_point(const RunSpec& spec, double distance_um, double ratio);

struct SweepOptions {
  int jobs = 0;  // 0: hardware concurrency
  // Records from an earlier run of the same config. Points whose (R, ratio)
  // match are copied instead of recomputed.
  std::span<const SweepRecord> cached;
  // Called from worker threads after each finished point.
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // grid order, distance outer
  std::size_t reused = 0;

  bool any_hard_failure() const;
};

SweepResult run_sweep(const RunSpec& spec, const SweepGrid& grid, const SweepOptions& opts = {});

enum class ErrorVariant : std::uint8_t { SecondIntermediate, FirstIntermediate, NoDecay };

std::string_view to_string(ErrorVariant v);

struct ErrorCurve {
  ErrorVariant variant = ErrorVariant::SecondIntermediate;
  std::vector<SweepRecord> points;
};

// F(R) at fixed Omega_c/Omega_p for each lifetime variant.
std::vector<ErrorCurve> run_error_curves(const RunSpec& spec, double ratio, const Axis& distance,
                                         std::span<const ErrorVariant> variants,
                                         const SweepOptions& opts = {});

// CSV header: R_um,ratio,F,leak,norm_final,duration_us,status
std::string sweep_csv(std::span<const SweepRecord> records);
// Parses what sweep_csv writes; throws std::invalid_argument on malformed rows.
std::vector<SweepRecord> parse_sweep_csv(const std::string& text);
nlohmann::ordered_json sweep_json(const RunSpec& spec, const SweepGrid& grid,
                                  std::span<const SweepRecord> records);

// CSV header: variant,R_um,ratio,F,leak,norm_final,duration_us,status
std::string curves_csv(std::span<const ErrorCurve> curves);

}  // namespace rydsim
