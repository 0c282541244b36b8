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

#include <gtest/gtest.h>

#include "rydsim/sweep.hpp"
#include "rydsim/units.hpp"

using namespace rydsim;

namespace {

RunSpec small_spec() {
  RunSpec spec = preset(GateKind::CnotN, 1);
  spec.sweep = SweepGrid{{3.0, 8.0, 3}, {2.5, 3.5, 2}};
  return spec;
}

}  // namespace

TEST(Sweep, SinglePointMatchesDirectRun) {
  const auto spec = small_spec();
  const auto result = run_sweep(spec, SweepGrid{{5.0, 5.0, 1}, {3.0, 3.0, 1}}, {.jobs = 1});
  ASSERT_EQ(result.records.size(), 1u);
  const auto& rec = result.records[0];
  ASSERT_EQ(rec.status, PointStatus::Ok);
  const auto model = build_model(spec, 5.0, 3.0);
  const auto run = gate_fidelity_run(model, gate_schedule(spec.gate, model), spec.integrator);
  EXPECT_EQ(*rec.fidelity, run.fidelity);
  EXPECT_EQ(rec.leak, run.leaked);
  EXPECT_NEAR(rec.duration_us, 1.3, 1e-12);
}

TEST(Sweep, OutputIndependentOfWorkerCount) {
  const auto spec = small_spec();
  const auto one = run_sweep(spec, spec.sweep, {.jobs = 1});
  const auto three = run_sweep(spec, spec.sweep, {.jobs = 3});
  EXPECT_EQ(sweep_csv(one.records), sweep_csv(three.records));
  EXPECT_EQ(sweep_json(spec, spec.sweep, one.records).dump(),
            sweep_json(spec, spec.sweep, three.records).dump());
  // Row-major, distance outer.
  EXPECT_DOUBLE_EQ(one.records[1].distance_um, 3.0);
  EXPECT_DOUBLE_EQ(one.records[1].ratio, 3.5);
  EXPECT_DOUBLE_EQ(one.records[2].distance_um, 5.5);
}

TEST(Sweep, ResumeIsIdempotent) {
  const auto spec = small_spec();
  const auto first = run_sweep(spec, spec.sweep, {.jobs = 1});
  const auto csv = sweep_csv(first.records);
  const auto cached = parse_sweep_csv(csv);

  const auto again = run_sweep(spec, spec.sweep, {.jobs = 2, .cached = cached});
  EXPECT_EQ(again.reused, spec.sweep.size());
  EXPECT_EQ(sweep_csv(again.records), csv);

  // A partial cache only recomputes the missing points.
  const std::vector<SweepRecord> partial(cached.begin(), cached.begin() + 2);
  const auto resumed = run_sweep(spec, spec.sweep, {.jobs = 1, .cached = partial});
  EXPECT_EQ(resumed.reused, 2u);
  EXPECT_EQ(sweep_csv(resumed.records), csv);
}

TEST(Sweep, BelowLeRoyRadiusIsValidityWarning) {
  const auto spec = small_spec();
  const auto rec = evaluate_point(spec, 1.5, 3.0);
  EXPECT_EQ(rec.status, PointStatus::ValidityWarning);
  EXPECT_FALSE(rec.fidelity.has_value());
  EXPECT_FALSE(rec.message.empty());
  const SweepResult result{{rec}, 0};
  EXPECT_FALSE(result.any_hard_failure());
  const auto csv = sweep_csv(result.records);
  EXPECT_NE(csv.find("1.5,3,,0,0,0,validity-warning"), std::string::npos);
}

TEST(Sweep, IntegratorFailureIsHardFailure) {
  auto spec = small_spec();
  spec.integrator.raman_step = 1e-9;
  spec.integrator.stability_limit = 1e6;
  const auto rec = evaluate_point(spec, 6.0, 3.0);
  EXPECT_EQ(rec.status, PointStatus::IntegratorFailure);
  EXPECT_TRUE((SweepResult{{rec}, 0}.any_hard_failure()));
}

TEST(Sweep, CsvRoundTrip) {
  std::vector<SweepRecord> recs(2);
  recs[0] = {2.5, 3.0, 0.987654321012, 1.5e-3, 0.9981, 1.3, PointStatus::Ok, ""};
  recs[1] = {1.0, 2.0, std::nullopt, 0, 0, 0, PointStatus::ValidityWarning, "below R_LR"};
  const auto back = parse_sweep_csv(sweep_csv(recs));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_DOUBLE_EQ(*back[0].fidelity, 0.987654321012);
  EXPECT_DOUBLE_EQ(back[0].leak, 1.5e-3);
  EXPECT_FALSE(back[1].fidelity.has_value());
  EXPECT_EQ(back[1].status, PointStatus::ValidityWarning);
  EXPECT_EQ(sweep_csv(back), sweep_csv(recs));
  EXPECT_THROW(parse_sweep_csv("R,ratio\n"), std::invalid_argument);
  EXPECT_THROW(parse_sweep_csv("R_um,ratio,F,leak,norm_final,duration_us,status\n1,2,3\n"),
               std::invalid_argument);
}

TEST(Sweep, JsonCarriesConfigAndHash) {
  const auto spec = small_spec();
  const auto rec = evaluate_point(spec, 1.5, 3.0);
  const auto j = sweep_json(spec, SweepGrid{{1.5, 1.5, 1}, {3.0, 3.0, 1}}, std::span(&rec, 1));
  EXPECT_EQ(j["config_hash"], config_hash(spec));
  EXPECT_EQ(j["points"].size(), 1u);
  EXPECT_TRUE(j["points"][0]["F"].is_null());
  EXPECT_EQ(j["points"][0]["status"], "validity-warning");
}

TEST(Sweep, ErrorCurvesOrdered) {
  const auto spec = small_spec();
  const ErrorVariant variants[] = {ErrorVariant::NoDecay, ErrorVariant::SecondIntermediate,
                                   ErrorVariant::FirstIntermediate};
  const auto curves = run_error_curves(spec, 3.0, Axis{4.0, 8.0, 3}, variants, {.jobs = 1});
  ASSERT_EQ(curves.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const double none = *curves[0].points[i].fidelity;
    const double second = *curves[1].points[i].fidelity;
    const double first = *curves[2].points[i].fidelity;
    // A shorter-lived intermediate level can only cost fidelity.
    EXPECT_GT(none, second);
    EXPECT_GT(second, first);
  }
  const auto csv = curves_csv(curves);
  EXPECT_EQ(csv.rfind("variant,R_um,ratio,F,leak,norm_final,duration_us,status\n", 0), 0u);
  EXPECT_NE(csv.find("first-intermediate,8,3,"), std::string::npos);
}

TEST(Sweep, FidelityNonIncreasingInTargetCount) {
  // Fixed R_CT and Omega_c / Omega_p; each extra target adds leakage paths.
  double last = 1.0;
  for (int n = 1; n <= 4; ++n) {
    RunSpec spec = preset(GateKind::CnotN, n);
    const auto rec = evaluate_point(spec, 6.8, 3.1);
    ASSERT_EQ(rec.status, PointStatus::Ok) << rec.message;
    EXPECT_LE(*rec.fidelity, last + 1e-9) << "N = " << n;
    last = *rec.fidelity;
  }
}
