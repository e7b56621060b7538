// Copyright 2026 The qccsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "qcc/bounds.hpp"
#include "qcc/hybrid.hpp"

namespace qcc {
namespace {

RunOptions quick(double budget, std::uint64_t seed = 0) {
  RunOptions o;
  o.budget_s = budget;
  o.seed = seed;
  o.node_budget = 20000;
  o.restart_budget = 20;
  return o;
}

std::string problems(const std::vector<std::string>& list) {
  std::string out;
  for (const std::string& p : list) out += p + "; ";
  return out;
}

TEST(Hybrid, HalfNeverWorse) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance in = testing::random_instance(seed, 6);
    const RunReport r = run_half(in, quick(2.0, seed));
    ASSERT_TRUE(r.solved());
    ASSERT_EQ(r.stages.size(), 2u);
    EXPECT_LE(r.final_schedule->objective(), r.stages[0].best->objective());
    EXPECT_EQ(*r.handoff, *r.stages[0].best);
    ASSERT_TRUE(r.delta.has_value());
    EXPECT_GE(*r.delta, 0.0);
    EXPECT_TRUE(check_report(in, r).empty()) << problems(check_report(in, r));
  }
}

TEST(Hybrid, HalfSwitchesAtHalfBudget) {
  const Instance in = generate_instance(build_preset_chip("rigetti-8"), 4, 1, Variant::kQcc, 3);
  RunOptions o;
  o.budget_s = 0.4;
  const RunReport r = run_half(in, o);
  EXPECT_NEAR(r.stages[1].started_s, 0.2, 0.1);
  EXPECT_NEAR(r.stages[0].budget_s, 0.2, 1e-12);
}

TEST(Hybrid, LastNeverWorse) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance in = testing::random_instance(seed + 100, 6);
    const RunReport r = run_last(in, quick(2.0, seed));
    ASSERT_TRUE(r.solved());
    EXPECT_LE(r.final_schedule->objective(), r.handoff->objective());
    EXPECT_GE(*r.delta, 0.0);
    EXPECT_DOUBLE_EQ(r.stages[1].started_s, r.stages[0].trace.back().seconds);
    EXPECT_NEAR(r.stages[1].budget_s, r.budget_s - r.stages[0].trace.back().seconds, 1e-12);
    EXPECT_TRUE(check_report(in, r).empty()) << problems(check_report(in, r));
  }
}

TEST(Hybrid, LastWithUnimprovedBaseline) {
  // One goal whose states are already adjacent: the baseline is optimal
  // and nothing improves on it.
  const Instance in = testing::single_goal(build_preset_chip("rigetti-8"), 1, 2);
  const RunReport r = run_last(in, quick(1.0));
  ASSERT_EQ(r.stages[0].trace.size(), 1u);
  EXPECT_LT(r.stages[0].trace[0].seconds, 0.05);
  EXPECT_GT(r.stages[1].budget_s, 0.9);
}

TEST(Hybrid, HalfReachesOracleOnSmallSuite) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Instance in = generate_instance(build_grid_chip(2, GridColoring::kAlternating),
                                          1 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 2),
                                          static_cast<Variant>(seed % 3), seed);
    RunOptions o;
    o.budget_s = 30.0;
    o.restart_budget = 10;
    const RunReport r = run_half(in, o);
    EXPECT_EQ(r.final_schedule->makespan, *testing::brute_force_optimum(in, horizon_bound(in)).makespan)
        << in.name;
  }
}

TEST(Standalone, RouterFinalIsAnytimeBest) {
  const Instance in = generate_instance(build_preset_chip("rigetti-21"), 8, 1, Variant::kQcc, 1);
  const RunReport r = run_standalone(in, Engine::kRouter, quick(1.0));
  ASSERT_EQ(r.stages.size(), 1u);
  EXPECT_EQ(*r.final_schedule, r.stages[0].incumbents.back());
  EXPECT_FALSE(r.delta.has_value());
  EXPECT_TRUE(check_report(in, r).empty()) << problems(check_report(in, r));
}

TEST(Standalone, CpSolvesTwoByTwo) {
  const Instance in = testing::single_goal(build_grid_chip(2, GridColoring::kAllBlue), 1, 4);
  const RunReport r = run_standalone(in, Engine::kCp, quick(5.0));
  ASSERT_TRUE(r.solved());
  EXPECT_EQ(r.stages[0].status, "optimal");
  EXPECT_EQ(r.final_schedule->makespan, 5);
}

TEST(Standalone, CpMayReportUnsolved) {
  const Instance in = generate_instance(build_preset_chip("rigetti-21"), 20, 1, Variant::kQccI, 4);
  RunOptions o;
  o.budget_s = 0.05;
  o.node_budget = 10;
  const RunReport r = run_standalone(in, Engine::kCp, o);
  EXPECT_FALSE(r.solved());
  EXPECT_EQ(r.stages[0].status, "timeout");
}

TEST(Standalone, RejectsHybridEngine) {
  EXPECT_THROW(run_standalone(testing::example_instance(), Engine::kHalf, quick(1.0)), std::invalid_argument);
}

TEST(Hybrid, RejectsNonPositiveBudget) {
  EXPECT_THROW(run_half(testing::example_instance(), quick(0.0)), std::invalid_argument);
}

TEST(Hybrid, SeedsAreDerivedAndRecorded) {
  const RunReport r = run_half(testing::example_instance(), quick(0.5, 42));
  EXPECT_EQ(r.seed, 42u);
  EXPECT_NE(r.stages[0].seed, r.stages[1].seed);
  EXPECT_NE(r.stages[0].seed, 42u);
}

TEST(Engine, Names) {
  for (Engine e : {Engine::kRouter, Engine::kCp, Engine::kHalf, Engine::kLast}) {
    EXPECT_EQ(parse_engine(to_string(e)), e);
  }
  EXPECT_THROW(parse_engine("lpg"), std::invalid_argument);
}

TEST(Report, JsonRoundTrip) {
  const Instance in = generate_instance(build_preset_chip("rigetti-8"), 4, 2, Variant::kQccX, 7);
  const RunReport r = run_last(in, quick(1.0, 0xFFFFFFFFFFFFFFF1ULL));
  const RunReport back = report_from_json(report_to_json(r));
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(back.final_schedule, r.final_schedule);
  EXPECT_EQ(back.handoff, r.handoff);
  ASSERT_EQ(back.stages.size(), r.stages.size());
  for (size_t k = 0; k < r.stages.size(); ++k) {
    EXPECT_EQ(back.stages[k].incumbents, r.stages[k].incumbents);
    EXPECT_EQ(back.stages[k].trace.size(), r.stages[k].trace.size());
  }
  EXPECT_EQ(back.delta, r.delta);
  EXPECT_EQ(report_to_json(back), report_to_json(r));
}

TEST(Report, CheckCatchesTampering) {
  const Instance in = generate_instance(build_preset_chip("rigetti-8"), 4, 1, Variant::kQcc, 7);
  RunReport r = run_half(in, quick(1.0));
  ASSERT_TRUE(check_report(in, r).empty());
  RunReport bad_delta = r;
  bad_delta.delta = *r.delta + 1.0;
  EXPECT_FALSE(check_report(in, bad_delta).empty());
  RunReport bad_schedule = r;
  bad_schedule.final_schedule->makespan += 1;
  EXPECT_FALSE(check_report(in, bad_schedule).empty());
  Instance other = in;
  other.goals.pop_back();
  EXPECT_FALSE(check_report(other, r).empty());
}

}  // namespace
}  // namespace qcc
