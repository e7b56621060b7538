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

#include <map>

#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "qcc/bounds.hpp"
#include "qcc/router.hpp"

namespace qcc {
namespace {

Instance with_goals(const Chip& chip, int goals, int stages) {
  return generate_instance(chip, goals, stages, Variant::kQcc, 1);
}

TEST(Horizon, Rigetti8FiveGoals) {
  EXPECT_EQ(horizon_bound(with_goals(build_preset_chip("rigetti-8"), 5, 1)), 50);
}

TEST(Horizon, Rigetti21OneGoal) {
  EXPECT_EQ(horizon_bound(with_goals(build_preset_chip("rigetti-21"), 1, 1)), 18);
}

TEST(Horizon, TwoStages) {
  const Instance in = with_goals(build_preset_chip("rigetti-8"), 1, 2);
  EXPECT_EQ(horizon_bound(in), 21);
  EXPECT_LE(solve_sequential_baseline(in).makespan, 21);
}

TEST(Horizon, AllBlueGridUsesBlueDuration) {
  // 2x2: phi = 1, tau_max = 3.
  EXPECT_EQ(horizon_bound(with_goals(build_grid_chip(2, GridColoring::kAllBlue), 2, 1)), 10);
}

TEST(TaskBounds, Swaps) {
  const Chip chip = build_preset_chip("rigetti-8");
  EXPECT_EQ(swap_task_bound(with_goals(chip, 5, 1)), 5);
  EXPECT_EQ(swap_task_bound(with_goals(chip, 0, 1)), 0);
  EXPECT_EQ(swap_task_bound(with_goals(chip, 3, 2)), 6);
}

TEST(TaskBounds, Ps) {
  const Chip chip = build_preset_chip("rigetti-8");
  EXPECT_EQ(ps_task_bound(with_goals(chip, 5, 1)), 5);
  EXPECT_EQ(ps_task_bound(with_goals(chip, 5, 2)), 10);
  EXPECT_EQ(ps_task_bound(with_goals(chip, 0, 1)), 0);
}

TEST(TaskBounds, Multiplier) {
  const Instance in = with_goals(build_preset_chip("rigetti-8"), 4, 1);
  EXPECT_EQ(compute_bounds(in, 3).swaps_per_gate, 12);
  EXPECT_THROW(compute_bounds(in, 0), std::invalid_argument);
}

TEST(TaskBounds, BoundSetFields) {
  const BoundSet b = compute_bounds(with_goals(build_preset_chip("rigetti-21"), 4, 1));
  EXPECT_EQ(b.max_swap_distance, 7);
  EXPECT_EQ(b.max_ps_duration, 4);
  EXPECT_EQ(b.horizon, 4 * (7 * 2 + 4));
  EXPECT_GE(b.horizon, b.max_ps_duration);
}

// The baseline never fires one physical swap gate more often than the
// per-gate bound allows.
TEST(TaskBounds, BaselineFitsSwapBound) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance in = testing::random_instance(seed, 6);
    const Schedule s = solve_sequential_baseline(in);
    std::map<std::pair<int, int>, int> uses;
    for (const GateTask& t : s.tasks) {
      if (t.kind == TaskKind::kSwap) ++uses[{std::min(t.u, t.v), std::max(t.u, t.v)}];
    }
    for (const auto& [edge, n] : uses) EXPECT_LE(n, swap_task_bound(in)) << in.name;
  }
}

TEST(TaskBounds, OracleOptimaFitHorizon) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance in = generate_instance(build_grid_chip(2, seed % 2 ? GridColoring::kAllBlue
                                                                       : GridColoring::kAlternating),
                                          1 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 2),
                                          static_cast<Variant>(seed % 3), seed);
    const testing::OracleResult r = testing::brute_force_optimum(in, horizon_bound(in));
    ASSERT_TRUE(r.makespan.has_value()) << in.name;
    EXPECT_LE(*r.makespan, horizon_bound(in));
  }
}

}  // namespace
}  // namespace qcc
