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

// Randomized properties at unit-test sizes. The acceptance binary runs the
// same ideas at full scale.

#include <gtest/gtest.h>

#include <algorithm>
#include <limits>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "qcc/bounds.hpp"
#include "qcc/cpsolver.hpp"
#include "qcc/router.hpp"

namespace qcc {
namespace {

ValidateOptions loose(const Instance& in, const Schedule& s) {
  return {std::max(s.total_span(), horizon_bound(in))};
}

TEST(Property, RouterSchedulesValidate) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Instance in = testing::random_instance(seed, 8);
    const Schedule g = solve_greedy(in, seed);
    const ValidationReport rg = validate(in, g, loose(in, g));
    EXPECT_TRUE(rg.valid) << in.name << " greedy: " << rg.summary();
    AnytimeOptions o;
    o.time_limit_s = 5.0;
    o.max_restarts = 3;
    o.seed = seed;
    const std::vector<Incumbent> trace = solve_anytime(in, o);
    ASSERT_FALSE(trace.empty());
    for (size_t i = 0; i < trace.size(); ++i) {
      const Schedule& s = trace[i].schedule;
      EXPECT_TRUE(validate(in, s, loose(in, s)).valid) << in.name << " incumbent " << i;
      if (i > 0) EXPECT_LT(s.objective(), trace[i - 1].schedule.objective());
    }
  }
}

TEST(Property, CrosstalkNeverViolated) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Instance in = testing::random_instance(seed + 1000, 8);
    in.variant = Variant::kQccX;
    in.initial_mapping = InitialMapping::kIdentity;
    for (const Schedule& s : {solve_greedy(in, seed), solve_sequential_baseline(in)}) {
      const ValidationReport r = validate(in, s, loose(in, s));
      EXPECT_FALSE(r.has("R2")) << in.name << ": " << r.summary();
      EXPECT_TRUE(r.valid) << in.name;
    }
  }
}

TEST(Property, CrosstalkCheckCatchesNeighborOverlap) {
  // Two blue PS gates on opposite sides of a 2x2 grid: fine without
  // crosstalk, rejected with it.
  Instance in = testing::single_goal(build_grid_chip(2, GridColoring::kAllBlue), 1, 2);
  in.goals.push_back({3, 4});
  Schedule s;
  s.tasks = {make_ps(in.chip, 1, 2, 0, 0), make_ps(in.chip, 3, 4, 0, 1)};
  s.refresh_summary();
  EXPECT_TRUE(validate(in, s).valid);
  in.variant = Variant::kQccX;
  EXPECT_TRUE(validate(in, s).has("R2"));
}

TEST(Property, MixSeparatesStages) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Instance in = testing::random_instance(seed + 2000, 6);
    in.stages = 2;
    const Schedule s = solve_greedy(in, seed);
    const ValidationReport r = validate(in, s, loose(in, s));
    ASSERT_TRUE(r.valid) << in.name << ": " << r.summary();
    for (const GateTask& m : s.tasks) {
      if (m.kind != TaskKind::kMix) continue;
      for (const GateTask& p : s.tasks) {
        if (p.kind != TaskKind::kPs || p.goal_index < 0 || !in.goal_at(p.goal_index).involves(m.state)) {
          continue;
        }
        if (in.stage_of(p.goal_index) == 1) {
          EXPECT_LE(p.end(), m.start) << in.name;
        } else {
          EXPECT_GE(p.start, m.end()) << in.name;
        }
      }
    }
  }
}

TEST(Property, ModelAgreesWithValidator) {
  int mutants_rejected = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Instance in = testing::random_instance(seed + 3000, 4);
    const Schedule good = testing::random_valid_schedule(in, seed);
    std::string what;
    const Schedule bad = testing::mutate(in, good, seed, &what);
    for (const Schedule* s : {&good, &bad}) {
      BoundSet b = bounds_covering(in, *s);
      b.horizon = compute_bounds(in).horizon;
      const Model m = build_model(in, b);
      const bool validator = validate(in, *s, {b.horizon}).valid;
      bool model = false;
      try {
        model = check_assignment(m, map_schedule(m, *s)).empty();
      } catch (const ModelError&) {
      }
      EXPECT_EQ(model, validator) << in.name << (s == &bad ? " mutant " + what : " original");
    }
    mutants_rejected += !validate(in, bad, {compute_bounds(in).horizon}).valid;
  }
  // Most mutations break something.
  EXPECT_GT(mutants_rejected, 300);
}

TEST(Property, RouterFindsOracleOptimumOnTwoByTwo) {
  int hits = 0;
  int total = 0;
  for (GridColoring coloring : {GridColoring::kAllBlue, GridColoring::kAlternating}) {
    const Chip chip = build_grid_chip(2, coloring);
    std::vector<Goal> pairs;
    for (int a = 1; a <= 4; ++a) {
      for (int b = a + 1; b <= 4; ++b) pairs.push_back({a, b});
    }
    // Every goal set of size 1 to 3.
    std::vector<std::vector<Goal>> sets;
    for (size_t i = 0; i < pairs.size(); ++i) {
      sets.push_back({pairs[i]});
      for (size_t j = i + 1; j < pairs.size(); ++j) {
        sets.push_back({pairs[i], pairs[j]});
        for (size_t k = j + 1; k < pairs.size(); ++k) sets.push_back({pairs[i], pairs[j], pairs[k]});
      }
    }
    for (const std::vector<Goal>& goals : sets) {
      for (Variant v : {Variant::kQcc, Variant::kQccI, Variant::kQccX}) {
        for (int stages : {1, 2}) {
          Instance in = testing::single_goal(chip, goals[0].a, goals[0].b, v, stages);
          in.goals = goals;
          const testing::OracleResult o = testing::brute_force_optimum(in, horizon_bound(in));
          ASSERT_TRUE(o.makespan);
          AnytimeOptions opt;
          opt.time_limit_s = 1.0;
          opt.max_restarts = 300;
          opt.seed = static_cast<std::uint64_t>(total);
          const std::vector<Incumbent> trace = solve_anytime(in, opt);
          ++total;
          hits += trace.back().schedule.makespan == *o.makespan;
        }
      }
    }
  }
  const double rate = static_cast<double>(hits) / total;
  RecordProperty("router_hit_rate", std::to_string(rate));
  EXPECT_GE(rate, 0.9) << hits << "/" << total;
}

}  // namespace
}  // namespace qcc
