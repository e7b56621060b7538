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

#include "fixtures.hpp"

#include <algorithm>

#include "qcc/rng.hpp"
#include "qcc/router.hpp"

namespace qcc::testing {

std::filesystem::path data_dir() { return QCC_TEST_DATA_DIR; }

Instance example_instance() {
  return read_instance(data_dir() / "examples" / "rigetti8_example.instance.json");
}

Schedule example_schedule() {
  return read_schedule(data_dir() / "examples" / "rigetti8_example.schedule.json");
}

Instance single_goal(const Chip& chip, StateId a, StateId b, Variant variant, int stages) {
  Instance in;
  in.name = "single";
  in.chip = chip;
  in.goals = {{a, b}};
  in.stages = stages;
  in.variant = variant;
  in.initial_mapping = variant == Variant::kQccI ? InitialMapping::kFree : InitialMapping::kIdentity;
  in.validate();
  return in;
}

Instance random_instance(std::uint64_t seed, int max_goals, bool presets) {
  Rng rng(seed);
  Chip chip;
  const int pick = static_cast<int>(rng.below(presets ? 5 : 3));
  switch (pick) {
    case 0:
      chip = build_grid_chip(2, rng.below(2) ? GridColoring::kAllBlue : GridColoring::kAlternating);
      break;
    case 1:
      chip = build_grid_chip(3, rng.below(2) ? GridColoring::kAllBlue : GridColoring::kAlternating);
      break;
    case 2:
      chip = build_grid_chip(4, GridColoring::kAlternating);
      break;
    case 3:
      chip = build_preset_chip("rigetti-8");
      break;
    default:
      chip = build_preset_chip("rigetti-21");
      break;
  }
  const int pairs = chip.qubit_count * (chip.qubit_count - 1) / 2;
  const int goals = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(max_goals, pairs))));
  const Variant variant = static_cast<Variant>(rng.below(3));
  const int stages = 1 + static_cast<int>(rng.below(2));
  return generate_instance(chip, goals, stages, variant, rng.next());
}

Schedule random_valid_schedule(const Instance& in, std::uint64_t seed) {
  Rng rng(seed);
  Schedule s = rng.below(4) == 0 ? solve_sequential_baseline(in) : solve_greedy(in, rng.next());
  if (s.tasks.empty()) return s;
  const int pushes = static_cast<int>(rng.below(6));
  for (int k = 0; k < pushes; ++k) {
    Schedule t = s;
    GateTask& task = t.tasks[rng.below(t.tasks.size())];
    if (task.kind == TaskKind::kInit) continue;
    task.start += 1 + static_cast<int>(rng.below(3));
    t.refresh_summary();
    if (validate(in, t).valid) s = std::move(t);
  }
  s.sort_tasks();
  return s;
}

Schedule mutate(const Instance& in, const Schedule& base, std::uint64_t seed, std::string* what) {
  Rng rng(seed);
  Schedule s = base;
  auto name = [&](const char* n) {
    if (what) *what = n;
  };
  const auto& edges = in.chip.edges;
  auto random_task = [&]() -> GateTask& { return s.tasks[rng.below(s.tasks.size())]; };
  const int kinds = 14;
  for (int attempt = 0; attempt < 32; ++attempt) {
    const int kind = static_cast<int>(rng.below(kinds));
    if (s.tasks.empty() && kind < 12) continue;
    switch (kind) {
      case 0: {
        GateTask& t = random_task();
        if (t.kind == TaskKind::kInit || t.start == 0) continue;
        t.start -= 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(t.start, 2))));
        name("start earlier");
        return s;
      }
      case 1:
        random_task().start += 1 + static_cast<int>(rng.below(2));
        name("start later");
        return s;
      case 2:
        s.tasks.erase(s.tasks.begin() + static_cast<long>(rng.below(s.tasks.size())));
        name("drop task");
        return s;
      case 3:
        s.tasks.push_back(random_task());
        name("duplicate task");
        return s;
      case 4: {
        GateTask& t = random_task();
        if (t.kind != TaskKind::kPs) continue;
        t.goal_index = static_cast<int>(rng.below(static_cast<std::uint64_t>(in.total_goal_count())));
        name("change goal index");
        return s;
      }
      case 5: {
        GateTask& t = random_task();
        if (!t.two_qubit()) continue;
        const ChipEdge& e = edges[rng.below(edges.size())];
        t.u = e.u;
        t.v = e.v;
        if (t.kind == TaskKind::kPs) t.duration = e.ps_duration;
        name("move gate");
        return s;
      }
      case 6:
        random_task().duration += rng.below(2) ? 1 : -1;
        name("change duration");
        return s;
      case 7:
        s.makespan += rng.below(2) ? 1 : -1;
        name("makespan field");
        return s;
      case 8:
        s.swap_count += rng.below(2) ? 1 : -1;
        name("swap count field");
        return s;
      case 9: {
        const ChipEdge& e = edges[rng.below(edges.size())];
        s.tasks.push_back(make_swap(in.chip, e.u, e.v, static_cast<int>(rng.below(
                                                           static_cast<std::uint64_t>(s.makespan + 3)))));
        s.refresh_summary();
        name("stray swap");
        return s;
      }
      case 10: {
        GateTask& t = random_task();
        if (t.kind != TaskKind::kMix && t.kind != TaskKind::kInit) continue;
        t.state = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(in.state_count())));
        name("change state");
        return s;
      }
      case 11: {
        GateTask& t = random_task();
        if (t.kind == TaskKind::kMix || t.kind == TaskKind::kInit) {
          t.u = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(in.chip.qubit_count)));
          name("move one-qubit task");
        } else {
          std::swap(t.u, t.v);
          name("flip orientation");
        }
        return s;
      }
      case 12: {
        if (s.tasks.empty()) continue;
        GateTask& t = random_task();
        if (t.kind == TaskKind::kSwap) {
          const ChipEdge& e = edges[static_cast<size_t>(ChipGraph(in.chip).edge_index(t.u, t.v))];
          t.kind = TaskKind::kPs;
          t.duration = e.ps_duration;
          t.goal_index = static_cast<int>(rng.below(static_cast<std::uint64_t>(in.total_goal_count())));
        } else if (t.kind == TaskKind::kPs) {
          t.kind = TaskKind::kSwap;
          t.duration = in.chip.swap_duration;
          t.goal_index = -1;
        } else {
          continue;
        }
        name("change kind");
        return s;
      }
      default: {
        const QubitId q = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(in.chip.qubit_count)));
        const StateId st = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(in.state_count())));
        s.tasks.push_back(rng.below(2) ? make_mix(in.chip, q, st, static_cast<int>(rng.below(8)))
                                       : make_init(q, st));
        name("extra one-qubit task");
        return s;
      }
    }
  }
  s.makespan += 1;
  name("makespan field");
  return s;
}

}  // namespace qcc::testing
