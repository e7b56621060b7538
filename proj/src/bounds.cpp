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

#include "qcc/bounds.hpp"

#include <stdexcept>

namespace qcc {

int max_swap_distance(const Chip& chip) {
  if (chip.side_length < 2) {
    throw std::invalid_argument("side_length must be at least 2 to bound swap distance");
  }
  return 2 * chip.side_length - 3;
}

int horizon_bound(const Instance& instance) {
  const Chip& chip = instance.chip;
  const int per_goal = max_swap_distance(chip) * chip.swap_duration + chip.max_ps_duration();
  const int one_stage = instance.goal_count() * per_goal;
  if (instance.stages == 1) return one_stage;
  return 2 * one_stage + chip.mix_duration;
}

int swap_task_bound(const Instance& instance) {
  return instance.goal_count() * instance.stages;
}

int ps_task_bound(const Instance& instance) { return instance.goal_count() * instance.stages; }

BoundSet compute_bounds(const Instance& instance, int swap_multiplier) {
  if (swap_multiplier < 1) throw std::invalid_argument("swap multiplier must be >= 1");
  BoundSet b;
  b.horizon = horizon_bound(instance);
  b.swaps_per_gate = swap_task_bound(instance) * swap_multiplier;
  b.ps_tasks_per_gate = ps_task_bound(instance);
  b.max_swap_distance = max_swap_distance(instance.chip);
  b.max_ps_duration = instance.chip.max_ps_duration();
  return b;
}

}  // namespace qcc
