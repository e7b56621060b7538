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

// Horizon and per-gate task counts that size the constraint model.

#ifndef QCC_BOUNDS_HPP_
#define QCC_BOUNDS_HPP_

#include "qcc/instance.hpp"

namespace qcc {

struct BoundSet {
  int horizon = 0;
  int swaps_per_gate = 0;
  int ps_tasks_per_gate = 0;
  int max_swap_distance = 0;
  int max_ps_duration = 0;

  friend bool operator==(const BoundSet&, const BoundSet&) = default;
};

// Swaps needed, in the worst case, to make two states on a side-psi chip
// adjacent: 2 psi - 3.
int max_swap_distance(const Chip& chip);

// |G| (phi tau_swap + tau_ps_max) for one stage. Two stages run two such
// blocks with one parallel mixing window between them.
int horizon_bound(const Instance& instance);

// |G| replicas per swap gate and stage.
int swap_task_bound(const Instance& instance);

// One PS task per gate and goal; task n of every gate belongs to goal n.
int ps_task_bound(const Instance& instance);

// swap_multiplier scales the swap replica count; 1 keeps the default.
BoundSet compute_bounds(const Instance& instance, int swap_multiplier = 1);

}  // namespace qcc

#endif  // QCC_BOUNDS_HPP_
