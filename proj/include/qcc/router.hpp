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

// Satisficing schedule construction: the certified sequential baseline, a
// seeded greedy router and an anytime restart loop around both.

#ifndef QCC_ROUTER_HPP_
#define QCC_ROUTER_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qcc/instance.hpp"
#include "qcc/schedule.hpp"

namespace qcc {

// A schedule stamped with the wall-clock second it was found.
struct Incumbent {
  double seconds = 0.0;
  Schedule schedule;
};

using IncumbentCallback = std::function<void(const Incumbent&)>;

class UnreachableGoal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Goals one after another: both states walk toward the middle edge of a
// shortest swap path, then a PS gate fires. Two stages mix every state in
// one parallel window between the blocks. Never exceeds horizon_bound().
Schedule solve_sequential_baseline(const Instance& instance);

// Event-driven greedy that interleaves goals as-early-as-possible. Seeds
// only break ties.
Schedule solve_greedy(const Instance& instance, std::uint64_t seed);

struct AnytimeOptions {
  double time_limit_s = 1.0;
  // Restart cap for reproducible runs; unset means wall clock only.
  std::optional<long> max_restarts;
  std::uint64_t seed = 0;
};

// Baseline first, then greedy restarts with derived seeds. Returns every
// strictly improving incumbent in discovery order; the last is the best.
std::vector<Incumbent> solve_anytime(const Instance& instance, const AnytimeOptions& options,
                                     const IncumbentCallback& on_incumbent = {});

}  // namespace qcc

#endif  // QCC_ROUTER_HPP_
