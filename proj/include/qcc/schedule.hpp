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

// Timed gate schedules, the qubit-state simulator and the validator.
//
// The validator is the reference oracle for every solver in the project and
// deliberately shares no code with the constraint model. A task occupies the
// closed-open interval [start, start + duration).

#ifndef QCC_SCHEDULE_HPP_
#define QCC_SCHEDULE_HPP_

#include <compare>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcc/instance.hpp"

namespace qcc {

enum class TaskKind { kSwap, kPs, kMix, kInit };

std::string_view to_string(TaskKind kind);

struct GateTask {
  TaskKind kind = TaskKind::kSwap;
  // Edge endpoints for swap/ps; u alone is the qubit for mix/init.
  QubitId u = 0;
  QubitId v = 0;
  int start = 0;
  int duration = 0;
  int goal_index = -1;  // ps only
  StateId state = 0;    // mix/init only

  int end() const { return start + duration; }
  bool two_qubit() const { return kind == TaskKind::kSwap || kind == TaskKind::kPs; }
  bool touches(QubitId q) const { return u == q || (two_qubit() && v == q); }

  friend bool operator==(const GateTask&, const GateTask&) = default;
};

// Task constructors that take durations from the chip.
GateTask make_swap(const Chip& chip, QubitId u, QubitId v, int start);
GateTask make_ps(const Chip& chip, QubitId u, QubitId v, int start, int goal_index);
GateTask make_mix(const Chip& chip, QubitId q, StateId state, int start);
GateTask make_init(QubitId q, StateId state);

// Lexicographic (makespan, swap count) objective.
struct Objective {
  int makespan = 0;
  int swaps = 0;
  friend auto operator<=>(const Objective&, const Objective&) = default;
};

struct Schedule {
  std::string instance_ref;
  std::vector<GateTask> tasks;
  int makespan = 0;
  int swap_count = 0;

  Objective objective() const { return {makespan, swap_count}; }
  // Recomputes makespan (latest goal-ps completion) and swap_count.
  void refresh_summary();
  // Orders tasks by (start, kind, location) for stable output.
  void sort_tasks();
  int total_span() const;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

std::string schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(std::string_view text);
Schedule read_schedule(const std::filesystem::path& path);
void write_schedule(const Schedule& schedule, const std::filesystem::path& path);

// One replayed event on a qubit: the state it holds after `task` completes
// at `time`. task == -1 is the initial (dummy) event at time 0.
struct StateEvent {
  int time = 0;
  int task = -1;
  StateId state = 0;
  friend bool operator==(const StateEvent&, const StateEvent&) = default;
};

// Indexed by qubit id; entry 0 is unused.
using StateTrace = std::vector<std::vector<StateEvent>>;

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Replays swaps per qubit in chronological order. Throws SimulationError on
// overlapping tasks on a qubit or, for QCC-I, missing or conflicting init
// tasks.
StateTrace simulate_states(const Instance& instance, const Schedule& schedule);

// State held by qubit q at time t (after all events completing at or
// before t).
StateId state_at(const StateTrace& trace, QubitId q, int time);

struct Violation {
  std::string rule;
  std::string detail;
  std::vector<int> tasks;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
  StateTrace state_trace;
  int total_span = 0;

  bool has(std::string_view rule) const;
  std::string summary() const;
};

struct ValidateOptions {
  // Tasks must end within this horizon; defaults to horizon_bound().
  std::optional<int> horizon;
};

// Rules: R1 per-qubit no-overlap, R2 crosstalk exclusion (QCC-X), R3 one PS
// task per goal, R4 goal matching, R5 durations and locations, R6 mixing
// between stages, R7 init placement (QCC-I), R8 makespan and swap count
// bookkeeping, R9 horizon.
ValidationReport validate(const Instance& instance, const Schedule& schedule,
                          const ValidateOptions& options = {});

// IPC plan score best / makespan.
double score(int best_makespan, int schedule_makespan);

// Percentage improvement 100 (before - after) / before.
double improvement_delta(int before, int after);

}  // namespace qcc

#endif  // QCC_SCHEDULE_HPP_
