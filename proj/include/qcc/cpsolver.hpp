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

// Event-based constraint model over optional interval variables, its
// propagator, a full-assignment checker, and a chronological
// branch-and-bound search with warm starts.
//
// Variables per instance:
//   swap replicas   one optional interval per (swap gate, replica)
//   ps tasks        one optional interval per (PS gate, goal index); task n
//                   of every gate is reserved for goal n
//   goals           one mandatory interval per goal index, length in
//                   {tau_blue, tau_red}
//   mix options     one optional interval per (qubit, state), two stages only
//   mixes           one mandatory interval per state, two stages only
//   states          per qubit and event slot, a set of candidate states;
//                   slot 0 is the initial state
//
// Under QCC-X the unary resource of qubit i holds its own tasks plus every
// two-qubit gate touching a neighbor of i.

#ifndef QCC_CPSOLVER_HPP_
#define QCC_CPSOLVER_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcc/bounds.hpp"
#include "qcc/instance.hpp"
#include "qcc/router.hpp"
#include "qcc/schedule.hpp"

namespace qcc {

enum class Presence { kAbsent, kPresent, kUndecided };

struct OptionalIntervalVar {
  Presence presence = Presence::kUndecided;
  int start_min = 0;
  int start_max = 0;
  // Fixed for every kind except goal intervals, whose length ranges over
  // the two PS durations.
  int length_min = 0;
  int length_max = 0;

  bool present() const { return presence == Presence::kPresent; }
  bool absent() const { return presence == Presence::kAbsent; }
  int end_min() const { return start_min + length_min; }
  int end_max() const { return start_max + length_max; }
  int length() const { return length_min; }
};

enum class IntervalRole { kSwap, kPs, kGoal, kMixOption, kMix };

struct IntervalInfo {
  IntervalRole role = IntervalRole::kSwap;
  int edge = -1;     // chip edge index, swap and ps
  QubitId qubit = 0; // mix option
  StateId state = 0; // mix option and mix
  int index = 0;     // replica (swap) or goal index (ps, goal)
};

enum class ConstraintKind {
  kDomain,
  kObjective,
  kInitialStates,
  kAllDifferent,
  kMakespan,
  kNoOverlap,
  kAlternative,
  kSwapExchange,
  kStateKeep,
  kGoalMatch,
  kReplicaOrder,
  kMixAlternative,
  kMixAfterStage1,
  kMixBeforeStage2,
};

std::string_view to_string(ConstraintKind kind);

struct ModelConstraint {
  ConstraintKind kind;
  std::vector<int> scope;  // interval ids, or qubit ids for state constraints
};

struct IntRange {
  int min = 0;
  int max = 0;
};

struct Model {
  Instance instance;
  BoundSet bounds;
  // Set when the bounds cannot hold any schedule.
  bool infeasible = false;

  std::vector<OptionalIntervalVar> intervals;
  std::vector<IntervalInfo> info;
  // Indexed by chip edge; empty for edges without a swap gate.
  std::vector<std::vector<int>> swap_vars;
  // Indexed by chip edge, then goal index.
  std::vector<std::vector<int>> ps_vars;
  std::vector<int> goal_vars;
  // Indexed by state, then qubit (entry 0 unused). Two stages only.
  std::vector<std::vector<int>> mix_options;
  std::vector<int> mix_vars;
  // Own tasks of each qubit (swap, ps and mix options), indexed by qubit.
  std::vector<std::vector<int>> own_tasks;
  // Candidate-state bitsets per qubit and event slot.
  std::vector<std::vector<std::uint64_t>> state_domains;
  IntRange makespan;
  IntRange swap_total;
  std::vector<ModelConstraint> constraints;

  // Installed by warm_start.
  std::optional<Schedule> incumbent;

  int interval_count() const { return static_cast<int>(intervals.size()); }
  int count(ConstraintKind kind) const;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws std::invalid_argument when the chip has more than 64 qubits.
Model build_model(const Instance& instance, const BoundSet& bounds);

// Default bounds widened so that `schedule` fits the replica counts and
// horizon.
BoundSet bounds_covering(const Instance& instance, const Schedule& schedule);

enum class PropagationResult { kFixpoint, kConflict };

PropagationResult propagate(Model& model);

// A complete value for every model variable.
struct Assignment {
  std::vector<bool> present;
  std::vector<int> start;
  std::vector<int> length;
  // Indexed by qubit, then event slot.
  std::vector<std::vector<StateId>> states;
  // Interval ids of each qubit's present own tasks in sequence order.
  std::vector<std::vector<int>> sequences;
  int makespan = 0;
  int swap_total = 0;
};

struct ModelViolation {
  ConstraintKind kind;
  std::string detail;
};

// Maps schedule tasks onto model variables. Throws ModelError when a task
// has no variable to land on (unknown gate, goal index out of range,
// replicas exhausted, duplicate goal or mix).
Assignment map_schedule(const Model& model, const Schedule& schedule);

// Checks every constraint of the model on a full assignment.
std::vector<ModelViolation> check_assignment(const Model& model, const Assignment& assignment);

Schedule decode(const Model& model, const Assignment& assignment);

// Maps the schedule, checks it and installs it as the search incumbent.
// Throws ModelError with the violated constraints on failure.
Assignment warm_start(Model& model, const Schedule& schedule);

enum class SearchStatus { kOptimal, kInfeasible, kTimeout };

std::string_view to_string(SearchStatus status);

struct SearchLimits {
  double time_limit_s = std::numeric_limits<double>::infinity();
  // Negative means unlimited.
  long node_limit = -1;
};

struct SearchResult {
  SearchStatus status = SearchStatus::kTimeout;
  std::vector<Incumbent> incumbents;
  std::optional<Schedule> best;
  long nodes = 0;
  double seconds = 0.0;
};

// Depth-first branch and bound. Emits only strictly improving schedules;
// a warm-start incumbent is the initial bound and is never emitted again.
SearchResult search(const Model& model, const SearchLimits& limits,
                    const IncumbentCallback& on_incumbent = {});

}  // namespace qcc

#endif  // QCC_CPSOLVER_HPP_
