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

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <tuple>

#include "qcc/cpsolver.hpp"

namespace qcc {

std::string_view to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kDomain:
      return "domain";
    case ConstraintKind::kObjective:
      return "objective";
    case ConstraintKind::kInitialStates:
      return "initial-states";
    case ConstraintKind::kAllDifferent:
      return "all-different";
    case ConstraintKind::kMakespan:
      return "makespan";
    case ConstraintKind::kNoOverlap:
      return "no-overlap";
    case ConstraintKind::kAlternative:
      return "alternative";
    case ConstraintKind::kSwapExchange:
      return "swap-exchange";
    case ConstraintKind::kStateKeep:
      return "state-keep";
    case ConstraintKind::kGoalMatch:
      return "goal-match";
    case ConstraintKind::kReplicaOrder:
      return "replica-order";
    case ConstraintKind::kMixAlternative:
      return "mix-alternative";
    case ConstraintKind::kMixAfterStage1:
      return "mix-after-stage-1";
    case ConstraintKind::kMixBeforeStage2:
      return "mix-before-stage-2";
  }
  return "?";
}

int Model::count(ConstraintKind kind) const {
  return static_cast<int>(std::count_if(constraints.begin(), constraints.end(),
                                        [kind](const ModelConstraint& c) { return c.kind == kind; }));
}

namespace {

std::uint64_t all_states(int n) { return n == 64 ? ~0ULL : (1ULL << n) - 1; }
std::uint64_t state_bit(StateId s) { return 1ULL << (s - 1); }

// Two-qubit interval vars on edges touching a neighbor of q but not q.
std::vector<int> neighbor_gates(const Model& m, const ChipGraph& g, QubitId q) {
  std::vector<int> out;
  const auto& edges = m.instance.chip.edges;
  for (size_t k = 0; k < edges.size(); ++k) {
    const ChipEdge& e = edges[k];
    if (e.touches(q)) continue;
    if (!g.adjacent(q, e.u) && !g.adjacent(q, e.v)) continue;
    for (int id : m.swap_vars[k]) out.push_back(id);
    for (int id : m.ps_vars[k]) out.push_back(id);
  }
  return out;
}

}  // namespace

Model build_model(const Instance& in, const BoundSet& bounds) {
  const Chip& chip = in.chip;
  const int n = chip.qubit_count;
  if (n > 64) throw std::invalid_argument("the model supports at most 64 qubits");
  Model m;
  m.instance = in;
  m.bounds = bounds;
  const int horizon = bounds.horizon;
  const int goals = in.total_goal_count();
  const int eps = in.goal_count();
  const ChipGraph graph(chip);

  auto add = [&m, horizon](IntervalInfo info, int len_min, int len_max, Presence presence) {
    OptionalIntervalVar v;
    v.presence = presence;
    v.length_min = len_min;
    v.length_max = len_max;
    v.start_min = 0;
    v.start_max = horizon - len_min;
    if (v.start_max < 0) {
      if (presence == Presence::kPresent) {
        m.infeasible = true;
      } else {
        v.presence = Presence::kAbsent;
      }
      v.start_max = 0;
    }
    m.intervals.push_back(v);
    m.info.push_back(info);
    return m.interval_count() - 1;
  };

  m.swap_vars.assign(chip.edges.size(), {});
  m.ps_vars.assign(chip.edges.size(), {});
  m.own_tasks.assign(static_cast<size_t>(n) + 1, {});
  for (size_t k = 0; k < chip.edges.size(); ++k) {
    const ChipEdge& e = chip.edges[k];
    if (e.swap_enabled) {
      for (int r = 0; r < bounds.swaps_per_gate; ++r) {
        const int id = add({IntervalRole::kSwap, static_cast<int>(k), 0, 0, r}, chip.swap_duration,
                           chip.swap_duration, Presence::kUndecided);
        m.swap_vars[k].push_back(id);
      }
    }
    for (int o = 0; o < goals; ++o) {
      const int id = add({IntervalRole::kPs, static_cast<int>(k), 0, 0, o}, e.ps_duration,
                         e.ps_duration, Presence::kUndecided);
      m.ps_vars[k].push_back(id);
    }
    for (int id : m.swap_vars[k]) {
      m.own_tasks[e.u].push_back(id);
      m.own_tasks[e.v].push_back(id);
    }
    for (int id : m.ps_vars[k]) {
      m.own_tasks[e.u].push_back(id);
      m.own_tasks[e.v].push_back(id);
    }
  }
  const int tau_min = chip.edges.empty() ? 0 : chip.min_ps_duration();
  const int tau_max = chip.edges.empty() ? 0 : chip.max_ps_duration();
  for (int o = 0; o < goals; ++o) {
    m.goal_vars.push_back(
        add({IntervalRole::kGoal, -1, 0, 0, o}, tau_min, tau_max, Presence::kPresent));
  }
  if (in.stages == 2) {
    m.mix_options.assign(static_cast<size_t>(n) + 1, {});
    m.mix_vars.assign(static_cast<size_t>(n) + 1, -1);
    for (StateId j = 1; j <= n; ++j) {
      m.mix_options[j].assign(static_cast<size_t>(n) + 1, -1);
      for (QubitId q = 1; q <= n; ++q) {
        const int id = add({IntervalRole::kMixOption, -1, q, j, 0}, chip.mix_duration,
                           chip.mix_duration, Presence::kUndecided);
        m.mix_options[j][q] = id;
        m.own_tasks[q].push_back(id);
      }
      m.mix_vars[j] = add({IntervalRole::kMix, -1, 0, j, 0}, chip.mix_duration,
                          chip.mix_duration, Presence::kPresent);
    }
  }

  m.state_domains.assign(static_cast<size_t>(n) + 1, {});
  for (QubitId q = 1; q <= n; ++q) {
    m.state_domains[q].assign(m.own_tasks[q].size() + 1, all_states(n));
    if (in.variant != Variant::kQccI) m.state_domains[q][0] = state_bit(q);
  }
  m.makespan = {0, std::max(horizon, 0)};
  int swap_gates = 0;
  for (const auto& reps : m.swap_vars) swap_gates += reps.empty() ? 0 : 1;
  m.swap_total = {0, swap_gates * bounds.swaps_per_gate};

  auto constrain = [&m](ConstraintKind kind, std::vector<int> scope) {
    m.constraints.push_back({kind, std::move(scope)});
  };
  constrain(ConstraintKind::kObjective, {});
  if (in.variant == Variant::kQccI) {
    std::vector<int> qubits(static_cast<size_t>(n));
    std::iota(qubits.begin(), qubits.end(), 1);
    constrain(ConstraintKind::kAllDifferent, qubits);
  } else {
    for (QubitId q = 1; q <= n; ++q) constrain(ConstraintKind::kInitialStates, {q});
  }
  constrain(ConstraintKind::kMakespan, m.goal_vars);
  for (QubitId q = 1; q <= n; ++q) {
    std::vector<int> scope = m.own_tasks[q];
    if (in.crosstalk()) {
      const std::vector<int> extra = neighbor_gates(m, graph, q);
      scope.insert(scope.end(), extra.begin(), extra.end());
    }
    constrain(ConstraintKind::kNoOverlap, scope);
  }
  for (int o = 0; o < goals; ++o) {
    std::vector<int> scope{m.goal_vars[static_cast<size_t>(o)]};
    for (const auto& per_goal : m.ps_vars) scope.push_back(per_goal[static_cast<size_t>(o)]);
    constrain(ConstraintKind::kAlternative, scope);
  }
  for (size_t k = 0; k < chip.edges.size(); ++k) {
    for (int id : m.swap_vars[k]) constrain(ConstraintKind::kSwapExchange, {id});
    for (int id : m.ps_vars[k]) {
      constrain(ConstraintKind::kStateKeep, {id});
      constrain(ConstraintKind::kGoalMatch, {id});
    }
    if (m.swap_vars[k].size() > 1) constrain(ConstraintKind::kReplicaOrder, m.swap_vars[k]);
  }
  if (in.stages == 2) {
    for (StateId j = 1; j <= n; ++j) {
      std::vector<int> scope{m.mix_vars[j]};
      for (QubitId q = 1; q <= n; ++q) {
        scope.push_back(m.mix_options[j][q]);
        constrain(ConstraintKind::kStateKeep, {m.mix_options[j][q]});
      }
      constrain(ConstraintKind::kMixAlternative, scope);
      for (int o = 0; o < eps; ++o) {
        if (!in.goals[static_cast<size_t>(o)].involves(j)) continue;
        constrain(ConstraintKind::kMixAfterStage1,
                  {m.mix_vars[j], m.goal_vars[static_cast<size_t>(o)]});
        constrain(ConstraintKind::kMixBeforeStage2,
                  {m.mix_vars[j], m.goal_vars[static_cast<size_t>(o + eps)]});
      }
    }
  }
  if (goals > 0 && horizon < tau_min) m.infeasible = true;
  return m;
}

BoundSet bounds_covering(const Instance& in, const Schedule& s) {
  BoundSet b = compute_bounds(in);
  const ChipGraph graph(in.chip);
  std::vector<int> used(in.chip.edges.size(), 0);
  for (const GateTask& t : s.tasks) {
    if (t.kind != TaskKind::kSwap) continue;
    const int k = graph.edge_index(t.u, t.v);
    if (k >= 0) b.swaps_per_gate = std::max(b.swaps_per_gate, ++used[static_cast<size_t>(k)]);
  }
  b.horizon = std::max(b.horizon, s.total_span());
  return b;
}

// ---------------------------------------------------------------------------
// Propagation.

namespace {

class Propagator {
 public:
  explicit Propagator(Model& m) : m_(m) {}

  PropagationResult run() {
    if (m_.infeasible) return PropagationResult::kConflict;
    for (int round = 0; round < 10000; ++round) {
      changed_ = false;
      if (!windows() || !alternatives() || !makespan() || !replicas() || !mixing() ||
          !resources() || !states()) {
        return PropagationResult::kConflict;
      }
      if (!changed_) return PropagationResult::kFixpoint;
    }
    return PropagationResult::kFixpoint;
  }

 private:
  OptionalIntervalVar& var(int id) { return m_.intervals[static_cast<size_t>(id)]; }

  bool make_absent(int id) {
    OptionalIntervalVar& v = var(id);
    if (v.absent()) return true;
    if (v.present()) return false;
    v.presence = Presence::kAbsent;
    changed_ = true;
    return true;
  }

  bool make_present(int id) {
    OptionalIntervalVar& v = var(id);
    if (v.present()) return true;
    if (v.absent()) return false;
    v.presence = Presence::kPresent;
    changed_ = true;
    return true;
  }

  // An optional var whose window empties becomes absent.
  bool emptied(int id) {
    OptionalIntervalVar& v = var(id);
    if (v.start_min <= v.start_max && v.length_min <= v.length_max) return true;
    if (v.present()) return false;
    v.start_min = v.start_max = 0;
    return make_absent(id);
  }

  bool raise_start(int id, int value) {
    OptionalIntervalVar& v = var(id);
    if (v.absent() || value <= v.start_min) return true;
    v.start_min = value;
    changed_ = true;
    return emptied(id);
  }

  bool lower_start(int id, int value) {
    OptionalIntervalVar& v = var(id);
    if (v.absent() || value >= v.start_max) return true;
    v.start_max = value;
    changed_ = true;
    return emptied(id);
  }

  bool windows() {
    const int horizon = m_.bounds.horizon;
    for (int id = 0; id < m_.interval_count(); ++id) {
      if (var(id).absent()) continue;
      if (!raise_start(id, 0) || !lower_start(id, horizon - var(id).length_min)) return false;
    }
    return true;
  }

  // Exactly one candidate present, synchronized with the master interval.
  bool alternative(int master, const std::vector<int>& options) {
    std::vector<int> live;
    int chosen = -1;
    for (int id : options) {
      if (var(id).absent()) continue;
      live.push_back(id);
      if (var(id).present()) {
        if (chosen >= 0) return false;
        chosen = id;
      }
    }
    if (live.empty()) return false;
    if (chosen >= 0) {
      for (int id : live) {
        if (id != chosen && !make_absent(id)) return false;
      }
      live = {chosen};
    } else if (live.size() == 1) {
      if (!make_present(live.front())) return false;
    }
    OptionalIntervalVar& mv = var(master);
    for (int id : live) {
      OptionalIntervalVar& v = var(id);
      if (v.length_min > mv.length_max || v.length_max < mv.length_min) {
        if (!make_absent(id)) return false;
        continue;
      }
      if (!raise_start(id, mv.start_min) || !lower_start(id, mv.start_max)) return false;
    }
    int lo = INT32_MAX;
    int hi = INT32_MIN;
    int len_lo = INT32_MAX;
    int len_hi = INT32_MIN;
    bool any = false;
    for (int id : live) {
      const OptionalIntervalVar& v = var(id);
      if (v.absent()) continue;
      any = true;
      lo = std::min(lo, v.start_min);
      hi = std::max(hi, v.start_max);
      len_lo = std::min(len_lo, v.length_min);
      len_hi = std::max(len_hi, v.length_max);
    }
    if (!any) return false;
    if (!raise_start(master, lo) || !lower_start(master, hi)) return false;
    if (len_lo > mv.length_min) {
      mv.length_min = len_lo;
      changed_ = true;
    }
    if (len_hi < mv.length_max) {
      mv.length_max = len_hi;
      changed_ = true;
    }
    return mv.length_min <= mv.length_max && mv.start_min <= mv.start_max;
  }

  bool alternatives() {
    for (size_t o = 0; o < m_.goal_vars.size(); ++o) {
      std::vector<int> options;
      for (const auto& per_goal : m_.ps_vars) options.push_back(per_goal[o]);
      if (!alternative(m_.goal_vars[o], options)) return false;
    }
    for (size_t j = 1; j < m_.mix_vars.size(); ++j) {
      std::vector<int> options(m_.mix_options[j].begin() + 1, m_.mix_options[j].end());
      if (!alternative(m_.mix_vars[j], options)) return false;
    }
    return true;
  }

  bool makespan() {
    for (int id : m_.goal_vars) {
      const OptionalIntervalVar& v = var(id);
      if (v.end_min() > m_.makespan.min) {
        m_.makespan.min = v.end_min();
        changed_ = true;
      }
      if (!lower_start(id, m_.makespan.max - v.length_min)) return false;
    }
    return m_.makespan.min <= m_.makespan.max;
  }

  bool replicas() {
    for (const auto& reps : m_.swap_vars) {
      for (size_t r = 0; r + 1 < reps.size(); ++r) {
        if (var(reps[r + 1]).present() && !make_present(reps[r])) return false;
        if (var(reps[r]).absent() && !make_absent(reps[r + 1])) return false;
      }
    }
    return true;
  }

  bool mixing() {
    if (m_.instance.stages != 2) return true;
    const int eps = m_.instance.goal_count();
    for (int o = 0; o < eps; ++o) {
      const Goal& g = m_.instance.goals[static_cast<size_t>(o)];
      const int first = m_.goal_vars[static_cast<size_t>(o)];
      const int second = m_.goal_vars[static_cast<size_t>(o + eps)];
      for (StateId j : {g.a, g.b}) {
        const int mix = m_.mix_vars[j];
        if (!raise_start(mix, var(first).end_min())) return false;
        if (!lower_start(first, var(mix).start_max - var(first).length_min)) return false;
        if (!raise_start(second, var(mix).end_min())) return false;
        if (!lower_start(mix, var(second).start_max - var(mix).length_min)) return false;
      }
    }
    return true;
  }

  // Pairwise precedence detection and overload checking over present tasks.
  // Neighbor gates only ever clash with the qubit's own tasks.
  bool resources() {
    QubitId q = 0;
    for (const ModelConstraint& c : m_.constraints) {
      if (c.kind != ConstraintKind::kNoOverlap) continue;
      const std::vector<int>& own = m_.own_tasks[static_cast<size_t>(++q)];
      auto is_own = [&own](int id) { return std::find(own.begin(), own.end(), id) != own.end(); };
      std::vector<int> tasks;
      std::vector<int> own_present;
      for (int id : c.scope) {
        if (!var(id).present()) continue;
        tasks.push_back(id);
        if (is_own(id)) own_present.push_back(id);
      }
      for (size_t i = 0; i < tasks.size(); ++i) {
        for (size_t j = i + 1; j < tasks.size(); ++j) {
          if (!is_own(tasks[i]) && !is_own(tasks[j])) continue;
          if (!order_pair(tasks[i], tasks[j])) return false;
        }
      }
      if (!overload(own_present)) return false;
    }
    return true;
  }

  bool order_pair(int a, int b) {
    OptionalIntervalVar& x = var(a);
    OptionalIntervalVar& y = var(b);
    const bool x_first = x.start_min + x.length_min <= y.start_max;
    const bool y_first = y.start_min + y.length_min <= x.start_max;
    if (!x_first && !y_first) return false;
    if (!x_first) {
      if (!raise_start(a, y.start_min + y.length_min)) return false;
      if (!lower_start(b, x.start_max - y.length_min)) return false;
    } else if (!y_first) {
      if (!raise_start(b, x.start_min + x.length_min)) return false;
      if (!lower_start(a, y.start_max - x.length_min)) return false;
    }
    return true;
  }

  bool overload(const std::vector<int>& tasks) {
    for (int lo_id : tasks) {
      const int est = var(lo_id).start_min;
      for (int hi_id : tasks) {
        const int lct = var(hi_id).end_max();
        if (lct <= est) continue;
        int load = 0;
        for (int id : tasks) {
          const OptionalIntervalVar& v = var(id);
          if (v.start_min >= est && v.end_max() <= lct) load += v.length_min;
        }
        if (load > lct - est) return false;
      }
    }
    return true;
  }

  // Initial-slot all-different: singleton elimination.
  bool states() {
    const int n = m_.instance.chip.qubit_count;
    for (QubitId q = 1; q <= n; ++q) {
      for (std::uint64_t d : m_.state_domains[q]) {
        if (d == 0) return false;
      }
    }
    if (m_.instance.variant != Variant::kQccI) return true;
    bool again = true;
    while (again) {
      again = false;
      for (QubitId q = 1; q <= n; ++q) {
        const std::uint64_t d = m_.state_domains[q][0];
        if (std::popcount(d) != 1) continue;
        for (QubitId r = 1; r <= n; ++r) {
          if (r == q || !(m_.state_domains[r][0] & d)) continue;
          m_.state_domains[r][0] &= ~d;
          if (m_.state_domains[r][0] == 0) return false;
          again = changed_ = true;
        }
      }
    }
    return true;
  }

  Model& m_;
  bool changed_ = false;
};

}  // namespace

PropagationResult propagate(Model& model) { return Propagator(model).run(); }

// ---------------------------------------------------------------------------
// Schedule mapping and full-assignment checking.

Assignment map_schedule(const Model& m, const Schedule& s) {
  const Instance& in = m.instance;
  const int n = in.chip.qubit_count;
  const ChipGraph graph(in.chip);
  const int goals = in.total_goal_count();
  Assignment a;
  a.present.assign(m.intervals.size(), false);
  a.start.assign(m.intervals.size(), 0);
  a.length.resize(m.intervals.size());
  for (size_t id = 0; id < m.intervals.size(); ++id) a.length[id] = m.intervals[id].length_min;
  std::vector<StateId> initial(static_cast<size_t>(n) + 1, 0);
  if (in.variant != Variant::kQccI) std::iota(initial.begin(), initial.end(), 0);

  auto qubit_ok = [n](QubitId q) { return q >= 1 && q <= n; };
  auto place = [&a](int id, const GateTask& t) {
    a.present[static_cast<size_t>(id)] = true;
    a.start[static_cast<size_t>(id)] = t.start;
    a.length[static_cast<size_t>(id)] = t.duration;
  };

  std::vector<size_t> order(s.tasks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&s](size_t x, size_t y) {
    return std::pair(s.tasks[x].start, s.tasks[x].end()) <
           std::pair(s.tasks[y].start, s.tasks[y].end());
  });
  std::vector<size_t> next_replica(in.chip.edges.size(), 0);
  for (size_t i : order) {
    const GateTask& t = s.tasks[i];
    const std::string where = "task " + std::to_string(i) + " (" + std::string(to_string(t.kind)) + ")";
    if (!qubit_ok(t.u) || (t.two_qubit() && !qubit_ok(t.v))) {
      throw ModelError(where + " references an unknown qubit");
    }
    switch (t.kind) {
      case TaskKind::kSwap: {
        const int k = graph.edge_index(t.u, t.v);
        if (k < 0 || m.swap_vars[static_cast<size_t>(k)].empty()) {
          throw ModelError(where + " has no swap gate");
        }
        size_t& r = next_replica[static_cast<size_t>(k)];
        if (r >= m.swap_vars[static_cast<size_t>(k)].size()) {
          throw ModelError(where + " exceeds the swap replicas of its gate");
        }
        place(m.swap_vars[static_cast<size_t>(k)][r++], t);
        break;
      }
      case TaskKind::kPs: {
        const int k = graph.edge_index(t.u, t.v);
        if (k < 0) throw ModelError(where + " has no PS gate");
        if (t.goal_index < 0 || t.goal_index >= goals) {
          throw ModelError(where + " has goal index out of range");
        }
        const int id = m.ps_vars[static_cast<size_t>(k)][static_cast<size_t>(t.goal_index)];
        if (a.present[static_cast<size_t>(id)]) {
          throw ModelError(where + " repeats a goal on the same gate");
        }
        place(id, t);
        break;
      }
      case TaskKind::kMix: {
        if (in.stages != 2) throw ModelError(where + " has no mix variable in one stage");
        if (!qubit_ok(t.state)) throw ModelError(where + " mixes an unknown state");
        const int id = m.mix_options[t.state][t.u];
        if (a.present[static_cast<size_t>(id)]) throw ModelError(where + " repeats a mix");
        place(id, t);
        break;
      }
      case TaskKind::kInit:
        if (in.variant != Variant::kQccI) throw ModelError(where + " has no init variable");
        if (t.start != 0 || t.duration != 0) throw ModelError(where + " is not at t=0");
        if (!qubit_ok(t.state)) throw ModelError(where + " places an unknown state");
        if (initial[t.u] != 0) throw ModelError(where + " places a second state");
        initial[t.u] = t.state;
        break;
    }
  }

  auto sync = [&a](int master, const std::vector<int>& options) {
    for (int id : options) {
      if (id >= 0 && a.present[static_cast<size_t>(id)]) {
        a.present[static_cast<size_t>(master)] = true;
        a.start[static_cast<size_t>(master)] = a.start[static_cast<size_t>(id)];
        a.length[static_cast<size_t>(master)] = a.length[static_cast<size_t>(id)];
        return;
      }
    }
  };
  for (size_t o = 0; o < m.goal_vars.size(); ++o) {
    std::vector<int> options;
    for (const auto& per_goal : m.ps_vars) options.push_back(per_goal[o]);
    sync(m.goal_vars[o], options);
  }
  for (size_t j = 1; j < m.mix_vars.size(); ++j) sync(m.mix_vars[j], m.mix_options[j]);

  // Per-qubit sequences and the state values they induce.
  a.sequences.assign(static_cast<size_t>(n) + 1, {});
  for (QubitId q = 1; q <= n; ++q) {
    for (int id : m.own_tasks[q]) {
      if (a.present[static_cast<size_t>(id)]) a.sequences[q].push_back(id);
    }
    std::stable_sort(a.sequences[q].begin(), a.sequences[q].end(), [&a](int x, int y) {
      return std::tuple(a.start[static_cast<size_t>(x)],
                        a.start[static_cast<size_t>(x)] + a.length[static_cast<size_t>(x)], x) <
             std::tuple(a.start[static_cast<size_t>(y)],
                        a.start[static_cast<size_t>(y)] + a.length[static_cast<size_t>(y)], y);
    });
  }
  a.states.assign(static_cast<size_t>(n) + 1, {});
  std::vector<size_t> cursor(static_cast<size_t>(n) + 1, 0);
  for (QubitId q = 1; q <= n; ++q) a.states[q].push_back(initial[q]);
  // Advance every sequence in lockstep; a swap steps both endpoints.
  bool progress = true;
  while (progress) {
    progress = false;
    for (QubitId q = 1; q <= n; ++q) {
      if (cursor[q] >= a.sequences[q].size()) continue;
      const int id = a.sequences[q][cursor[q]];
      const IntervalInfo& info = m.info[static_cast<size_t>(id)];
      if (info.role == IntervalRole::kMixOption) {
        a.states[q].push_back(a.states[q].back());
        ++cursor[q];
        progress = true;
        continue;
      }
      const ChipEdge& e = in.chip.edges[static_cast<size_t>(info.edge)];
      const QubitId r = e.u == q ? e.v : e.u;
      if (cursor[r] >= a.sequences[r].size() || a.sequences[r][cursor[r]] != id) continue;
      const StateId sq = a.states[q].back();
      const StateId sr = a.states[r].back();
      const bool swap = info.role == IntervalRole::kSwap;
      a.states[q].push_back(swap ? sr : sq);
      a.states[r].push_back(swap ? sq : sr);
      ++cursor[q];
      ++cursor[r];
      progress = true;
    }
  }
  for (QubitId q = 1; q <= n; ++q) {
    // Unreachable with a single global order; kept so that states always
    // has one slot per event.
    while (a.states[q].size() < a.sequences[q].size() + 1) a.states[q].push_back(0);
  }
  a.makespan = s.makespan;
  a.swap_total = s.swap_count;
  return a;
}

std::vector<ModelViolation> check_assignment(const Model& m, const Assignment& a) {
  std::vector<ModelViolation> out;
  auto flag = [&out](ConstraintKind kind, std::string detail) {
    out.push_back({kind, std::move(detail)});
  };
  const Instance& in = m.instance;
  const int n = in.chip.qubit_count;
  const int horizon = m.bounds.horizon;
  const ChipGraph graph(in.chip);
  auto present = [&a](int id) { return id >= 0 && a.present[static_cast<size_t>(id)]; };
  auto start = [&a](int id) { return a.start[static_cast<size_t>(id)]; };
  auto end = [&a](int id) {
    return a.start[static_cast<size_t>(id)] + a.length[static_cast<size_t>(id)];
  };
  auto name = [](int id) { return "var " + std::to_string(id); };

  for (int id = 0; id < m.interval_count(); ++id) {
    if (!present(id)) continue;
    const OptionalIntervalVar& v = m.intervals[static_cast<size_t>(id)];
    const int len = a.length[static_cast<size_t>(id)];
    if (len < v.length_min || len > v.length_max) {
      flag(ConstraintKind::kDomain, name(id) + " has length " + std::to_string(len));
    }
    if (start(id) < 0 || end(id) > horizon) {
      flag(ConstraintKind::kDomain, name(id) + " leaves [0, " + std::to_string(horizon) + "]");
    }
  }
  if (m.infeasible) flag(ConstraintKind::kDomain, "bounds admit no schedule");

  int swaps = 0;
  for (const auto& reps : m.swap_vars) {
    for (int id : reps) swaps += present(id) ? 1 : 0;
  }
  if (swaps != a.swap_total) {
    flag(ConstraintKind::kObjective, "swap total " + std::to_string(a.swap_total) + " but " +
                                         std::to_string(swaps) + " swaps are present");
  }

  // Initial states.
  if (in.variant == Variant::kQccI) {
    std::vector<int> seen(static_cast<size_t>(n) + 1, 0);
    for (QubitId q = 1; q <= n; ++q) {
      const StateId s = a.states[q][0];
      if (s < 1 || s > n || seen[s]++) {
        flag(ConstraintKind::kAllDifferent, "initial state of n" + std::to_string(q) + " is " +
                                                std::to_string(s));
      }
    }
  } else {
    for (QubitId q = 1; q <= n; ++q) {
      if (a.states[q][0] != q) {
        flag(ConstraintKind::kInitialStates, "n" + std::to_string(q) + " does not start on q" +
                                                 std::to_string(q));
      }
    }
  }

  // Makespan.
  int latest = 0;
  for (int id : m.goal_vars) {
    if (present(id)) latest = std::max(latest, end(id));
  }
  if (a.makespan != latest) {
    flag(ConstraintKind::kMakespan, "makespan " + std::to_string(a.makespan) +
                                        " but the latest goal ends at " + std::to_string(latest));
  }

  // Unary resources.
  auto overlap = [&](int x, int y) { return start(x) < end(y) && start(y) < end(x); };
  for (QubitId q = 1; q <= n; ++q) {
    std::vector<int> own;
    for (int id : m.own_tasks[q]) {
      if (present(id)) own.push_back(id);
    }
    for (size_t i = 0; i < own.size(); ++i) {
      for (size_t j = i + 1; j < own.size(); ++j) {
        if (overlap(own[i], own[j])) {
          flag(ConstraintKind::kNoOverlap, name(own[i]) + " overlaps " + name(own[j]) +
                                               " on n" + std::to_string(q));
        }
      }
    }
    if (!in.crosstalk()) continue;
    for (const auto* group : {&m.swap_vars, &m.ps_vars}) {
      for (size_t k = 0; k < group->size(); ++k) {
        const ChipEdge& e = in.chip.edges[k];
        if (e.touches(q) || (!graph.adjacent(q, e.u) && !graph.adjacent(q, e.v))) continue;
        for (int other : (*group)[k]) {
          if (!present(other)) continue;
          for (int id : own) {
            const IntervalInfo& info = m.info[static_cast<size_t>(id)];
            // A gate on a shared qubit is that qubit's own-task conflict.
            if (info.role != IntervalRole::kMixOption) {
              const ChipEdge& oe = in.chip.edges[static_cast<size_t>(info.edge)];
              if (oe.touches(e.u) || oe.touches(e.v)) continue;
            }
            if (overlap(id, other)) {
              flag(ConstraintKind::kNoOverlap, name(id) + " on n" + std::to_string(q) +
                                                   " overlaps neighbor gate " + name(other));
            }
          }
        }
      }
    }
  }

  // Alternatives.
  for (size_t o = 0; o < m.goal_vars.size(); ++o) {
    int chosen = -1;
    int count = 0;
    for (const auto& per_goal : m.ps_vars) {
      if (present(per_goal[o])) {
        chosen = per_goal[o];
        ++count;
      }
    }
    const int g = m.goal_vars[o];
    if (count != 1) {
      flag(ConstraintKind::kAlternative,
           "goal " + std::to_string(o) + " has " + std::to_string(count) + " PS tasks");
    } else if (!present(g) || start(g) != start(chosen) || end(g) != end(chosen)) {
      flag(ConstraintKind::kAlternative, "goal " + std::to_string(o) + " is not synchronized");
    }
  }

  // State transitions along each sequence.
  std::vector<std::map<int, size_t>> slot(static_cast<size_t>(n) + 1);
  for (QubitId q = 1; q <= n; ++q) {
    for (size_t p = 0; p < a.sequences[q].size(); ++p) slot[q][a.sequences[q][p]] = p;
  }
  auto before = [&a, &slot](QubitId q, int id) { return a.states[q][slot[q].at(id)]; };
  auto after = [&a, &slot](QubitId q, int id) { return a.states[q][slot[q].at(id) + 1]; };
  for (size_t k = 0; k < in.chip.edges.size(); ++k) {
    const ChipEdge& e = in.chip.edges[k];
    for (int id : m.swap_vars[k]) {
      if (!present(id)) continue;
      if (after(e.u, id) != before(e.v, id) || after(e.v, id) != before(e.u, id)) {
        flag(ConstraintKind::kSwapExchange, name(id) + " does not exchange its states");
      }
    }
    for (int id : m.ps_vars[k]) {
      if (!present(id)) continue;
      if (after(e.u, id) != before(e.u, id) || after(e.v, id) != before(e.v, id)) {
        flag(ConstraintKind::kStateKeep, name(id) + " changes a state");
      }
      const Goal& g = in.goal_at(m.info[static_cast<size_t>(id)].index);
      if (!g.matches(before(e.u, id), before(e.v, id))) {
        flag(ConstraintKind::kGoalMatch,
             name(id) + " fires on q" + std::to_string(before(e.u, id)) + ",q" +
                 std::to_string(before(e.v, id)) + " instead of its goal");
      }
    }
    const auto& reps = m.swap_vars[k];
    for (size_t r = 0; r + 1 < reps.size(); ++r) {
      if (present(reps[r + 1]) && !present(reps[r])) {
        flag(ConstraintKind::kReplicaOrder, name(reps[r + 1]) + " is used before " + name(reps[r]));
      }
    }
  }

  // Mixing.
  if (in.stages == 2) {
    const int eps = in.goal_count();
    for (StateId j = 1; j <= n; ++j) {
      int count = 0;
      int chosen = -1;
      for (QubitId q = 1; q <= n; ++q) {
        const int id = m.mix_options[j][q];
        if (!present(id)) continue;
        ++count;
        chosen = id;
        if (after(q, id) != before(q, id)) {
          flag(ConstraintKind::kStateKeep, name(id) + " changes a state");
        }
        if (before(q, id) != j) {
          flag(ConstraintKind::kMixAlternative, "mix of q" + std::to_string(j) + " runs on n" +
                                                    std::to_string(q) + " which holds q" +
                                                    std::to_string(before(q, id)));
        }
      }
      const int mix = m.mix_vars[j];
      if (count != 1) {
        flag(ConstraintKind::kMixAlternative,
             "state q" + std::to_string(j) + " has " + std::to_string(count) + " mixes");
        continue;
      }
      if (!present(mix) || start(mix) != start(chosen) || end(mix) != end(chosen)) {
        flag(ConstraintKind::kMixAlternative, "mix of q" + std::to_string(j) + " is not synchronized");
        continue;
      }
      for (int o = 0; o < eps; ++o) {
        if (!in.goals[static_cast<size_t>(o)].involves(j)) continue;
        const int first = m.goal_vars[static_cast<size_t>(o)];
        const int second = m.goal_vars[static_cast<size_t>(o + eps)];
        if (present(first) && end(first) > start(mix)) {
          flag(ConstraintKind::kMixAfterStage1,
               "mix of q" + std::to_string(j) + " starts before goal " + std::to_string(o) + " ends");
        }
        if (present(second) && start(second) < end(mix)) {
          flag(ConstraintKind::kMixBeforeStage2, "goal " + std::to_string(o + eps) +
                                                     " starts before the mix of q" +
                                                     std::to_string(j) + " ends");
        }
      }
    }
  }
  return out;
}

Schedule decode(const Model& m, const Assignment& a) {
  const Instance& in = m.instance;
  Schedule s;
  s.instance_ref = in.name;
  for (int id = 0; id < m.interval_count(); ++id) {
    if (!a.present[static_cast<size_t>(id)]) continue;
    const IntervalInfo& info = m.info[static_cast<size_t>(id)];
    const int start = a.start[static_cast<size_t>(id)];
    switch (info.role) {
      case IntervalRole::kSwap: {
        const ChipEdge& e = in.chip.edges[static_cast<size_t>(info.edge)];
        s.tasks.push_back(make_swap(in.chip, e.u, e.v, start));
        break;
      }
      case IntervalRole::kPs: {
        const ChipEdge& e = in.chip.edges[static_cast<size_t>(info.edge)];
        s.tasks.push_back(make_ps(in.chip, e.u, e.v, start, info.index));
        break;
      }
      case IntervalRole::kMixOption:
        s.tasks.push_back(make_mix(in.chip, info.qubit, info.state, start));
        break;
      case IntervalRole::kGoal:
      case IntervalRole::kMix:
        break;
    }
  }
  if (in.variant == Variant::kQccI) {
    for (QubitId q = 1; q <= in.chip.qubit_count; ++q) {
      s.tasks.push_back(make_init(q, a.states[q][0]));
    }
  }
  s.sort_tasks();
  s.makespan = a.makespan;
  s.swap_count = a.swap_total;
  return s;
}

Assignment warm_start(Model& m, const Schedule& s) {
  Assignment a = map_schedule(m, s);
  const std::vector<ModelViolation> bad = check_assignment(m, a);
  if (!bad.empty()) {
    std::string msg = "warm start violates the model:";
    for (const ModelViolation& v : bad) {
      msg += "\n  " + std::string(to_string(v.kind)) + ": " + v.detail;
    }
    throw ModelError(msg);
  }
  m.incumbent = s;
  return a;
}

}  // namespace qcc
