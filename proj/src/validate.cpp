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

// State replay and rule checking. Nothing here may depend on the constraint
// model: this file is the yardstick the model is measured against.

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "qcc/bounds.hpp"
#include "qcc/schedule.hpp"

namespace qcc {

namespace {

bool overlaps(const GateTask& a, const GateTask& b) {
  return a.start < b.end() && b.start < a.end();
}

std::string describe(const GateTask& t) {
  std::ostringstream out;
  out << to_string(t.kind) << "@";
  if (t.two_qubit()) {
    out << "(n" << t.u << ",n" << t.v << ")";
  } else {
    out << "n" << t.u;
  }
  out << "[" << t.start << "," << t.end() << ")";
  return out.str();
}

bool qubit_ok(const Instance& in, QubitId q) { return q >= 1 && q <= in.chip.qubit_count; }

bool located(const Instance& in, const GateTask& t) {
  if (!qubit_ok(in, t.u)) return false;
  if (t.two_qubit() && (!qubit_ok(in, t.v) || t.u == t.v)) return false;
  return true;
}

// Initial placement: identity, or the init tasks when they form a
// permutation. Unassigned qubits fall back to identity.
std::vector<StateId> initial_states(const Instance& in, const Schedule& s) {
  const int n = in.chip.qubit_count;
  std::vector<StateId> init(static_cast<size_t>(n) + 1);
  std::iota(init.begin(), init.end(), 0);
  if (in.variant != Variant::kQccI) return init;
  for (const GateTask& t : s.tasks) {
    if (t.kind == TaskKind::kInit && qubit_ok(in, t.u)) init[t.u] = t.state;
  }
  return init;
}

// Tolerant replay: swaps take effect at their end, queries read the state
// after every completion at or before their time.
StateTrace replay(const Instance& in, const Schedule& s) {
  const int n = in.chip.qubit_count;
  std::vector<StateId> current = initial_states(in, s);
  StateTrace trace(static_cast<size_t>(n) + 1);
  for (int q = 1; q <= n; ++q) trace[q].push_back({0, -1, current[q]});

  std::vector<int> order;
  for (size_t i = 0; i < s.tasks.size(); ++i) {
    const GateTask& t = s.tasks[i];
    if (t.kind == TaskKind::kInit || !located(in, t)) continue;
    order.push_back(static_cast<int>(i));
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const GateTask& x = s.tasks[a];
    const GateTask& y = s.tasks[b];
    return std::tie(x.start, a) < std::tie(y.start, b);
  });
  // Swaps are applied in end order, interleaved with the recorded events.
  std::multimap<std::pair<int, int>, int> pending;  // (end, idx) -> idx
  for (int idx : order) pending.emplace(std::pair{s.tasks[idx].end(), idx}, idx);
  for (const auto& [key, idx] : pending) {
    const GateTask& t = s.tasks[idx];
    if (t.kind == TaskKind::kSwap) std::swap(current[t.u], current[t.v]);
    trace[t.u].push_back({t.end(), idx, current[t.u]});
    if (t.two_qubit()) trace[t.v].push_back({t.end(), idx, current[t.v]});
  }
  return trace;
}

}  // namespace

StateId state_at(const StateTrace& trace, QubitId q, int time) {
  StateId held = 0;
  for (const StateEvent& e : trace[q]) {
    if (e.time <= time) held = e.state;
  }
  return held;
}

StateTrace simulate_states(const Instance& instance, const Schedule& schedule) {
  const int n = instance.chip.qubit_count;
  std::vector<std::vector<int>> on_qubit(static_cast<size_t>(n) + 1);
  for (size_t i = 0; i < schedule.tasks.size(); ++i) {
    const GateTask& t = schedule.tasks[i];
    if (!located(instance, t)) {
      throw SimulationError("task " + std::to_string(i) + " references an unknown qubit");
    }
    if (t.kind == TaskKind::kInit) continue;
    on_qubit[t.u].push_back(static_cast<int>(i));
    if (t.two_qubit()) on_qubit[t.v].push_back(static_cast<int>(i));
  }
  for (int q = 1; q <= n; ++q) {
    const auto& ids = on_qubit[q];
    for (size_t a = 0; a < ids.size(); ++a) {
      for (size_t b = a + 1; b < ids.size(); ++b) {
        if (overlaps(schedule.tasks[ids[a]], schedule.tasks[ids[b]])) {
          throw SimulationError("overlapping tasks " + std::to_string(ids[a]) + " and " +
                                std::to_string(ids[b]) + " on qubit n" + std::to_string(q));
        }
      }
    }
  }
  if (instance.variant == Variant::kQccI) {
    std::vector<int> qubit_seen(static_cast<size_t>(n) + 1, 0);
    std::vector<int> state_seen(static_cast<size_t>(n) + 1, 0);
    for (const GateTask& t : schedule.tasks) {
      if (t.kind != TaskKind::kInit) continue;
      if (t.state < 1 || t.state > n) throw SimulationError("init task with unknown state");
      if (qubit_seen[t.u]++ || state_seen[t.state]++) {
        throw SimulationError("conflicting init tasks on qubit n" + std::to_string(t.u));
      }
    }
    for (int q = 1; q <= n; ++q) {
      if (!qubit_seen[q]) {
        throw SimulationError("QCC-I schedule has no init task for qubit n" + std::to_string(q));
      }
    }
  }
  return replay(instance, schedule);
}

bool ValidationReport::has(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::summary() const {
  if (valid) return "valid";
  std::ostringstream out;
  for (const Violation& v : violations) {
    out << v.rule << ": " << v.detail;
    if (!v.tasks.empty()) {
      out << " [tasks";
      for (int t : v.tasks) out << " " << t;
      out << "]";
    }
    out << "\n";
  }
  return out.str();
}

ValidationReport validate(const Instance& in, const Schedule& s, const ValidateOptions& options) {
  ValidationReport report;
  auto flag = [&report](std::string rule, std::string detail, std::vector<int> tasks = {}) {
    report.violations.push_back({std::move(rule), std::move(detail), std::move(tasks)});
  };
  const Chip& chip = in.chip;
  const ChipGraph graph(chip);
  const int n = chip.qubit_count;
  const int goals_total = in.total_goal_count();
  const int horizon = options.horizon.value_or(horizon_bound(in));

  std::vector<char> usable(s.tasks.size(), 1);

  // R5: locations and durations.
  for (size_t i = 0; i < s.tasks.size(); ++i) {
    const GateTask& t = s.tasks[i];
    const int id = static_cast<int>(i);
    if (t.start < 0) flag("R5", describe(t) + " starts before 0", {id});
    if (!located(in, t)) {
      flag("R5", describe(t) + " references an unknown qubit", {id});
      usable[i] = 0;
      continue;
    }
    switch (t.kind) {
      case TaskKind::kSwap: {
        const int k = graph.edge_index(t.u, t.v);
        if (k < 0 || !chip.edges[static_cast<size_t>(k)].swap_enabled) {
          flag("R5", describe(t) + " has no swap gate", {id});
          usable[i] = 0;
        } else if (t.duration != chip.swap_duration) {
          flag("R5", describe(t) + " duration differs from tau_swap", {id});
        }
        break;
      }
      case TaskKind::kPs: {
        const int k = graph.edge_index(t.u, t.v);
        if (k < 0) {
          flag("R5", describe(t) + " has no PS gate", {id});
          usable[i] = 0;
        } else if (t.duration != chip.edges[static_cast<size_t>(k)].ps_duration) {
          flag("R5", describe(t) + " duration differs from the gate color", {id});
        }
        break;
      }
      case TaskKind::kMix:
        if (t.duration != chip.mix_duration) {
          flag("R5", describe(t) + " duration differs from tau_mix", {id});
        }
        if (t.state < 1 || t.state > n) flag("R5", describe(t) + " mixes an unknown state", {id});
        break;
      case TaskKind::kInit:
        if (t.duration != 0 || t.start != 0) {
          flag("R5", describe(t) + " init tasks are instantaneous at t=0", {id});
        }
        if (t.state < 1 || t.state > n) flag("R5", describe(t) + " places an unknown state", {id});
        break;
    }
  }

  // R1: unary qubits.
  for (int q = 1; q <= n; ++q) {
    std::vector<int> ids;
    for (size_t i = 0; i < s.tasks.size(); ++i) {
      const GateTask& t = s.tasks[i];
      if (usable[i] && t.kind != TaskKind::kInit && t.touches(q)) ids.push_back(static_cast<int>(i));
    }
    for (size_t a = 0; a < ids.size(); ++a) {
      for (size_t b = a + 1; b < ids.size(); ++b) {
        const GateTask& x = s.tasks[ids[a]];
        const GateTask& y = s.tasks[ids[b]];
        if (overlaps(x, y)) {
          flag("R1", describe(x) + " overlaps " + describe(y) + " on n" + std::to_string(q),
               {ids[a], ids[b]});
        }
      }
    }
  }

  // R2: a two-qubit gate disables every qubit adjacent to its endpoints.
  if (in.crosstalk()) {
    auto near = [&](QubitId q, const GateTask& g) {
      return graph.adjacent(q, g.u) || graph.adjacent(q, g.v);
    };
    for (size_t i = 0; i < s.tasks.size(); ++i) {
      const GateTask& x = s.tasks[i];
      if (!usable[i] || x.kind == TaskKind::kInit) continue;
      for (size_t j = i + 1; j < s.tasks.size(); ++j) {
        const GateTask& y = s.tasks[j];
        if (!usable[j] || y.kind == TaskKind::kInit || !overlaps(x, y)) continue;
        bool clash = false;
        if (x.two_qubit() && y.two_qubit()) {
          const bool shared = x.touches(y.u) || x.touches(y.v);
          clash = !shared && (near(y.u, x) || near(y.v, x));
        } else if (x.two_qubit() && y.kind == TaskKind::kMix) {
          clash = !x.touches(y.u) && near(y.u, x);
        } else if (y.two_qubit() && x.kind == TaskKind::kMix) {
          clash = !y.touches(x.u) && near(x.u, y);
        }
        if (clash) {
          flag("R2", describe(x) + " and " + describe(y) + " violate crosstalk exclusion",
               {static_cast<int>(i), static_cast<int>(j)});
        }
      }
    }
  }

  // R7: initial placement.
  {
    std::vector<int> inits;
    for (size_t i = 0; i < s.tasks.size(); ++i) {
      if (s.tasks[i].kind == TaskKind::kInit) inits.push_back(static_cast<int>(i));
    }
    if (in.variant != Variant::kQccI) {
      if (!inits.empty()) flag("R7", "init tasks are only allowed in QCC-I", inits);
    } else {
      std::vector<int> per_qubit(static_cast<size_t>(n) + 1, 0);
      std::vector<int> per_state(static_cast<size_t>(n) + 1, 0);
      for (int id : inits) {
        const GateTask& t = s.tasks[id];
        if (qubit_ok(in, t.u)) ++per_qubit[t.u];
        if (t.state >= 1 && t.state <= n) ++per_state[t.state];
      }
      for (int q = 1; q <= n; ++q) {
        if (per_qubit[q] != 1) {
          flag("R7", "qubit n" + std::to_string(q) + " has " + std::to_string(per_qubit[q]) +
                         " init tasks");
        }
        if (per_state[q] != 1) {
          flag("R7", "state q" + std::to_string(q) + " is placed " +
                         std::to_string(per_state[q]) + " times");
        }
      }
    }
  }

  report.state_trace = replay(in, s);
  const StateTrace& trace = report.state_trace;

  // R3/R4: goal PS tasks.
  std::vector<std::vector<int>> ps_of_goal(static_cast<size_t>(goals_total));
  for (size_t i = 0; i < s.tasks.size(); ++i) {
    const GateTask& t = s.tasks[i];
    if (t.kind != TaskKind::kPs) continue;
    const int id = static_cast<int>(i);
    if (t.goal_index < 0 || t.goal_index >= goals_total) {
      flag("R3", describe(t) + " carries no valid goal index", {id});
      continue;
    }
    ps_of_goal[static_cast<size_t>(t.goal_index)].push_back(id);
    if (!usable[i]) continue;
    const Goal& g = in.goal_at(t.goal_index);
    const StateId a = state_at(trace, t.u, t.start);
    const StateId b = state_at(trace, t.v, t.start);
    if (!g.matches(a, b)) {
      flag("R4", describe(t) + " finds <q" + std::to_string(a) + ",q" + std::to_string(b) +
                     "> but goal " + std::to_string(t.goal_index) + " needs <q" +
                     std::to_string(g.a) + ",q" + std::to_string(g.b) + ">",
           {id});
    }
  }
  for (int o = 0; o < goals_total; ++o) {
    const auto& ids = ps_of_goal[static_cast<size_t>(o)];
    if (ids.size() != 1) {
      flag("R3", "goal " + std::to_string(o) + " has " + std::to_string(ids.size()) +
                     " PS tasks, expected exactly one",
           ids);
    }
  }

  // R6: mixing separates the two stages.
  {
    std::vector<int> mixes;
    for (size_t i = 0; i < s.tasks.size(); ++i) {
      if (s.tasks[i].kind == TaskKind::kMix) mixes.push_back(static_cast<int>(i));
    }
    if (in.stages == 1) {
      if (!mixes.empty()) flag("R6", "mixing tasks need two PS stages", mixes);
    } else {
      std::vector<std::vector<int>> mix_of_state(static_cast<size_t>(n) + 1);
      for (int id : mixes) {
        const GateTask& t = s.tasks[id];
        if (t.state >= 1 && t.state <= n) mix_of_state[t.state].push_back(id);
        if (usable[id] && t.state >= 1 && t.state <= n) {
          const StateId held = state_at(trace, t.u, t.start);
          if (held != t.state) {
            flag("R6", describe(t) + " mixes q" + std::to_string(t.state) + " but n" +
                           std::to_string(t.u) + " holds q" + std::to_string(held),
                 {id});
          }
        }
      }
      const int eps = in.goal_count();
      for (StateId j = 1; j <= n; ++j) {
        const auto& m = mix_of_state[j];
        if (m.size() != 1) {
          flag("R6", "state q" + std::to_string(j) + " has " + std::to_string(m.size()) +
                         " mixing tasks, expected exactly one",
               m);
        }
        for (int mid : m) {
          const GateTask& mix = s.tasks[mid];
          for (int o = 0; o < goals_total; ++o) {
            if (!in.goal_at(o).involves(j)) continue;
            for (int pid : ps_of_goal[static_cast<size_t>(o)]) {
              const GateTask& ps = s.tasks[pid];
              if (o < eps && ps.end() > mix.start) {
                flag("R6", describe(ps) + " (stage 1) ends after " + describe(mix) + " starts",
                     {pid, mid});
              } else if (o >= eps && mix.end() > ps.start) {
                flag("R6", describe(ps) + " (stage 2) starts before " + describe(mix) + " ends",
                     {pid, mid});
              }
            }
          }
        }
      }
    }
  }

  // R8: bookkeeping.
  {
    int latest = 0;
    int swaps = 0;
    for (const GateTask& t : s.tasks) {
      if (t.kind == TaskKind::kSwap) ++swaps;
      if (t.kind == TaskKind::kPs && t.goal_index >= 0 && t.goal_index < goals_total) {
        latest = std::max(latest, t.end());
      }
    }
    if (s.makespan != latest) {
      flag("R8", "makespan " + std::to_string(s.makespan) +
                     " differs from the latest goal completion " + std::to_string(latest));
    }
    if (s.swap_count != swaps) {
      flag("R8", "swap_count " + std::to_string(s.swap_count) + " differs from " +
                     std::to_string(swaps) + " swap tasks");
    }
  }

  // R9: horizon.
  for (size_t i = 0; i < s.tasks.size(); ++i) {
    if (s.tasks[i].end() > horizon) {
      flag("R9", describe(s.tasks[i]) + " ends after horizon " + std::to_string(horizon),
           {static_cast<int>(i)});
    }
  }

  report.total_span = s.total_span();
  report.valid = report.violations.empty();
  return report;
}

}  // namespace qcc
