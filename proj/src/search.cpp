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

// Chronological branch and bound over the model.
//
// Tasks start only at decision times (0 or the end of some task). At each
// decision time the candidate actions are branched on one at a time
// (start now / not now). Pruning rules, each of which keeps at least one
// optimal schedule:
//   - an action that could still start when a decision time closes may not
//     start at the next one (it could have been shifted left);
//   - a swap must move at least one state that still has work to do;
//   - a swap never immediately undoes the previous swap on the same gate;
//   - mixes of states without goals go last, when nothing else remains.

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <tuple>

#include "crosstalk.hpp"
#include "qcc/cpsolver.hpp"

namespace qcc {

std::string_view to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::kOptimal:
      return "optimal";
    case SearchStatus::kInfeasible:
      return "infeasible";
    case SearchStatus::kTimeout:
      return "timeout";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct Action {
  TaskKind kind = TaskKind::kSwap;
  int edge = -1;
  QubitId qubit = 0;
  int goal = -1;
  StateId state = 0;
  friend bool operator==(const Action&, const Action&) = default;
};

struct Node {
  int t = 0;
  std::vector<StateId> occ;
  std::vector<QubitId> pos;
  std::vector<int> release;
  std::vector<int> last;
  std::vector<GateTask> tasks;
  std::vector<int> goal_end;
  std::vector<int> mix_end;
  std::vector<int> stage1_left;
  std::vector<int> stage1_end;
  std::vector<int> swaps_used;
  int swaps = 0;
  int goals_left = 0;
  int latest = 0;
  std::vector<Action> forbidden;
};

class Searcher {
 public:
  Searcher(const Model& m, const SearchLimits& limits, const IncumbentCallback& cb)
      : m_(m),
        in_(m.instance),
        chip_(in_.chip),
        graph_(chip_),
        limits_(limits),
        cb_(cb),
        n_(chip_.qubit_count),
        eps_(in_.goal_count()),
        horizon_(m.bounds.horizon),
        replicas_(m.bounds.swaps_per_gate) {
    tau_ps_ = chip_.edges.empty() ? 0 : chip_.min_ps_duration();
    pair_goal_.assign(static_cast<size_t>(n_) + 1, std::vector<int>(static_cast<size_t>(n_) + 1, -1));
    goals_of_.assign(static_cast<size_t>(n_) + 1, {});
    for (int o = 0; o < eps_; ++o) {
      const Goal& g = in_.goals[static_cast<size_t>(o)];
      pair_goal_[g.a][g.b] = pair_goal_[g.b][g.a] = o;
      goals_of_[g.a].push_back(o);
      goals_of_[g.b].push_back(o);
    }
    if (m.incumbent) {
      best_ = m.incumbent;
      for (const GateTask& t : m.incumbent->tasks) {
        hints_.insert({t.kind, std::min(t.u, t.v), std::max(t.u, t.v), t.start});
        if (t.kind == TaskKind::kInit) hint_place_[t.state] = t.u;
      }
    }
  }

  SearchResult run() {
    t0_ = Clock::now();
    SearchResult r;
    if (!(limits_.time_limit_s > 0.0) || limits_.node_limit == 0) {
      stopped_ = true;
    } else if (!m_.infeasible) {
      if (in_.variant == Variant::kQccI) {
        place_states();
      } else {
        std::vector<StateId> identity(static_cast<size_t>(n_) + 1);
        for (int q = 0; q <= n_; ++q) identity[static_cast<size_t>(q)] = q;
        start_from(identity);
      }
    }
    r.status = stopped_ ? SearchStatus::kTimeout
                        : (best_ ? SearchStatus::kOptimal : SearchStatus::kInfeasible);
    r.incumbents = std::move(found_);
    r.best = best_;
    r.nodes = nodes_;
    r.seconds = elapsed();
    return r;
  }

 private:
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - t0_).count(); }

  bool out_of_budget() {
    if (stopped_) return true;
    ++nodes_;
    if (limits_.node_limit >= 0 && nodes_ > limits_.node_limit) stopped_ = true;
    if ((nodes_ & 255) == 0 && elapsed() >= limits_.time_limit_s) stopped_ = true;
    return stopped_;
  }

  // Free placement: states with goals, highest degree first, onto every
  // free qubit; the rest fill the remaining qubits in order.
  void place_states() {
    std::vector<StateId> order;
    for (StateId s = 1; s <= n_; ++s) {
      if (!goals_of_[s].empty()) order.push_back(s);
    }
    std::stable_sort(order.begin(), order.end(), [this](StateId a, StateId b) {
      return goals_of_[a].size() > goals_of_[b].size();
    });
    std::vector<StateId> placement(static_cast<size_t>(n_) + 1, 0);
    place_next(order, 0, placement);
  }

  void place_next(const std::vector<StateId>& order, size_t i, std::vector<StateId>& placement) {
    if (stopped_) return;
    if (i == order.size()) {
      std::vector<StateId> full = placement;
      std::vector<char> used(static_cast<size_t>(n_) + 1, 0);
      for (StateId s : order) used[s] = 1;
      StateId next = 1;
      for (QubitId q = 1; q <= n_; ++q) {
        if (full[q] != 0) continue;
        while (used[next]) ++next;
        full[q] = next;
        used[next] = 1;
      }
      start_from(full);
      return;
    }
    const StateId s = order[i];
    std::vector<QubitId> qubits;
    if (auto it = hint_place_.find(s); it != hint_place_.end()) qubits.push_back(it->second);
    for (QubitId q = 1; q <= n_; ++q) {
      if (qubits.empty() || qubits.front() != q) qubits.push_back(q);
    }
    for (QubitId q : qubits) {
      if (placement[q] != 0) continue;
      placement[q] = s;
      place_next(order, i + 1, placement);
      placement[q] = 0;
      if (stopped_) return;
    }
  }

  void start_from(const std::vector<StateId>& placement) {
    placement_ = placement;
    Node nd;
    const size_t n1 = static_cast<size_t>(n_) + 1;
    nd.occ = placement;
    nd.pos.assign(n1, 0);
    for (QubitId q = 1; q <= n_; ++q) nd.pos[placement[q]] = q;
    nd.release.assign(n1, 0);
    nd.last.assign(n1, -1);
    nd.goal_end.assign(static_cast<size_t>(in_.total_goal_count()), -1);
    nd.mix_end.assign(n1, -1);
    nd.stage1_left.assign(n1, 0);
    for (StateId s = 1; s <= n_; ++s) nd.stage1_left[s] = static_cast<int>(goals_of_[s].size());
    nd.stage1_end.assign(n1, 0);
    nd.swaps_used.assign(chip_.edges.size(), 0);
    nd.goals_left = in_.total_goal_count();
    if (nd.goals_left == 0) {
      leaf(nd);
      return;
    }
    decision(nd);
  }

  bool active(const Node& nd, StateId s) const {
    if (goals_of_[s].empty()) return false;
    if (in_.stages == 2 && nd.mix_end[s] < 0) return true;
    for (int o : goals_of_[s]) {
      if (nd.goal_end[static_cast<size_t>(o)] < 0) return true;
      if (in_.stages == 2 && nd.goal_end[static_cast<size_t>(o + eps_)] < 0) return true;
    }
    return false;
  }

  GateTask task_of(const Action& a, int t) const {
    switch (a.kind) {
      case TaskKind::kSwap: {
        const ChipEdge& e = chip_.edges[static_cast<size_t>(a.edge)];
        return make_swap(chip_, e.u, e.v, t);
      }
      case TaskKind::kPs: {
        const ChipEdge& e = chip_.edges[static_cast<size_t>(a.edge)];
        return make_ps(chip_, e.u, e.v, t, a.goal);
      }
      default:
        return make_mix(chip_, a.qubit, a.state, t);
    }
  }

  bool crosstalk_free(const Node& nd, const GateTask& task) const {
    if (!in_.crosstalk()) return true;
    for (const GateTask& y : nd.tasks) {
      if (y.end() <= task.start) continue;
      if (detail::crosstalk_related(graph_, task, y)) return false;
    }
    return true;
  }

  bool compatible(const Node& nd, const Action& a) const {
    const int t = nd.t;
    const GateTask task = task_of(a, t);
    if (task.end() > horizon_) return false;
    if (nd.release[task.u] > t) return false;
    if (task.two_qubit() && nd.release[task.v] > t) return false;
    switch (a.kind) {
      case TaskKind::kSwap: {
        if (nd.swaps_used[static_cast<size_t>(a.edge)] >= replicas_) return false;
        if (!active(nd, nd.occ[task.u]) && !active(nd, nd.occ[task.v])) return false;
        const int lu = nd.last[task.u];
        if (lu >= 0 && lu == nd.last[task.v] &&
            nd.tasks[static_cast<size_t>(lu)].kind == TaskKind::kSwap) {
          return false;
        }
        break;
      }
      case TaskKind::kPs: {
        if (nd.goal_end[static_cast<size_t>(a.goal)] >= 0) return false;
        const Goal& g = in_.goal_at(a.goal);
        if (!g.matches(nd.occ[task.u], nd.occ[task.v])) return false;
        if (a.goal >= eps_) {
          for (StateId s : {g.a, g.b}) {
            if (nd.mix_end[s] < 0 || nd.mix_end[s] > t) return false;
          }
        }
        break;
      }
      default:
        if (nd.occ[a.qubit] != a.state || nd.mix_end[a.state] >= 0) return false;
        if (nd.stage1_left[a.state] > 0 || nd.stage1_end[a.state] > t) return false;
        break;
    }
    return crosstalk_free(nd, task);
  }

  // Unstarted goals brought closer by a swap.
  int progress(const Node& nd, const Action& a) const {
    const ChipEdge& e = chip_.edges[static_cast<size_t>(a.edge)];
    int gain = 0;
    for (auto [from, to] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      const StateId s = nd.occ[from];
      const StateId moved_back = nd.occ[to];
      for (int o : goals_of_[s]) {
        const Goal& g = in_.goals[static_cast<size_t>(o)];
        const StateId other = g.a == s ? g.b : g.a;
        if (other == moved_back) continue;
        const bool open = nd.goal_end[static_cast<size_t>(o)] < 0 ||
                          (in_.stages == 2 && nd.goal_end[static_cast<size_t>(o + eps_)] < 0);
        if (!open) continue;
        const QubitId p = nd.pos[other];
        if (graph_.swaps_to_adjacent(to, p) < graph_.swaps_to_adjacent(from, p)) ++gain;
      }
    }
    return gain;
  }

  bool hinted(const Action& a, int t) const {
    if (hints_.empty()) return false;
    const GateTask task = task_of(a, t);
    return hints_.count({task.kind, std::min(task.u, task.v), std::max(task.u, task.v), t}) > 0;
  }

  std::vector<Action> candidates(const Node& nd) const {
    std::vector<std::tuple<int, int, int, size_t>> keyed;
    std::vector<Action> acts;
    auto offer = [&](const Action& a, int category, int score) {
      if (std::find(nd.forbidden.begin(), nd.forbidden.end(), a) != nd.forbidden.end()) return;
      if (!compatible(nd, a)) return;
      keyed.emplace_back(category, hinted(a, nd.t) ? 0 : 1, -score, acts.size());
      acts.push_back(a);
    };
    for (size_t k = 0; k < chip_.edges.size(); ++k) {
      const ChipEdge& e = chip_.edges[k];
      if (nd.release[e.u] > nd.t || nd.release[e.v] > nd.t) continue;
      const int o = pair_goal_[nd.occ[e.u]][nd.occ[e.v]];
      if (o >= 0) {
        Action ps{TaskKind::kPs, static_cast<int>(k), 0, o, 0};
        if (nd.goal_end[static_cast<size_t>(o)] >= 0 && in_.stages == 2) ps.goal = o + eps_;
        offer(ps, 0, 0);
      }
      if (e.swap_enabled) {
        Action sw{TaskKind::kSwap, static_cast<int>(k), 0, -1, 0};
        offer(sw, 2, progress(nd, sw));
      }
    }
    if (in_.stages == 2) {
      for (QubitId q = 1; q <= n_; ++q) {
        const StateId s = nd.occ[q];
        if (goals_of_[s].empty()) continue;
        offer({TaskKind::kMix, -1, q, -1, s}, 1, 0);
      }
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<Action> out;
    for (const auto& k : keyed) out.push_back(acts[std::get<3>(k)]);
    return out;
  }

  void apply(Node& nd, const Action& a) const {
    const GateTask task = task_of(a, nd.t);
    const int id = static_cast<int>(nd.tasks.size());
    nd.tasks.push_back(task);
    nd.release[task.u] = task.end();
    nd.last[task.u] = id;
    if (task.two_qubit()) {
      nd.release[task.v] = task.end();
      nd.last[task.v] = id;
    }
    switch (a.kind) {
      case TaskKind::kSwap:
        std::swap(nd.occ[task.u], nd.occ[task.v]);
        nd.pos[nd.occ[task.u]] = task.u;
        nd.pos[nd.occ[task.v]] = task.v;
        ++nd.swaps_used[static_cast<size_t>(a.edge)];
        ++nd.swaps;
        break;
      case TaskKind::kPs: {
        nd.goal_end[static_cast<size_t>(a.goal)] = task.end();
        --nd.goals_left;
        nd.latest = std::max(nd.latest, task.end());
        if (a.goal < eps_) {
          const Goal& g = in_.goal_at(a.goal);
          for (StateId s : {g.a, g.b}) {
            --nd.stage1_left[s];
            nd.stage1_end[s] = std::max(nd.stage1_end[s], task.end());
          }
        }
        break;
      }
      default:
        nd.mix_end[a.state] = task.end();
        break;
    }
  }

  // (makespan, swaps) that every completion of nd must reach.
  std::pair<int, int> lower_bound(const Node& nd) const {
    const int t = nd.t;
    const int ts = chip_.swap_duration;
    const int tm = chip_.mix_duration;
    int lb = nd.latest;
    int swap_need = 0;
    auto avail = [&](StateId s) { return std::max(t, nd.release[nd.pos[s]]); };
    std::vector<int> before_stage2(static_cast<size_t>(n_) + 1, 0);
    for (StateId s = 1; s <= n_; ++s) {
      if (goals_of_[s].empty()) continue;
      const int a = avail(s);
      const int p1 = nd.stage1_left[s];
      int p2 = 0;
      if (in_.stages == 2) {
        for (int o : goals_of_[s]) p2 += nd.goal_end[static_cast<size_t>(o + eps_)] < 0 ? 1 : 0;
      }
      if (in_.stages == 2 && nd.mix_end[s] < 0) {
        const int mixed = std::max(a + p1 * tau_ps_, nd.stage1_end[s]) + tm;
        before_stage2[s] = mixed;
        lb = std::max(lb, mixed + p2 * tau_ps_);
      } else {
        before_stage2[s] = std::max(a, nd.mix_end[s]);
        if (p1 + p2 > 0) lb = std::max(lb, a + (p1 + p2) * tau_ps_);
      }
    }
    for (size_t o = 0; o < nd.goal_end.size(); ++o) {
      if (nd.goal_end[o] >= 0) continue;
      const Goal& g = in_.goal_at(static_cast<int>(o));
      const int d = graph_.swaps_to_adjacent(nd.pos[g.a], nd.pos[g.b]);
      swap_need = std::max(swap_need, d);
      int ra = avail(g.a);
      int rb = avail(g.b);
      if (static_cast<int>(o) >= eps_) {
        ra = std::max(ra, before_stage2[g.a]);
        rb = std::max(rb, before_stage2[g.b]);
        if (nd.mix_end[g.a] < 0) ra = std::max(ra, avail(g.a) + tm);
        if (nd.mix_end[g.b] < 0) rb = std::max(rb, avail(g.b) + tm);
      }
      int best = INT32_MAX;
      for (int k = 0; k <= d; ++k) {
        best = std::min(best, std::max(ra + k * ts, rb + (d - k) * ts));
      }
      lb = std::max(lb, best + tau_ps_);
    }
    return {lb, nd.swaps + swap_need};
  }

  bool pruned(const Node& nd) const {
    const auto [lb, swaps] = lower_bound(nd);
    if (lb > horizon_) return true;
    if (!best_) return false;
    return lb > best_->makespan || (lb == best_->makespan && swaps >= best_->swap_count);
  }

  void decision(const Node& nd) {
    if (out_of_budget() || pruned(nd)) return;
    const std::vector<Action> cands = candidates(nd);
    Node work = nd;
    decide(work, cands, 0);
  }

  void decide(const Node& nd, const std::vector<Action>& cands, size_t i) {
    if (stopped_) return;
    if (i == cands.size()) {
      close(nd, cands);
      return;
    }
    const Action& a = cands[i];
    if (!compatible(nd, a)) {
      decide(nd, cands, i + 1);
      return;
    }
    const bool include_first = a.kind != TaskKind::kSwap || hinted(a, nd.t) || progress(nd, a) > 0;
    for (int pass = 0; pass < 2 && !stopped_; ++pass) {
      if ((pass == 0) == include_first) {
        Node child = nd;
        apply(child, a);
        if (child.goals_left == 0) {
          leaf(child);
        } else if (!out_of_budget() && !pruned(child)) {
          decide(child, cands, i + 1);
        }
      } else {
        decide(nd, cands, i + 1);
      }
    }
  }

  void close(const Node& nd, const std::vector<Action>& cands) {
    int next_t = INT32_MAX;
    for (const GateTask& y : nd.tasks) {
      if (y.end() > nd.t) next_t = std::min(next_t, y.end());
    }
    if (next_t == INT32_MAX) return;
    Node next = nd;
    next.forbidden.clear();
    for (const std::vector<Action>* list : {&cands, &nd.forbidden}) {
      for (const Action& a : *list) {
        if (compatible(nd, a) &&
            std::find(next.forbidden.begin(), next.forbidden.end(), a) == next.forbidden.end()) {
          next.forbidden.push_back(a);
        }
      }
    }
    next.t = next_t;
    decision(next);
  }

  void leaf(const Node& nd) {
    Schedule s;
    s.instance_ref = in_.name;
    s.tasks = nd.tasks;
    if (in_.stages == 2) {
      for (StateId j = 1; j <= n_; ++j) {
        if (nd.mix_end[j] >= 0) continue;
        const QubitId q = nd.pos[j];
        GateTask mix = make_mix(chip_, q, j, nd.release[q]);
        bool moved = true;
        while (moved) {
          moved = false;
          for (const GateTask& y : s.tasks) {
            if (!in_.crosstalk() || y.end() <= mix.start || y.start >= mix.end()) continue;
            if (detail::crosstalk_related(graph_, mix, y)) {
              mix.start = y.end();
              moved = true;
            }
          }
        }
        if (mix.end() > horizon_) return;
        s.tasks.push_back(mix);
      }
    }
    if (in_.variant == Variant::kQccI) {
      for (QubitId q = 1; q <= n_; ++q) s.tasks.push_back(make_init(q, placement_[q]));
    }
    s.sort_tasks();
    s.refresh_summary();
    if (best_ && !(s.objective() < best_->objective())) return;
    ValidateOptions vo;
    vo.horizon = horizon_;
    const ValidationReport report = validate(in_, s, vo);
    if (!report.valid) {
      throw std::logic_error("search built an invalid schedule: " + report.summary());
    }
    best_ = s;
    found_.push_back({elapsed(), s});
    if (cb_) cb_(found_.back());
  }

  const Model& m_;
  const Instance& in_;
  const Chip& chip_;
  const ChipGraph graph_;
  const SearchLimits limits_;
  const IncumbentCallback& cb_;
  const int n_;
  const int eps_;
  const int horizon_;
  const int replicas_;
  int tau_ps_ = 0;
  std::vector<std::vector<int>> pair_goal_;
  std::vector<std::vector<int>> goals_of_;
  std::set<std::tuple<TaskKind, int, int, int>> hints_;
  std::map<StateId, QubitId> hint_place_;

  Clock::time_point t0_;
  long nodes_ = 0;
  bool stopped_ = false;
  std::optional<Schedule> best_;
  std::vector<Incumbent> found_;
  std::vector<StateId> placement_;
};

}  // namespace

SearchResult search(const Model& model, const SearchLimits& limits,
                    const IncumbentCallback& on_incumbent) {
  return Searcher(model, limits, on_incumbent).run();
}

}  // namespace qcc
