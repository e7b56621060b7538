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

#include "qcc/router.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <numeric>

#include "crosstalk.hpp"
#include "qcc/rng.hpp"

namespace qcc {

namespace {

using detail::crosstalk_related;

// Appends tasks as-early-as-possible behind each qubit's last task, so the
// current state positions are always the ones any new task will see.
class Builder {
 public:
  Builder(const Instance& in, const ChipGraph& graph, const std::vector<StateId>& placement)
      : in_(&in), graph_(&graph) {
    const size_t n1 = static_cast<size_t>(in.chip.qubit_count) + 1;
    occ_ = placement;
    pos_.assign(n1, 0);
    for (size_t q = 1; q < n1; ++q) pos_[static_cast<size_t>(occ_[q])] = static_cast<QubitId>(q);
    release_.assign(n1, 0);
  }

  QubitId pos(StateId s) const { return pos_[s]; }
  StateId occupant(QubitId q) const { return occ_[q]; }
  int release(QubitId q) const { return release_[q]; }
  int horizon_end() const {
    return *std::max_element(release_.begin(), release_.end());
  }

  int earliest(const GateTask& t, int not_before) const {
    int s = std::max(not_before, release_[t.u]);
    if (t.two_qubit()) s = std::max(s, release_[t.v]);
    if (!in_->crosstalk()) return s;
    bool moved = true;
    while (moved) {
      moved = false;
      for (const GateTask& y : tasks_) {
        if (y.kind == TaskKind::kInit) continue;
        if (s < y.end() && y.start < s + t.duration && !t.touches(y.u) &&
            !(y.two_qubit() && t.touches(y.v)) && crosstalk_related(*graph_, t, y)) {
          s = y.end();
          moved = true;
        }
      }
    }
    return s;
  }

  void add(const GateTask& t) {
    tasks_.push_back(t);
    release_[t.u] = std::max(release_[t.u], t.end());
    if (t.two_qubit()) release_[t.v] = std::max(release_[t.v], t.end());
    if (t.kind == TaskKind::kSwap) {
      std::swap(occ_[t.u], occ_[t.v]);
      pos_[occ_[t.u]] = t.u;
      pos_[occ_[t.v]] = t.v;
    }
  }

  GateTask place(GateTask t, int not_before) {
    t.start = earliest(t, not_before);
    add(t);
    return t;
  }

  std::vector<GateTask>& tasks() { return tasks_; }

 private:
  const Instance* in_;
  const ChipGraph* graph_;
  std::vector<StateId> occ_;
  std::vector<QubitId> pos_;
  std::vector<int> release_;
  std::vector<GateTask> tasks_;
};

std::vector<StateId> identity_placement(const Instance& in) {
  std::vector<StateId> p(static_cast<size_t>(in.chip.qubit_count) + 1);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Schedule finish(const Instance& in, const std::vector<StateId>& placement,
                std::vector<GateTask> tasks) {
  Schedule s;
  s.instance_ref = in.name;
  if (in.variant == Variant::kQccI) {
    for (QubitId q = 1; q <= in.chip.qubit_count; ++q) tasks.push_back(make_init(q, placement[q]));
  }
  s.tasks = std::move(tasks);
  s.sort_tasks();
  s.refresh_summary();
  return s;
}

void check_reachable(const Instance& in, const ChipGraph& graph) {
  for (QubitId q = 2; q <= in.chip.qubit_count; ++q) {
    if (graph.swap_distance(1, q) >= 0) continue;
    // Routing needs one swap component; name the first goal it strands.
    for (const Goal& g : in.goals) {
      if (graph.swap_distance(g.a, g.b) < 0) {
        throw UnreachableGoal("goal <q" + std::to_string(g.a) + ",q" + std::to_string(g.b) +
                              "> is unreachable: its states lie in different swap components");
      }
    }
    throw UnreachableGoal("swap graph is disconnected");
  }
}

// Random shortest swap path from a to b.
std::vector<QubitId> random_path(const ChipGraph& graph, QubitId a, QubitId b, Rng* rng) {
  std::vector<QubitId> path{a};
  QubitId cur = a;
  while (cur != b) {
    std::vector<QubitId> next;
    for (QubitId r : graph.neighbors(cur)) {
      if (graph.swap_distance(r, b) == graph.swap_distance(cur, b) - 1 &&
          graph.swap_distance(cur, r) == 1) {
        next.push_back(r);
      }
    }
    cur = next.size() == 1 || rng == nullptr ? next.front()
                                             : next[static_cast<size_t>(rng->below(next.size()))];
    path.push_back(cur);
  }
  return path;
}

// Moves the state on path.front() forward `forward` hops and the state on
// path.back() backward `backward` hops, then fires the goal PS gate on the
// meeting edge. Alternates the two walkers so both advance in parallel.
GateTask route_goal(Builder& b, const Chip& chip, const std::vector<QubitId>& path, size_t meet,
                    int goal_index, int not_before, bool sequential) {
  const size_t last = path.size() - 1;
  size_t fa = 0;
  size_t fb = last;
  int clock = not_before;
  while (fa < meet || fb > meet + 1) {
    if (fa < meet) {
      GateTask t = b.place(make_swap(chip, path[fa], path[fa + 1], 0), clock);
      if (sequential) clock = t.end();
      ++fa;
    }
    if (fb > meet + 1) {
      GateTask t = b.place(make_swap(chip, path[fb], path[fb - 1], 0), clock);
      if (sequential) clock = t.end();
      --fb;
    }
  }
  return b.place(make_ps(chip, path[meet], path[meet + 1], 0, goal_index), clock);
}

}  // namespace

Schedule solve_sequential_baseline(const Instance& in) {
  in.validate();
  const ChipGraph graph(in.chip);
  check_reachable(in, graph);
  const std::vector<StateId> placement = identity_placement(in);
  Builder b(in, graph, placement);
  const int eps = in.goal_count();
  for (int stage = 1; stage <= in.stages; ++stage) {
    for (int o = 0; o < eps; ++o) {
      const Goal& g = in.goals[static_cast<size_t>(o)];
      const std::vector<QubitId> path = graph.swap_path(b.pos(g.a), b.pos(g.b));
      // Hops 0..last; the meeting edge is the middle one.
      const size_t hops = path.size() - 1;
      const size_t meet = (hops - 1) / 2;
      route_goal(b, in.chip, path, meet, o + (stage - 1) * eps, b.horizon_end(), true);
    }
    if (stage == 1 && in.stages == 2) {
      const int window = b.horizon_end();
      for (StateId j = 1; j <= in.state_count(); ++j) {
        b.add(make_mix(in.chip, b.pos(j), j, window));
      }
    }
  }
  return finish(in, placement, std::move(b.tasks()));
}

namespace {

// High-degree states first, each onto the free qubit closest to its
// already placed goal partners; centrality and the seed break ties.
std::vector<StateId> greedy_placement(const Instance& in, const ChipGraph& graph, Rng& rng) {
  const int n = in.chip.qubit_count;
  std::vector<int> degree(static_cast<size_t>(n) + 1, 0);
  for (const Goal& g : in.goals) {
    ++degree[g.a];
    ++degree[g.b];
  }
  std::vector<int> spread(static_cast<size_t>(n) + 1, 0);
  for (QubitId q = 1; q <= n; ++q) {
    for (QubitId r = 1; r <= n; ++r) spread[q] += graph.swap_distance(q, r);
  }
  std::vector<StateId> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  rng.shuffle(order);
  std::stable_sort(order.begin(), order.end(),
                   [&](StateId x, StateId y) { return degree[x] > degree[y]; });

  std::vector<StateId> placement(static_cast<size_t>(n) + 1, 0);
  std::vector<QubitId> where(static_cast<size_t>(n) + 1, 0);
  for (StateId s : order) {
    if (degree[s] == 0) break;
    QubitId best = 0;
    long best_cost = std::numeric_limits<long>::max();
    std::uint64_t best_tie = 0;
    for (QubitId q = 1; q <= n; ++q) {
      if (placement[q] != 0) continue;
      long cost = 0;
      for (const Goal& g : in.goals) {
        if (!g.involves(s)) continue;
        const StateId other = g.a == s ? g.b : g.a;
        if (where[other] != 0) cost += graph.swaps_to_adjacent(q, where[other]);
      }
      cost = cost * 4096 + spread[q];
      const std::uint64_t tie = rng.next();
      if (cost < best_cost || (cost == best_cost && tie < best_tie)) {
        best = q;
        best_cost = cost;
        best_tie = tie;
      }
    }
    placement[best] = s;
    where[s] = best;
  }
  QubitId q = 1;
  for (StateId s = 1; s <= n; ++s) {
    if (where[s] != 0) continue;
    while (placement[q] != 0) ++q;
    placement[q] = s;
    where[s] = q;
  }
  return placement;
}

}  // namespace

Schedule solve_greedy(const Instance& in, std::uint64_t seed) {
  in.validate();
  const ChipGraph graph(in.chip);
  check_reachable(in, graph);
  Rng rng(seed);
  const int n = in.chip.qubit_count;
  const int eps = in.goal_count();
  const std::vector<StateId> placement =
      in.variant == Variant::kQccI ? greedy_placement(in, graph, rng) : identity_placement(in);
  Builder b(in, graph, placement);

  std::vector<std::uint64_t> tie(static_cast<size_t>(in.total_goal_count()));
  for (auto& t : tie) t = rng.next();
  std::vector<int> pending;
  for (int o = 0; o < eps; ++o) pending.push_back(o);
  std::vector<int> stage1_left(static_cast<size_t>(n) + 1, 0);
  for (const Goal& g : in.goals) {
    ++stage1_left[g.a];
    ++stage1_left[g.b];
  }
  std::vector<char> mixed(static_cast<size_t>(n) + 1, 0);
  std::vector<char> enqueued(static_cast<size_t>(eps), 0);

  auto mix_state = [&](StateId j) {
    b.place(make_mix(in.chip, b.pos(j), j, 0), 0);
    mixed[j] = 1;
  };

  while (!pending.empty()) {
    size_t pick = 0;
    for (size_t i = 1; i < pending.size(); ++i) {
      const Goal& gi = in.goal_at(pending[i]);
      const Goal& gp = in.goal_at(pending[pick]);
      const int di = graph.swaps_to_adjacent(b.pos(gi.a), b.pos(gi.b));
      const int dp = graph.swaps_to_adjacent(b.pos(gp.a), b.pos(gp.b));
      if (di < dp || (di == dp && tie[pending[i]] < tie[pending[pick]])) pick = i;
    }
    const int o = pending[pick];
    pending.erase(pending.begin() + static_cast<long>(pick));
    const Goal& g = in.goal_at(o);

    const std::vector<QubitId> path = random_path(graph, b.pos(g.a), b.pos(g.b), &rng);
    const size_t hops = path.size() - 1;
    Builder best = b;
    int best_end = std::numeric_limits<int>::max();
    std::uint64_t best_tie = 0;
    for (size_t meet = 0; meet < hops; ++meet) {
      Builder trial = b;
      const GateTask ps = route_goal(trial, in.chip, path, meet, o, 0, false);
      const std::uint64_t t = rng.next();
      if (ps.end() < best_end || (ps.end() == best_end && t < best_tie)) {
        best = std::move(trial);
        best_end = ps.end();
        best_tie = t;
      }
    }
    b = std::move(best);

    if (o < eps && in.stages == 2) {
      for (StateId s : {g.a, g.b}) {
        if (--stage1_left[s] == 0) mix_state(s);
      }
      for (int h = 0; h < eps; ++h) {
        const Goal& gh = in.goals[static_cast<size_t>(h)];
        if (!enqueued[h] && mixed[gh.a] && mixed[gh.b]) {
          enqueued[h] = 1;
          pending.push_back(h + eps);
        }
      }
    }
  }
  if (in.stages == 2) {
    for (StateId j = 1; j <= n; ++j) {
      if (!mixed[j]) mix_state(j);
    }
  }
  return finish(in, placement, std::move(b.tasks()));
}

std::vector<Incumbent> solve_anytime(const Instance& in, const AnytimeOptions& options,
                                     const IncumbentCallback& on_incumbent) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };
  std::vector<Incumbent> stream;
  auto offer = [&](Schedule s) {
    if (!stream.empty() && !(s.objective() < stream.back().schedule.objective())) return;
    if (!validate(in, s).valid) return;
    stream.push_back({elapsed(), std::move(s)});
    if (on_incumbent) on_incumbent(stream.back());
  };
  offer(solve_sequential_baseline(in));
  if (options.time_limit_s <= 0.0) return stream;
  for (long r = 0;; ++r) {
    if (options.max_restarts && r >= *options.max_restarts) break;
    if (elapsed() >= options.time_limit_s) break;
    offer(solve_greedy(in, Rng::derive(options.seed, static_cast<std::uint64_t>(r))));
  }
  return stream;
}

}  // namespace qcc
