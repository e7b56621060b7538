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

// Acceptance criteria. One PASS/FAIL line per criterion; exit status is
// the number of failures. Pass criterion numbers to run a subset.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "qcc/bench.hpp"
#include "qcc/bounds.hpp"
#include "qcc/cpsolver.hpp"
#include "qcc/hybrid.hpp"
#include "qcc/rng.hpp"
#include "qcc/router.hpp"

namespace {

using namespace qcc;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome worked_example() {
  const Instance in = testing::example_instance();
  const Schedule s = testing::example_schedule();
  const ValidationReport v = validate(in, s);
  if (!v.valid) return {false, "example rejected: " + v.summary()};
  if (s.makespan != 5) return {false, "example makespan " + std::to_string(s.makespan)};
  const SearchResult r = search(build_model(in, compute_bounds(in)), {10.0, -1});
  if (r.status != SearchStatus::kOptimal || !r.best || r.best->makespan != 5) {
    return {false, "cp: " + std::string(to_string(r.status)) + " makespan " +
                       (r.best ? std::to_string(r.best->makespan) : "none")};
  }
  const testing::OracleResult o = testing::brute_force_optimum(in, horizon_bound(in));
  if (!o.makespan || *o.makespan != 5) return {false, "oracle disagrees"};
  return {true, fmt("valid at 5; cp proved 5 optimal in %.2fs (%g nodes); oracle 5", r.seconds,
                    static_cast<double>(r.nodes))};
}

Outcome baseline_certificate() {
  const auto t0 = Clock::now();
  std::vector<Chip> chips = {build_preset_chip("rigetti-8"), build_preset_chip("rigetti-21")};
  for (int side = 2; side <= 5; ++side) {
    chips.push_back(build_grid_chip(side, GridColoring::kAlternating));
    chips.push_back(build_grid_chip(side, GridColoring::kAllBlue));
  }
  Rng rng(2024);
  int total = 0;
  int within = 0;
  int valid = 0;
  std::string first_bad;
  for (int k = 0; k < 600; ++k) {
    const Chip& chip = chips[static_cast<size_t>(k) % chips.size()];
    const int pairs = chip.qubit_count * (chip.qubit_count - 1) / 2;
    const int goals = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(8, pairs))));
    const Variant variant = static_cast<Variant>(k % 3);
    const int stages = 1 + (k / 3) % 2;
    const Instance in = generate_instance(chip, goals, stages, variant, rng.next());
    const Schedule s = solve_sequential_baseline(in);
    ++total;
    if (s.makespan <= horizon_bound(in)) {
      ++within;
    } else if (first_bad.empty()) {
      first_bad = in.name;
    }
    valid += validate(in, s).valid;
  }
  const double secs = since(t0);
  const bool pass = within == total && valid == total && secs < 60.0;
  std::string detail = std::to_string(within) + "/" + std::to_string(total) + " within the bound, " +
                       std::to_string(valid) + " valid, " + fmt("%.1fs", secs);
  if (!first_bad.empty()) detail += "; first over: " + first_bad;
  return {pass, detail};
}

// Every goal set of size 1..max over the pairs of n states, in a fixed order.
void goal_sets(int n, int max, const std::function<void(const std::vector<Goal>&)>& visit) {
  std::vector<Goal> pairs;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) pairs.push_back({a, b});
  }
  std::vector<Goal> chosen;
  std::function<void(size_t)> rec = [&](size_t from) {
    if (!chosen.empty()) visit(chosen);
    if (static_cast<int>(chosen.size()) == max) return;
    for (size_t i = from; i < pairs.size(); ++i) {
      chosen.push_back(pairs[i]);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
}

Instance make_instance(const Chip& chip, const std::vector<Goal>& goals, Variant variant, int stages) {
  Instance in;
  in.chip = chip;
  in.goals = goals;
  in.variant = variant;
  in.stages = stages;
  in.initial_mapping = variant == Variant::kQccI ? InitialMapping::kFree : InitialMapping::kIdentity;
  std::ostringstream name;
  name << chip.name << "_" << to_string(variant) << "_p" << stages;
  for (const Goal& g : goals) name << "_" << g.a << "-" << g.b;
  in.name = name.str();
  in.validate();
  return in;
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::vector<Instance> suite;
  for (GridColoring coloring : {GridColoring::kAllBlue, GridColoring::kAlternating}) {
    const Chip chip = build_grid_chip(2, coloring);
    goal_sets(4, 3, [&](const std::vector<Goal>& goals) {
      for (Variant v : {Variant::kQcc, Variant::kQccI, Variant::kQccX}) {
        for (int stages : {1, 2}) suite.push_back(make_instance(chip, goals, v, stages));
      }
    });
  }
  const size_t small = suite.size();
  // 3x3: every single goal, plus a seeded sample of goal pairs.
  for (GridColoring coloring : {GridColoring::kAllBlue, GridColoring::kAlternating}) {
    const Chip chip = build_grid_chip(3, coloring);
    std::vector<std::vector<Goal>> pairs_of_goals;
    goal_sets(9, 2, [&](const std::vector<Goal>& goals) {
      if (goals.size() == 1) {
        for (Variant v : {Variant::kQcc, Variant::kQccI, Variant::kQccX}) suite.push_back(make_instance(chip, goals, v, 1));
      } else {
        pairs_of_goals.push_back(goals);
      }
    });
    Rng rng(coloring == GridColoring::kAllBlue ? 31 : 32);
    rng.shuffle(pairs_of_goals);
    for (size_t k = 0; k < 20; ++k) {
      for (Variant v : {Variant::kQcc, Variant::kQccI, Variant::kQccX}) {
        suite.push_back(make_instance(chip, pairs_of_goals[k], v, 1));
      }
    }
  }
  int agree = 0;
  long worst_nodes = 0;
  std::string first_bad;
  for (const Instance& in : suite) {
    const testing::OracleResult o = testing::brute_force_optimum(in, horizon_bound(in));
    const SearchResult r = search(build_model(in, compute_bounds(in)), {std::numeric_limits<double>::infinity(), 1000000});
    worst_nodes = std::max(worst_nodes, r.nodes);
    const bool ok = r.status == SearchStatus::kOptimal && o.makespan && r.best && r.best->makespan == *o.makespan;
    agree += ok;
    if (!ok && first_bad.empty()) {
      first_bad = in.name + " (cp " + std::string(to_string(r.status)) + " " +
                  (r.best ? std::to_string(r.best->makespan) : "-") + ", oracle " +
                  (o.makespan ? std::to_string(*o.makespan) : "-") + ")";
    }
  }
  const int total = static_cast<int>(suite.size());
  std::string detail = std::to_string(agree) + "/" + std::to_string(total) + " optimal and equal to the oracle (" +
                       std::to_string(small) + " on 2x2, " + std::to_string(total - static_cast<int>(small)) +
                       " on 3x3); max " + std::to_string(worst_nodes) + " nodes; " + fmt("%.0fs", since(t0));
  if (!first_bad.empty()) detail += "; first miss: " + first_bad;
  return {agree == total, detail};
}

// Model verdict: the schedule maps onto the model and satisfies every
// constraint.
bool model_accepts(const Model& m, const Schedule& s) {
  try {
    return check_assignment(m, map_schedule(m, s)).empty();
  } catch (const ModelError&) {
    return false;
  }
}

// Sized to hold the schedule's swap replicas; the horizon stays the
// default so both sides judge the same window.
BoundSet fuzz_bounds(const Instance& in, const Schedule& s) {
  BoundSet b = bounds_covering(in, s);
  b.horizon = compute_bounds(in).horizon;
  return b;
}

Outcome fuzz_agreement() {
  const auto t0 = Clock::now();
  int checked = 0;
  int agree = 0;
  int valid_seen = 0;
  int mutants_rejected = 0;
  std::string first_bad;
  auto judge = [&](const Instance& in, const Schedule& s, const std::string& label) {
    const Model m = build_model(in, fuzz_bounds(in, s));
    ValidateOptions vo;
    vo.horizon = m.bounds.horizon;
    const ValidationReport v = validate(in, s, vo);
    const bool model_ok = model_accepts(m, s);
    ++checked;
    if (model_ok == v.valid) {
      ++agree;
    } else if (first_bad.empty()) {
      first_bad = in.name + " " + label + ": validator " + (v.valid ? "accepts" : "rejects") + ", model " +
                  (model_ok ? "accepts" : "rejects");
    }
    return v.valid;
  };
  for (std::uint64_t k = 0; k < 10000; ++k) {
    const Instance in = testing::random_instance(Rng::derive(77, k), 5);
    const Schedule s = testing::random_valid_schedule(in, Rng::derive(78, k));
    valid_seen += judge(in, s, "valid");
    std::string what;
    const Schedule bad = testing::mutate(in, s, Rng::derive(79, k), &what);
    mutants_rejected += !judge(in, bad, "mutant (" + what + ")");
  }
  std::string detail = std::to_string(agree) + "/" + std::to_string(checked) + " verdicts agree (" +
                       std::to_string(valid_seen) + " generated schedules valid, " +
                       std::to_string(mutants_rejected) + " mutants rejected); " + fmt("%.0fs", since(t0));
  if (!first_bad.empty()) detail += "; first disagreement: " + first_bad;
  return {agree == checked && valid_seen == 10000, detail};
}

Outcome hybrid_dominance() {
  const auto t0 = Clock::now();
  std::vector<SuiteSpec> specs;
  for (Variant v : {Variant::kQcc, Variant::kQccI, Variant::kQccX}) {
    for (int stages : {1, 2}) {
      SuiteSpec s;
      s.chip = "rigetti-8";
      s.goals = 4;
      s.variant = v;
      s.stages = stages;
      s.count = 3;
      s.seed = 500 + static_cast<std::uint64_t>(stages);
      specs.push_back(s);
      s.chip = "grid:3:alternating";
      s.goals = 3;
      s.count = 1;
      specs.push_back(s);
    }
    SuiteSpec big;
    big.chip = "rigetti-21";
    big.goals = 8;
    big.variant = v;
    big.count = 2;
    big.seed = 900;
    specs.push_back(big);
  }
  int runs = 0;
  int dominated = 0;
  int clean = 0;
  std::string first_bad;
  for (const SuiteSpec& spec : specs) {
    for (const Instance& in : generate_suite(spec)) {
      for (Engine e : {Engine::kHalf, Engine::kLast}) {
        RunOptions o;
        o.budget_s = 1.0;
        o.seed = 3;
        const RunReport r = run_engine(in, e, o);
        ++runs;
        const bool ok = r.solved() && r.handoff && r.stages.size() == 2 && r.stages[0].best &&
                        r.final_schedule->objective() <= r.stages[0].best->objective() && r.delta &&
                        *r.delta >= 0.0;
        dominated += ok;
        const auto problems = check_report(in, r);
        clean += problems.empty();
        if ((!ok || !problems.empty()) && first_bad.empty()) {
          first_bad = in.name + " " + std::string(to_string(e)) + (problems.empty() ? "" : ": " + problems[0]);
        }
      }
    }
  }
  std::string detail = std::to_string(dominated) + "/" + std::to_string(runs) + " runs end no worse than stage 1, " +
                       std::to_string(clean) + " reports re-check clean; " + fmt("%.0fs", since(t0));
  if (!first_bad.empty()) detail += "; first failure: " + first_bad;
  return {dominated == runs && clean == runs, detail};
}

// Independent of the validator: a gate on (u, v) and any task touching a
// neighbor of u or v must not overlap in time.
bool crosstalk_free(const Instance& in, const Schedule& s) {
  const ChipGraph g(in.chip);
  for (const GateTask& a : s.tasks) {
    if (!a.two_qubit()) continue;
    std::set<QubitId> ring;
    for (QubitId q : {a.u, a.v}) {
      for (QubitId w : g.neighbors(q)) ring.insert(w);
    }
    ring.erase(a.u);
    ring.erase(a.v);
    for (const GateTask& b : s.tasks) {
      if (&a == &b || b.kind == TaskKind::kInit) continue;
      if (b.touches(a.u) || b.touches(a.v)) continue;  // same-qubit conflicts are R1
      const bool near = ring.count(b.u) || (b.two_qubit() && ring.count(b.v));
      if (near && a.start < b.end() && b.start < a.end()) return false;
    }
  }
  return true;
}

Outcome crosstalk_property() {
  const auto t0 = Clock::now();
  int total = 0;
  int clean = 0;
  std::map<std::string, int> by_engine;
  std::string first_bad;
  auto check = [&](const Instance& in, const Schedule& s, const std::string& engine) {
    ++total;
    ++by_engine[engine];
    const ValidationReport v = validate(in, s, {std::max(s.total_span(), horizon_bound(in))});
    const bool ok = crosstalk_free(in, s) && !v.has("R2") && v.valid;
    clean += ok;
    if (!ok && first_bad.empty()) first_bad = in.name + " from " + engine;
  };
  Rng rng(606);
  for (int k = 0; total < 1000; ++k) {
    Instance in = testing::random_instance(rng.next(), 8);
    in.variant = Variant::kQccX;
    in.initial_mapping = InitialMapping::kIdentity;
    if (k % 10 == 0) {
      check(in, solve_sequential_baseline(in), "baseline");
    } else if (k % 10 == 1 && in.chip.qubit_count <= 9 && in.goal_count() <= 4) {
      const SearchResult r = search(build_model(in, compute_bounds(in)), {5.0, 20000});
      for (const Incumbent& inc : r.incumbents) {
        if (total < 1000) check(in, inc.schedule, "cp");
      }
    } else {
      check(in, solve_greedy(in, rng.next()), "greedy");
    }
  }
  std::string detail = std::to_string(clean) + "/" + std::to_string(total) + " QCC-X schedules crosstalk-free (";
  for (const auto& [engine, n] : by_engine) detail += engine + " " + std::to_string(n) + ", ";
  detail.resize(detail.size() - 2);
  detail += ")" + fmt("; %.0fs", since(t0));
  if (!first_bad.empty()) detail += "; first failure: " + first_bad;
  return {clean == total, detail};
}

bool stages_separated(const Instance& in, const Schedule& s, std::string* why) {
  const int n = in.state_count();
  std::vector<int> last_stage1(static_cast<size_t>(n) + 1, 0);
  std::vector<int> first_stage2(static_cast<size_t>(n) + 1, std::numeric_limits<int>::max());
  std::vector<int> mixes(static_cast<size_t>(n) + 1, 0);
  std::vector<const GateTask*> mix_of(static_cast<size_t>(n) + 1, nullptr);
  for (const GateTask& t : s.tasks) {
    if (t.kind == TaskKind::kMix) {
      ++mixes[t.state];
      mix_of[t.state] = &t;
    }
    if (t.kind != TaskKind::kPs || t.goal_index < 0) continue;
    const Goal& g = in.goal_at(t.goal_index);
    for (StateId q : {g.a, g.b}) {
      if (in.stage_of(t.goal_index) == 1) {
        last_stage1[q] = std::max(last_stage1[q], t.end());
      } else {
        first_stage2[q] = std::min(first_stage2[q], t.start);
      }
    }
  }
  for (StateId q = 1; q <= n; ++q) {
    if (mixes[q] != 1) {
      *why = "state " + std::to_string(q) + " mixed " + std::to_string(mixes[q]) + " times";
      return false;
    }
    const GateTask& m = *mix_of[q];
    if (m.start < last_stage1[q] || m.end() > first_stage2[q]) {
      *why = "mix of state " + std::to_string(q) + " at [" + std::to_string(m.start) + "," +
             std::to_string(m.end()) + ") outside (" + std::to_string(last_stage1[q]) + ", " +
             std::to_string(first_stage2[q]) + ")";
      return false;
    }
  }
  return true;
}

Outcome stage_separation() {
  const auto t0 = Clock::now();
  int total = 0;
  int clean = 0;
  std::map<std::string, int> by_engine;
  std::string first_bad;
  auto check = [&](const Instance& in, const Schedule& s, const std::string& engine) {
    ++total;
    ++by_engine[engine];
    std::string why;
    const bool ok = stages_separated(in, s, &why) && validate(in, s, {std::max(s.total_span(), horizon_bound(in))}).valid;
    clean += ok;
    if (!ok && first_bad.empty()) first_bad = in.name + " from " + engine + ": " + why;
  };
  Rng rng(707);
  for (int k = 0; total < 500; ++k) {
    Instance in = testing::random_instance(rng.next(), 8);
    in.stages = 2;
    if (k % 10 == 0) {
      check(in, solve_sequential_baseline(in), "baseline");
    } else if (k % 10 == 1 && in.chip.qubit_count <= 9 && in.goal_count() <= 3) {
      const SearchResult r = search(build_model(in, compute_bounds(in)), {5.0, 20000});
      if (r.best && total < 500) check(in, *r.best, "cp");
    } else {
      check(in, solve_greedy(in, rng.next()), "greedy");
    }
  }
  std::string detail = std::to_string(clean) + "/" + std::to_string(total) + " two-stage schedules separated (";
  for (const auto& [engine, n] : by_engine) detail += engine + " " + std::to_string(n) + ", ";
  detail.resize(detail.size() - 2);
  detail += ")" + fmt("; %.0fs", since(t0));
  if (!first_bad.empty()) detail += "; first failure: " + first_bad;
  return {clean == total, detail};
}

Outcome scoring_fidelity() {
  struct Case {
    bool is_score;
    int a;
    int b;
    double expect;
  };
  // Hand-computed.
  const Case cases[] = {
      {true, 20, 25, 0.8},          {true, 20, 20, 1.0},        {true, 5, 10, 0.5},
      {true, 3, 4, 0.75},           {true, 9, 12, 0.75},        {false, 10, 9, 10.0},
      {false, 10, 10, 0.0},         {false, 26, 27, -100.0 / 26.0}, {false, 20, 16, 20.0},
      {false, 8, 6, 25.0},
  };
  int exact = 0;
  std::string first_bad;
  for (const Case& c : cases) {
    const double got = c.is_score ? score(c.a, c.b) : improvement_delta(c.a, c.b);
    if (got == c.expect) {
      ++exact;
    } else if (first_bad.empty()) {
      first_bad = fmt("%g vs %g", got, c.expect);
    }
  }
  std::string detail = std::to_string(exact) + "/10 cases exact (one negative delta)";
  if (!first_bad.empty()) detail += "; first mismatch: " + first_bad;
  return {exact == 10, detail};
}

Outcome table_echo() {
  const auto t0 = Clock::now();
  SuiteSpec spec;
  spec.chip = "rigetti-8";
  spec.goals = 8;
  spec.variant = Variant::kQccX;
  spec.stages = 1;
  spec.count = 20;
  spec.seed = 2019;
  const std::vector<Instance> suite = generate_suite(spec);
  MatrixOptions o;
  o.engines = {Engine::kRouter, Engine::kHalf};
  o.budget_s = 10.0;
  o.seed = 1;
  o.run_dir = std::filesystem::temp_directory_path() / "qcc_acceptance_table";
  std::filesystem::remove_all(o.run_dir);
  const MatrixRun run = run_matrix(suite, o);
  const ResultsTable t = build_table(run.instances, run.reports, run.engines);
  const TableCell& router = t.cells[0][0];
  const TableCell& half = t.cells[1][0];
  if (!router.score || !half.score) return {false, "an engine solved nothing"};
  const bool pass = *half.score >= *router.score;
  return {pass, fmt("half %.4f vs router %.4f", *half.score, *router.score) + " over " +
                    std::to_string(half.solved) + "/" + std::to_string(router.solved) + " solved; half delta " +
                    fmt("%.1f%%", half.delta.value_or(0.0)) + " (" + std::to_string(half.improved) +
                    " improved); " + fmt("%.0fs", since(t0))};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"worked example fixture", worked_example},
      {"baseline within horizon bound", baseline_certificate},
      {"cp matches brute-force oracle", oracle_equivalence},
      {"model and validator agree under fuzzing", fuzz_agreement},
      {"hybrids never end worse than stage 1", hybrid_dominance},
      {"crosstalk exclusion holds", crosstalk_property},
      {"mixing separates the two stages", stage_separation},
      {"score and delta fixtures", scoring_fidelity},
      {"half at least matches router on QCC-X", table_echo},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failures = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    const int number = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(number)) continue;
    Outcome out;
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    failures += !out.pass;
    std::printf("%s criterion %d (%s): %s\n", out.pass ? "PASS" : "FAIL", number, criteria[k].first,
                out.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
