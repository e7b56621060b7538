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

#include "qcc/hybrid.hpp"

#include <chrono>
#include <cmath>

#include "json_util.hpp"
#include "qcc/bounds.hpp"
#include "qcc/cpsolver.hpp"
#include "qcc/rng.hpp"
#include "qcc/router.hpp"

namespace qcc {

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::kRouter:
      return "router";
    case Engine::kCp:
      return "cp";
    case Engine::kHalf:
      return "half";
    case Engine::kLast:
      return "last";
  }
  return "?";
}

Engine parse_engine(std::string_view text) {
  if (text == "router") return Engine::kRouter;
  if (text == "cp") return Engine::kCp;
  if (text == "half") return Engine::kHalf;
  if (text == "last") return Engine::kLast;
  throw std::invalid_argument("unknown engine \"" + std::string(text) +
                              "\" (expected router, cp, half or last)");
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

RunReport blank_report(const Instance& in, std::string policy, const RunOptions& options) {
  if (!(options.budget_s > 0.0)) throw std::invalid_argument("budget must be positive");
  RunReport r;
  r.instance = in.name;
  r.fingerprint = instance_fingerprint(in);
  r.policy = std::move(policy);
  r.budget_s = options.budget_s;
  r.seed = options.seed;
  r.node_budget = options.node_budget;
  r.restart_budget = options.restart_budget;
  return r;
}

StageReport router_stage(const Instance& in, double budget, const RunOptions& options,
                         double offset) {
  StageReport s;
  s.engine = "router";
  s.seed = Rng::derive(options.seed, 1);
  s.started_s = offset;
  s.budget_s = budget;
  AnytimeOptions ao;
  ao.time_limit_s = budget;
  ao.seed = s.seed;
  ao.max_restarts = options.restart_budget;
  const std::vector<Incumbent> stream = solve_anytime(in, ao);
  for (const Incumbent& inc : stream) {
    s.trace.push_back({offset + inc.seconds, inc.schedule.makespan, inc.schedule.swap_count});
    s.incumbents.push_back(inc.schedule);
  }
  if (!stream.empty()) s.best = stream.back().schedule;
  s.status = "done";
  s.nodes = static_cast<long>(stream.size());
  return s;
}

StageReport cp_stage(const Instance& in, const std::optional<Schedule>& warm, double budget,
                     const RunOptions& options, double offset) {
  StageReport s;
  s.engine = "cp";
  s.seed = Rng::derive(options.seed, 2);
  s.started_s = offset;
  s.budget_s = budget;
  // A warm start may use more swaps per gate, or run longer, than the
  // default bounds allow; the model is widened to hold it.
  Model model = build_model(in, warm ? bounds_covering(in, *warm) : compute_bounds(in));
  if (warm) warm_start(model, *warm);
  SearchLimits limits;
  limits.time_limit_s = std::max(budget, 0.0);
  if (options.node_budget) limits.node_limit = *options.node_budget;
  const SearchResult result = search(model, limits);
  for (const Incumbent& inc : result.incumbents) {
    s.trace.push_back({offset + inc.seconds, inc.schedule.makespan, inc.schedule.swap_count});
    s.incumbents.push_back(inc.schedule);
  }
  s.best = result.best;
  s.status = std::string(to_string(result.status));
  s.nodes = result.nodes;
  return s;
}

void finish_hybrid(RunReport& r, const Schedule& handoff, const StageReport& cp) {
  r.handoff = handoff;
  r.final_schedule = cp.best ? *cp.best : handoff;
  if (r.final_schedule->objective() > handoff.objective()) {
    throw std::logic_error("warm-started search returned a worse schedule");
  }
  r.delta = handoff.makespan > 0 ? improvement_delta(handoff.makespan, r.final_schedule->makespan)
                                 : 0.0;
}

}  // namespace

RunReport run_half(const Instance& in, const RunOptions& options) {
  RunReport r = blank_report(in, "half", options);
  const auto t0 = Clock::now();
  StageReport first = router_stage(in, options.budget_s / 2.0, options, 0.0);
  if (!first.best) throw std::logic_error("router stage produced no schedule");
  const double switch_at = since(t0);
  StageReport second = cp_stage(in, first.best, options.budget_s - switch_at, options, switch_at);
  const Schedule handoff = *first.best;
  r.stages = {std::move(first), std::move(second)};
  finish_hybrid(r, handoff, r.stages.back());
  return r;
}

RunReport run_last(const Instance& in, const RunOptions& options) {
  RunReport r = blank_report(in, "last", options);
  StageReport first = router_stage(in, options.budget_s, options, 0.0);
  if (!first.best) throw std::logic_error("router stage produced no schedule");
  const double t_last = first.trace.back().seconds;
  StageReport second = cp_stage(in, first.best, options.budget_s - t_last, options, t_last);
  const Schedule handoff = *first.best;
  r.stages = {std::move(first), std::move(second)};
  finish_hybrid(r, handoff, r.stages.back());
  return r;
}

RunReport run_standalone(const Instance& in, Engine engine, const RunOptions& options) {
  if (engine != Engine::kRouter && engine != Engine::kCp) {
    throw std::invalid_argument("run_standalone takes the router or cp engine");
  }
  RunReport r = blank_report(in, std::string(to_string(engine)), options);
  StageReport s = engine == Engine::kRouter ? router_stage(in, options.budget_s, options, 0.0)
                                            : cp_stage(in, std::nullopt, options.budget_s, options, 0.0);
  r.final_schedule = s.best;
  r.stages = {std::move(s)};
  return r;
}

RunReport run_engine(const Instance& in, Engine engine, const RunOptions& options) {
  switch (engine) {
    case Engine::kHalf:
      return run_half(in, options);
    case Engine::kLast:
      return run_last(in, options);
    default:
      return run_standalone(in, engine, options);
  }
}

// ---------------------------------------------------------------------------
// Report files.

namespace {

using nlohmann::json;

json schedule_json(const std::optional<Schedule>& s) {
  if (!s) return nullptr;
  return json::parse(schedule_to_json(*s));
}

std::optional<Schedule> schedule_of(const json& doc, const char* name) {
  if (!doc.contains(name) || doc.at(name).is_null()) return std::nullopt;
  return schedule_from_json(doc.at(name).dump());
}

// Seeds are 64-bit; JSON readers commonly keep 53 bits, so they travel as
// decimal strings.
std::uint64_t seed_of(const json& doc) {
  const std::string text = detail::field<std::string>(doc, "seed");
  try {
    size_t used = 0;
    const std::uint64_t v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("field 'seed': expected a decimal integer string");
  }
}

}  // namespace

std::string report_to_json(const RunReport& r) {
  json stages = json::array();
  for (const StageReport& s : r.stages) {
    json trace = json::array();
    for (const TracePoint& p : s.trace) trace.push_back({p.seconds, p.makespan, p.swaps});
    json incumbents = json::array();
    for (const Schedule& inc : s.incumbents) incumbents.push_back(json::parse(schedule_to_json(inc)));
    stages.push_back({{"engine", s.engine},
                      {"seed", std::to_string(s.seed)},
                      {"started_s", s.started_s},
                      {"budget_s", s.budget_s},
                      {"status", s.status},
                      {"nodes", s.nodes},
                      {"trace", trace},
                      {"incumbents", incumbents},
                      {"best", schedule_json(s.best)}});
  }
  json doc = {{"format", "qcc-run-report"},
              {"version", 1},
              {"instance", r.instance},
              {"fingerprint", r.fingerprint},
              {"policy", r.policy},
              {"budget_s", r.budget_s},
              {"seed", std::to_string(r.seed)},
              {"node_budget", r.node_budget ? json(*r.node_budget) : json(nullptr)},
              {"restart_budget", r.restart_budget ? json(*r.restart_budget) : json(nullptr)},
              {"solved", r.solved()},
              {"stages", stages},
              {"handoff", schedule_json(r.handoff)},
              {"final", schedule_json(r.final_schedule)}};
  doc["delta"] = r.delta ? json(*r.delta) : json(nullptr);
  doc["error"] = r.error ? json(*r.error) : json(nullptr);
  return doc.dump(2) + "\n";
}

RunReport report_from_json(std::string_view text) {
  const json doc = detail::parse_document(text);
  RunReport r;
  r.instance = detail::field<std::string>(doc, "instance");
  r.fingerprint = detail::field<std::string>(doc, "fingerprint");
  r.policy = detail::field<std::string>(doc, "policy");
  r.budget_s = detail::field<double>(doc, "budget_s");
  r.seed = seed_of(doc);
  for (const char* name : {"node_budget", "restart_budget"}) {
    if (!doc.contains(name) || doc.at(name).is_null()) continue;
    (std::string_view(name) == "node_budget" ? r.node_budget : r.restart_budget) =
        detail::field<long>(doc, name);
  }
  for (const json& s : detail::array_field(doc, "stages")) {
    StageReport st;
    st.engine = detail::field<std::string>(s, "engine");
    st.seed = seed_of(s);
    st.started_s = detail::field<double>(s, "started_s");
    st.budget_s = detail::field<double>(s, "budget_s");
    st.status = detail::field<std::string>(s, "status");
    st.nodes = detail::field<long>(s, "nodes");
    for (const json& p : detail::array_field(s, "trace")) {
      if (!p.is_array() || p.size() != 3) throw ParseError("field 'trace': expected [t, makespan, swaps]");
      st.trace.push_back({p[0].get<double>(), p[1].get<int>(), p[2].get<int>()});
    }
    if (s.contains("incumbents")) {
      for (const json& inc : detail::array_field(s, "incumbents")) {
        st.incumbents.push_back(schedule_from_json(inc.dump()));
      }
    }
    st.best = schedule_of(s, "best");
    r.stages.push_back(std::move(st));
  }
  r.handoff = schedule_of(doc, "handoff");
  r.final_schedule = schedule_of(doc, "final");
  if (doc.contains("delta") && !doc.at("delta").is_null()) r.delta = detail::field<double>(doc, "delta");
  if (doc.contains("error") && !doc.at("error").is_null()) r.error = detail::field<std::string>(doc, "error");
  return r;
}

std::vector<std::string> check_report(const Instance& in, const RunReport& r) {
  std::vector<std::string> problems;
  if (r.fingerprint != instance_fingerprint(in)) problems.push_back("fingerprint mismatch");
  auto check = [&](const std::optional<Schedule>& s, const std::string& what) {
    if (!s) return;
    const ValidationReport v = validate(in, *s, {s->total_span()});
    // Warm starts may legitimately run past the default horizon; everything
    // else must hold.
    if (!v.valid) problems.push_back(what + " is invalid: " + v.summary());
  };
  for (size_t i = 0; i < r.stages.size(); ++i) {
    const StageReport& s = r.stages[i];
    const std::string name = "stage " + std::to_string(i + 1) + " (" + s.engine + ")";
    for (size_t k = 1; k < s.trace.size(); ++k) {
      const Objective a{s.trace[k - 1].makespan, s.trace[k - 1].swaps};
      const Objective b{s.trace[k].makespan, s.trace[k].swaps};
      if (!(b < a)) problems.push_back(name + " trace does not strictly improve");
      if (s.trace[k].seconds < s.trace[k - 1].seconds) {
        problems.push_back(name + " trace time goes backwards");
      }
    }
    if (s.incumbents.size() != s.trace.size()) {
      problems.push_back(name + " has " + std::to_string(s.incumbents.size()) + " incumbents for " +
                         std::to_string(s.trace.size()) + " trace points");
    } else {
      for (size_t k = 0; k < s.trace.size(); ++k) {
        const std::string what = name + " incumbent " + std::to_string(k + 1);
        check(s.incumbents[k], what);
        if (s.incumbents[k].objective() != Objective{s.trace[k].makespan, s.trace[k].swaps}) {
          problems.push_back(what + " disagrees with its trace point");
        }
      }
    }
    check(s.best, name + " best");
    if (s.best && !s.trace.empty() &&
        (s.trace.back().makespan != s.best->makespan || s.trace.back().swaps != s.best->swap_count)) {
      problems.push_back(name + " best disagrees with its trace");
    }
  }
  check(r.handoff, "handoff");
  check(r.final_schedule, "final schedule");
  if (r.handoff && r.final_schedule) {
    if (r.final_schedule->objective() > r.handoff->objective()) {
      problems.push_back("final schedule is worse than the handoff");
    }
    // The delta must follow from the traces alone.
    if (r.stages.size() != 2 || r.stages[0].trace.empty()) {
      problems.push_back("hybrid report needs two stages and a stage-1 trace");
    } else {
      const int before = r.stages[0].trace.back().makespan;
      const int after = r.stages[1].trace.empty() ? before : r.stages[1].trace.back().makespan;
      const double expect = before > 0 ? improvement_delta(before, after) : 0.0;
      if (!r.delta || std::abs(*r.delta - expect) > 1e-9) problems.push_back("delta does not recompute");
    }
  }
  return problems;
}

}  // namespace qcc
