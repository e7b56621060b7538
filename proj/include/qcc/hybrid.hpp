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

// Budgeted pipelines: the router and the CP search alone, and the two
// warm-start hybrids.
//
//   half  router for budget/2, then CP warm-started for the rest
//   last  router for the whole budget; CP then gets budget - t_last, where
//         t_last is when the router found its final incumbent. This is a
//         two-pass, best-case estimate of stopping the router right there.

#ifndef QCC_HYBRID_HPP_
#define QCC_HYBRID_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcc/instance.hpp"
#include "qcc/schedule.hpp"

namespace qcc {

enum class Engine { kRouter, kCp, kHalf, kLast };

std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view text);

struct RunOptions {
  double budget_s = 10.0;
  std::uint64_t seed = 0;
  // Reproducible mode: caps CP nodes and router restarts on top of the
  // wall clock.
  std::optional<long> node_budget;
  std::optional<long> restart_budget;
};

struct TracePoint {
  double seconds = 0.0;
  int makespan = 0;
  int swaps = 0;
};

struct StageReport {
  std::string engine;  // "router" or "cp"
  std::uint64_t seed = 0;
  double started_s = 0.0;
  double budget_s = 0.0;
  // Seconds are measured from the start of the run.
  std::vector<TracePoint> trace;
  // The schedule behind each trace point.
  std::vector<Schedule> incumbents;
  std::optional<Schedule> best;
  std::string status;  // cp: optimal, infeasible or timeout; router: done
  long nodes = 0;
};

struct RunReport {
  std::string instance;
  std::string fingerprint;
  std::string policy;
  double budget_s = 0.0;
  std::uint64_t seed = 0;
  std::optional<long> node_budget;
  std::optional<long> restart_budget;
  std::vector<StageReport> stages;
  std::optional<Schedule> handoff;
  std::optional<Schedule> final_schedule;
  // Hybrids only: percentage improvement of the final makespan over the
  // handoff.
  std::optional<double> delta;
  // Set when the run threw; the matrix records it and moves on.
  std::optional<std::string> error;

  bool solved() const { return final_schedule.has_value(); }
};

RunReport run_half(const Instance& instance, const RunOptions& options);
RunReport run_last(const Instance& instance, const RunOptions& options);
// engine must be kRouter or kCp. CP starts cold with the default bounds.
RunReport run_standalone(const Instance& instance, Engine engine, const RunOptions& options);
RunReport run_engine(const Instance& instance, Engine engine, const RunOptions& options);

std::string report_to_json(const RunReport& report);
RunReport report_from_json(std::string_view text);

// Problems with a stored report: incumbents that fail validation, traces
// that do not improve, a delta that does not recompute.
std::vector<std::string> check_report(const Instance& instance, const RunReport& report);

}  // namespace qcc

#endif  // QCC_HYBRID_HPP_
