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

// Instance suites, the benchmark matrix and its score tables, and Gantt
// renderings of schedules.

#ifndef QCC_BENCH_HPP_
#define QCC_BENCH_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcc/hybrid.hpp"
#include "qcc/instance.hpp"
#include "qcc/schedule.hpp"

namespace qcc {

// "rigetti-8", "rigetti-21", or "grid:S[:alternating|all-blue]".
Chip chip_from_spec(std::string_view spec);

// Goal count for a fraction of all state pairs, at least one.
int goals_for_density(const Chip& chip, double density);

struct SuiteSpec {
  std::string chip = "rigetti-8";
  // Exactly one of goals and density.
  std::optional<int> goals;
  std::optional<double> density;
  Variant variant = Variant::kQcc;
  int stages = 1;
  int count = 1;
  std::uint64_t seed = 0;
};

// Instance k uses seed Rng::derive(spec.seed, k) and is named
// <chip>_g<G>_p<stages>_<variant>_<k>.
std::vector<Instance> generate_suite(const SuiteSpec& spec);

// One <name>.json per instance.
void write_suite(const std::vector<Instance>& suite, const std::filesystem::path& dir);
// Every *.json in dir, ordered by file name. Throws std::invalid_argument
// when there is none.
std::vector<Instance> read_suite(const std::filesystem::path& dir);

struct MatrixOptions {
  std::vector<Engine> engines = {Engine::kRouter, Engine::kCp, Engine::kHalf, Engine::kLast};
  double budget_s = 2.0;
  // Per chip size (qubit count); falls back to budget_s.
  std::map<int, double> budget_by_qubits;
  std::optional<long> node_budget;
  std::optional<long> restart_budget;
  std::uint64_t seed = 0;
  std::filesystem::path run_dir;
  int jobs = 1;
  std::function<void(const std::string&)> progress;

  double budget_for(const Instance& instance) const;
};

// <run_dir>/<instance>__<engine>.json
std::filesystem::path report_path(const std::filesystem::path& run_dir, const Instance& instance,
                                  Engine engine);

struct MatrixRun {
  std::vector<Instance> instances;
  std::vector<Engine> engines;
  // reports[i][e] for instance i and engine e.
  std::vector<std::vector<RunReport>> reports;
  int reused = 0;
};

// Runs every (instance, engine) pair without a matching stored report.
// A stored report is reused when its fingerprint, policy, budget, seed,
// node budget and restart budget match. A run that throws is stored with its error.
MatrixRun run_matrix(const std::vector<Instance>& suite, const MatrixOptions& options);

struct TableCell {
  int instances = 0;
  int solved = 0;
  // Average score over solved instances.
  std::optional<double> score;
  // Hybrids: average delta over solved instances, and how many improved.
  std::optional<double> delta;
  int improved = 0;
};

struct ResultsTable {
  std::vector<std::string> classes;  // "<chip> <variant> P<stages>"
  std::vector<std::string> engines;
  // cells[e][c]
  std::vector<std::vector<TableCell>> cells;
};

std::string problem_class(const Instance& instance);

// Pure fold over the reports. Best-known makespan of an instance is the
// minimum over every report in the matrix.
ResultsTable build_table(const std::vector<Instance>& instances,
                         const std::vector<std::vector<RunReport>>& reports,
                         const std::vector<Engine>& engines);

std::string table_to_text(const ResultsTable& table);
std::string table_to_json(const ResultsTable& table);

// Gantt charts.

struct GanttBlock {
  // One row for mix and init, two for gates, the neighbor rows for blocked.
  std::vector<QubitId> rows;
  int start = 0;
  int end = 0;
  // swap, ps-blue, ps-red, mix, init or blocked
  std::string kind;
  int task = -1;
};

// Task blocks in schedule order, then blocked regions (QCC-X) in the same
// order. Throws std::invalid_argument when the schedule does not validate.
std::vector<GanttBlock> gantt_blocks(const Instance& instance, const Schedule& schedule);
std::string gantt_text(const Instance& instance, const Schedule& schedule);
std::string gantt_svg(const Instance& instance, const Schedule& schedule);

}  // namespace qcc

#endif  // QCC_BENCH_HPP_
