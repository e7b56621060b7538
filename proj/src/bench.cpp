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

#include "qcc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qcc/rng.hpp"

namespace qcc {

namespace fs = std::filesystem;

Chip chip_from_spec(std::string_view spec) {
  if (spec.substr(0, 5) != "grid:") return build_preset_chip(spec);
  std::string_view rest = spec.substr(5);
  GridColoring coloring = GridColoring::kAlternating;
  if (const size_t colon = rest.find(':'); colon != std::string_view::npos) {
    const std::string_view name = rest.substr(colon + 1);
    if (name == "all-blue") {
      coloring = GridColoring::kAllBlue;
    } else if (name != "alternating") {
      throw std::invalid_argument("unknown grid coloring \"" + std::string(name) + "\"");
    }
    rest = rest.substr(0, colon);
  }
  int side = 0;
  try {
    size_t used = 0;
    side = std::stoi(std::string(rest), &used);
    if (used != rest.size()) throw std::invalid_argument("trailing text");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad grid side in \"" + std::string(spec) + "\"");
  }
  return build_grid_chip(side, coloring);
}

int goals_for_density(const Chip& chip, double density) {
  if (!(density > 0.0 && density <= 1.0)) {
    throw std::invalid_argument("goal density must lie in (0, 1]");
  }
  const long pairs = 1L * chip.qubit_count * (chip.qubit_count - 1) / 2;
  return static_cast<int>(std::max(1L, std::lround(density * static_cast<double>(pairs))));
}

std::vector<Instance> generate_suite(const SuiteSpec& spec) {
  if (spec.goals.has_value() == spec.density.has_value()) {
    throw std::invalid_argument("give exactly one of a goal count and a goal density");
  }
  if (spec.count < 1) throw std::invalid_argument("suite count must be positive");
  const Chip chip = chip_from_spec(spec.chip);
  const int goals = spec.goals ? *spec.goals : goals_for_density(chip, *spec.density);
  std::vector<Instance> suite;
  const int width = static_cast<int>(std::to_string(spec.count - 1).size());
  for (int k = 0; k < spec.count; ++k) {
    Instance in = generate_instance(chip, goals, spec.stages, spec.variant,
                                    Rng::derive(spec.seed, static_cast<std::uint64_t>(k)));
    std::string index = std::to_string(k);
    index.insert(0, static_cast<size_t>(width) - index.size(), '0');
    in.name = chip.name + "_g" + std::to_string(goals) + "_p" + std::to_string(spec.stages) + "_" +
              std::string(to_string(spec.variant)) + "_" + index;
    suite.push_back(std::move(in));
  }
  return suite;
}

void write_suite(const std::vector<Instance>& suite, const fs::path& dir) {
  fs::create_directories(dir);
  for (const Instance& in : suite) write_instance(in, dir / (in.name + ".json"));
}

std::vector<Instance> read_suite(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::invalid_argument("no suite directory " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::invalid_argument("empty suite " + dir.string());
  std::vector<Instance> suite;
  for (const fs::path& f : files) suite.push_back(read_instance(f));
  return suite;
}

double MatrixOptions::budget_for(const Instance& instance) const {
  const auto it = budget_by_qubits.find(instance.chip.qubit_count);
  return it == budget_by_qubits.end() ? budget_s : it->second;
}

fs::path report_path(const fs::path& run_dir, const Instance& instance, Engine engine) {
  return run_dir / (instance.name + "__" + std::string(to_string(engine)) + ".json");
}

namespace {

std::optional<RunReport> stored_report(const fs::path& path, const Instance& in, Engine engine,
                                       const MatrixOptions& options) {
  if (!fs::exists(path)) return std::nullopt;
  RunReport r;
  try {
    r = report_from_json(read_text_file(path));
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (r.fingerprint != instance_fingerprint(in) || r.policy != to_string(engine) ||
      r.budget_s != options.budget_for(in) || r.seed != options.seed ||
      r.node_budget != options.node_budget || r.restart_budget != options.restart_budget) {
    return std::nullopt;
  }
  return r;
}

}  // namespace

MatrixRun run_matrix(const std::vector<Instance>& suite, const MatrixOptions& options) {
  if (suite.empty()) throw std::invalid_argument("empty suite");
  if (options.engines.empty()) throw std::invalid_argument("no engines");
  if (options.run_dir.empty()) throw std::invalid_argument("no run directory");
  fs::create_directories(options.run_dir);

  MatrixRun run;
  run.instances = suite;
  run.engines = options.engines;
  const size_t ne = options.engines.size();
  run.reports.assign(suite.size(), std::vector<RunReport>(ne));

  std::atomic<size_t> next{0};
  std::atomic<int> reused{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (size_t job = next++; job < suite.size() * ne; job = next++) {
      const Instance& in = suite[job / ne];
      const Engine engine = options.engines[job % ne];
      const fs::path path = report_path(options.run_dir, in, engine);
      std::string note;
      if (auto old = stored_report(path, in, engine, options)) {
        run.reports[job / ne][job % ne] = std::move(*old);
        ++reused;
        note = "reused";
      } else {
        RunOptions ro;
        ro.budget_s = options.budget_for(in);
        ro.seed = options.seed;
        ro.node_budget = options.node_budget;
        ro.restart_budget = options.restart_budget;
        RunReport r;
        try {
          r = run_engine(in, engine, ro);
        } catch (const std::exception& e) {
          r = RunReport{};
          r.instance = in.name;
          r.fingerprint = instance_fingerprint(in);
          r.policy = std::string(to_string(engine));
          r.budget_s = ro.budget_s;
          r.seed = ro.seed;
          r.node_budget = ro.node_budget;
          r.restart_budget = ro.restart_budget;
          r.error = e.what();
        }
        write_text_file(path, report_to_json(r));
        note = r.error ? "error: " + *r.error
                       : r.solved() ? "makespan " + std::to_string(r.final_schedule->makespan)
                                    : "unsolved";
        run.reports[job / ne][job % ne] = std::move(r);
      }
      if (options.progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        options.progress(in.name + " " + std::string(to_string(engine)) + ": " + note);
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(suite.size() * ne)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  run.reused = reused;
  return run;
}

std::string problem_class(const Instance& instance) {
  return instance.chip.name + " " + std::string(to_string(instance.variant)) + " P" +
         std::to_string(instance.stages);
}

ResultsTable build_table(const std::vector<Instance>& instances,
                         const std::vector<std::vector<RunReport>>& reports,
                         const std::vector<Engine>& engines) {
  if (reports.size() != instances.size()) throw std::invalid_argument("one report row per instance");
  ResultsTable table;
  for (Engine e : engines) table.engines.emplace_back(to_string(e));
  std::vector<int> class_of;
  for (const Instance& in : instances) {
    const std::string c = problem_class(in);
    auto it = std::find(table.classes.begin(), table.classes.end(), c);
    if (it == table.classes.end()) it = table.classes.insert(table.classes.end(), c);
    class_of.push_back(static_cast<int>(it - table.classes.begin()));
  }
  const size_t nc = table.classes.size();
  table.cells.assign(engines.size(), std::vector<TableCell>(nc));
  std::vector<std::vector<double>> score_sum(engines.size(), std::vector<double>(nc, 0.0));
  std::vector<std::vector<double>> delta_sum(engines.size(), std::vector<double>(nc, 0.0));
  std::vector<std::vector<int>> delta_n(engines.size(), std::vector<int>(nc, 0));

  for (size_t i = 0; i < instances.size(); ++i) {
    if (reports[i].size() != engines.size()) throw std::invalid_argument("one report per engine");
    std::optional<int> best;
    for (const RunReport& r : reports[i]) {
      if (r.solved() && (!best || r.final_schedule->makespan < *best)) best = r.final_schedule->makespan;
    }
    const size_t c = static_cast<size_t>(class_of[i]);
    for (size_t e = 0; e < engines.size(); ++e) {
      const RunReport& r = reports[i][e];
      TableCell& cell = table.cells[e][c];
      ++cell.instances;
      if (!r.solved()) continue;
      ++cell.solved;
      const int m = r.final_schedule->makespan;
      score_sum[e][c] += m == 0 ? 1.0 : score(*best, m);
      if (r.delta) {
        delta_sum[e][c] += *r.delta;
        ++delta_n[e][c];
        if (*r.delta > 0.0) ++cell.improved;
      }
    }
  }
  for (size_t e = 0; e < engines.size(); ++e) {
    for (size_t c = 0; c < nc; ++c) {
      TableCell& cell = table.cells[e][c];
      if (cell.solved > 0) cell.score = score_sum[e][c] / cell.solved;
      if (delta_n[e][c] > 0) cell.delta = delta_sum[e][c] / delta_n[e][c];
    }
  }
  return table;
}

namespace {

std::string format_cell(const TableCell& cell) {
  char buf[64];
  if (!cell.score) return "-";
  std::string text;
  std::snprintf(buf, sizeof buf, "%.2f", *cell.score);
  text = buf;
  if (cell.solved < cell.instances) text += " (" + std::to_string(cell.solved) + ")";
  if (cell.delta) {
    std::snprintf(buf, sizeof buf, "  %.1f%% (%d)", *cell.delta, cell.improved);
    text += buf;
  }
  return text;
}

}  // namespace

std::string table_to_text(const ResultsTable& table) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"engine"};
  header.insert(header.end(), table.classes.begin(), table.classes.end());
  rows.push_back(header);
  for (size_t e = 0; e < table.engines.size(); ++e) {
    std::vector<std::string> row = {table.engines[e]};
    for (const TableCell& cell : table.cells[e]) row.push_back(format_cell(cell));
    rows.push_back(row);
  }
  std::vector<size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (size_t k = 0; k < row.size(); ++k) {
      out << row[k];
      if (k + 1 < row.size()) out << std::string(width[k] - row[k].size() + 2, ' ');
    }
    out << "\n";
  }
  return out.str();
}

std::string table_to_json(const ResultsTable& table) {
  using nlohmann::json;
  json rows = json::array();
  for (size_t e = 0; e < table.engines.size(); ++e) {
    for (size_t c = 0; c < table.classes.size(); ++c) {
      const TableCell& cell = table.cells[e][c];
      rows.push_back({{"engine", table.engines[e]},
                      {"class", table.classes[c]},
                      {"instances", cell.instances},
                      {"solved", cell.solved},
                      {"score", cell.score ? json(*cell.score) : json(nullptr)},
                      {"delta", cell.delta ? json(*cell.delta) : json(nullptr)},
                      {"improved", cell.improved}});
    }
  }
  return json({{"classes", table.classes}, {"engines", table.engines}, {"cells", rows}}).dump(2) +
         "\n";
}

}  // namespace qcc
