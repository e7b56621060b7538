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

// qccs: generate suites, solve, validate, benchmark and draw schedules.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcc/bench.hpp"
#include "qcc/bounds.hpp"
#include "qcc/hybrid.hpp"
#include "qcc/instance.hpp"
#include "qcc/schedule.hpp"

namespace fs = std::filesystem;

namespace {

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    qcc::write_text_file(output, text);
  }
}

struct GenArgs {
  std::string chip = "rigetti-8";
  std::optional<int> goals;
  std::optional<double> density;
  std::string variant = "qcc";
  int stages = 1;
  int count = 1;
  std::uint64_t seed = 0;
  std::string out_dir;
};

int run_gen(const GenArgs& a) {
  qcc::SuiteSpec spec;
  spec.chip = a.chip;
  spec.goals = a.goals;
  spec.density = a.density;
  spec.variant = qcc::parse_variant(a.variant);
  spec.stages = a.stages;
  spec.count = a.count;
  spec.seed = a.seed;
  const std::vector<qcc::Instance> suite = qcc::generate_suite(spec);
  qcc::write_suite(suite, a.out_dir);
  std::cout << "wrote " << suite.size() << " instances to " << a.out_dir << "\n";
  return 0;
}

struct SolveArgs {
  std::string instance;
  std::string engine = "half";
  double budget = 10.0;
  std::optional<long> node_budget;
  std::optional<long> restart_budget;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

int run_solve(const SolveArgs& a) {
  const qcc::Instance in = qcc::read_instance(a.instance);
  const qcc::Engine engine = qcc::parse_engine(a.engine);
  qcc::RunOptions ro;
  ro.budget_s = a.budget;
  ro.seed = a.seed;
  ro.node_budget = a.node_budget;
  ro.restart_budget = a.restart_budget;
  const qcc::RunReport report = qcc::run_engine(in, engine, ro);
  fs::create_directories(a.out_dir);
  const std::string stem = in.name + "." + std::string(qcc::to_string(engine));
  qcc::write_text_file(fs::path(a.out_dir) / (stem + ".report.json"), qcc::report_to_json(report));
  if (!report.solved()) {
    std::cout << in.name << " " << a.engine << ": no schedule found\n";
    return 1;
  }
  qcc::Schedule s = *report.final_schedule;
  s.instance_ref = in.name;
  qcc::write_schedule(s, fs::path(a.out_dir) / (stem + ".schedule.json"));
  std::cout << in.name << " " << a.engine << ": makespan " << s.makespan << ", swaps "
            << s.swap_count;
  if (report.delta) std::printf(", delta %.2f%%", *report.delta);
  for (const qcc::StageReport& st : report.stages) {
    std::cout << "\n  " << st.engine << " " << st.status << " after " << st.trace.size()
              << " incumbents";
  }
  std::cout << "\n";
  return 0;
}

struct ValidateArgs {
  std::string instance;
  std::string schedule;
  std::optional<int> horizon;
};

int run_validate(const ValidateArgs& a) {
  const qcc::Instance in = qcc::read_instance(a.instance);
  const qcc::Schedule s = qcc::read_schedule(a.schedule);
  qcc::ValidateOptions vo;
  vo.horizon = a.horizon;
  const qcc::ValidationReport report = qcc::validate(in, s, vo);
  if (report.valid) {
    std::cout << "valid: makespan " << s.makespan << ", swaps " << s.swap_count << "\n";
    return 0;
  }
  std::cout << "invalid\n";
  for (const qcc::Violation& v : report.violations) std::cout << "  " << v.rule << ": " << v.detail << "\n";
  return 1;
}

struct BenchArgs {
  std::string suite;
  std::vector<std::string> engines = {"router", "cp", "half", "last"};
  double budget = 2.0;
  std::vector<std::string> budget_by_size;
  std::optional<long> node_budget;
  std::optional<long> restart_budget;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string format = "text";
  std::string output;
  int jobs = 1;
  bool quiet = false;
};

int run_bench(const BenchArgs& a) {
  const std::vector<qcc::Instance> suite = qcc::read_suite(a.suite);
  qcc::MatrixOptions mo;
  mo.engines.clear();
  for (const std::string& e : a.engines) mo.engines.push_back(qcc::parse_engine(e));
  mo.budget_s = a.budget;
  for (const std::string& entry : a.budget_by_size) {
    const size_t eq = entry.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--budget-for", "expected QUBITS=SECONDS");
    mo.budget_by_qubits[std::stoi(entry.substr(0, eq))] = std::stod(entry.substr(eq + 1));
  }
  mo.node_budget = a.node_budget;
  mo.restart_budget = a.restart_budget;
  mo.seed = a.seed;
  mo.run_dir = a.out_dir.empty() ? fs::path(a.suite) / "runs" : fs::path(a.out_dir);
  mo.jobs = a.jobs;
  if (!a.quiet) mo.progress = [](const std::string& line) { std::cerr << line << "\n"; };
  const qcc::MatrixRun run = qcc::run_matrix(suite, mo);
  const qcc::ResultsTable table = qcc::build_table(run.instances, run.reports, run.engines);
  const std::string text = a.format == "json" ? qcc::table_to_json(table) : qcc::table_to_text(table);
  qcc::write_text_file(mo.run_dir / (a.format == "json" ? "table.json" : "table.txt"), text);
  emit(text, a.output);
  return 0;
}

struct GanttArgs {
  std::string instance;
  std::string schedule;
  std::string format = "text";
  std::string output;
};

int run_gantt(const GanttArgs& a) {
  const qcc::Instance in = qcc::read_instance(a.instance);
  const qcc::Schedule s = qcc::read_schedule(a.schedule);
  emit(a.format == "svg" ? qcc::gantt_svg(in, s) : qcc::gantt_text(in, s), a.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum circuit compilation scheduler"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate an instance suite");
  gen_cmd->add_option("--chip", gen.chip, "Preset name or grid:S[:alternating|all-blue]");
  auto* goals_opt = gen_cmd->add_option("--goals", gen.goals, "Goal count |G|");
  auto* density_opt =
      gen_cmd->add_option("--density", gen.density, "Fraction of state pairs that are goals");
  goals_opt->excludes(density_opt);
  gen_cmd->add_option("--variant", gen.variant)->check(CLI::IsMember({"qcc", "qcc-i", "qcc-x"}));
  gen_cmd->add_option("--stages", gen.stages)->check(CLI::IsMember({1, 2}));
  gen_cmd->add_option("--count", gen.count)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out-dir", gen.out_dir)->required();

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  solve_cmd->add_option("--instance", solve.instance)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--engine", solve.engine)
      ->check(CLI::IsMember({"router", "cp", "half", "last"}));
  solve_cmd->add_option("--budget", solve.budget, "Wall-clock seconds")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--node-budget", solve.node_budget, "Cap on CP search nodes");
  solve_cmd->add_option("--restart-budget", solve.restart_budget, "Cap on router restarts");
  solve_cmd->add_option("--seed", solve.seed);
  solve_cmd->add_option("--out-dir", solve.out_dir);

  ValidateArgs val;
  CLI::App* val_cmd = app.add_subcommand("validate", "Check a schedule; exit 0 iff valid");
  val_cmd->add_option("--instance", val.instance)->required()->check(CLI::ExistingFile);
  val_cmd->add_option("--schedule", val.schedule)->required()->check(CLI::ExistingFile);
  val_cmd->add_option("--horizon", val.horizon, "Defaults to the horizon bound");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run an engine matrix over a suite");
  bench_cmd->add_option("--suite", bench.suite)->required()->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--engine", bench.engines, "Repeatable")
      ->check(CLI::IsMember({"router", "cp", "half", "last"}));
  bench_cmd->add_option("--budget", bench.budget, "Seconds per run")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--budget-for", bench.budget_by_size, "QUBITS=SECONDS, repeatable");
  bench_cmd->add_option("--node-budget", bench.node_budget);
  bench_cmd->add_option("--restart-budget", bench.restart_budget);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--out-dir", bench.out_dir, "Run directory, default <suite>/runs");
  bench_cmd->add_option("--format", bench.format)->check(CLI::IsMember({"text", "json"}));
  bench_cmd->add_option("--output", bench.output);
  bench_cmd->add_option("--jobs", bench.jobs)->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--quiet", bench.quiet);

  GanttArgs gantt;
  CLI::App* gantt_cmd = app.add_subcommand("gantt", "Draw a schedule");
  gantt_cmd->add_option("--instance", gantt.instance)->required()->check(CLI::ExistingFile);
  gantt_cmd->add_option("--schedule", gantt.schedule)->required()->check(CLI::ExistingFile);
  gantt_cmd->add_option("--format", gantt.format)->check(CLI::IsMember({"text", "svg"}));
  gantt_cmd->add_option("--output", gantt.output);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      if (!gen.goals && !gen.density) throw CLI::RequiredError("--goals or --density");
      return run_gen(gen);
    }
    if (solve_cmd->parsed()) return run_solve(solve);
    if (val_cmd->parsed()) return run_validate(val);
    if (bench_cmd->parsed()) return run_bench(bench);
    if (gantt_cmd->parsed()) return run_gantt(gantt);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
