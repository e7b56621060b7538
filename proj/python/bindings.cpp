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

// Thin bindings. Instances, schedules and reports cross as JSON text; the
// qccsched package turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcc/bench.hpp"
#include "qcc/bounds.hpp"
#include "qcc/cpsolver.hpp"
#include "qcc/hybrid.hpp"
#include "qcc/router.hpp"

namespace py = pybind11;

namespace {

qcc::Instance load(const std::string& text) { return qcc::instance_from_json(text); }

py::list violations(const qcc::ValidationReport& r) {
  py::list out;
  for (const qcc::Violation& v : r.violations) out.append(py::make_tuple(v.rule, v.detail));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "qccsched native core";

  py::register_exception<qcc::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<qcc::ValidationError>(m, "InstanceError", PyExc_ValueError);

  m.def("preset_chips", &qcc::preset_chip_names);
  m.def("chip_json", [](const std::string& spec) { return qcc::chip_to_json(qcc::chip_from_spec(spec)); },
        py::arg("spec"));

  m.def(
      "generate_instance",
      [](const std::string& chip, int goals, int stages, const std::string& variant, std::uint64_t seed) {
        return qcc::instance_to_json(
            qcc::generate_instance(qcc::chip_from_spec(chip), goals, stages, qcc::parse_variant(variant), seed));
      },
      py::arg("chip"), py::arg("goals"), py::arg("stages") = 1, py::arg("variant") = "qcc", py::arg("seed") = 0);
  m.def("normalize_instance", [](const std::string& text) { return qcc::instance_to_json(load(text)); });
  m.def("fingerprint", [](const std::string& text) { return qcc::instance_fingerprint(load(text)); });
  m.def("horizon_bound", [](const std::string& text) { return qcc::horizon_bound(load(text)); });

  m.def(
      "validate",
      [](const std::string& instance, const std::string& schedule, std::optional<int> horizon) {
        qcc::ValidateOptions o;
        o.horizon = horizon;
        const qcc::ValidationReport r = qcc::validate(load(instance), qcc::schedule_from_json(schedule), o);
        return py::make_tuple(r.valid, violations(r));
      },
      py::arg("instance"), py::arg("schedule"), py::arg("horizon") = py::none());

  m.def("baseline", [](const std::string& text) {
    return qcc::schedule_to_json(qcc::solve_sequential_baseline(load(text)));
  });
  m.def(
      "greedy",
      [](const std::string& text, std::uint64_t seed) { return qcc::schedule_to_json(qcc::solve_greedy(load(text), seed)); },
      py::arg("instance"), py::arg("seed") = 0);

  m.def(
      "solve",
      [](const std::string& text, const std::string& engine, double budget, std::uint64_t seed,
         std::optional<long> node_budget, std::optional<long> restart_budget) {
        const qcc::Instance in = load(text);
        qcc::RunOptions o;
        o.budget_s = budget;
        o.seed = seed;
        o.node_budget = node_budget;
        o.restart_budget = restart_budget;
        const qcc::Engine e = qcc::parse_engine(engine);
        qcc::RunReport r;
        {
          py::gil_scoped_release release;
          r = qcc::run_engine(in, e, o);
        }
        return qcc::report_to_json(r);
      },
      py::arg("instance"), py::arg("engine") = "half", py::arg("budget") = 10.0, py::arg("seed") = 0,
      py::arg("node_budget") = py::none(), py::arg("restart_budget") = py::none());
  m.def("check_report", [](const std::string& instance, const std::string& report) {
    return qcc::check_report(load(instance), qcc::report_from_json(report));
  });

  m.def("gantt_text", [](const std::string& instance, const std::string& schedule) {
    return qcc::gantt_text(load(instance), qcc::schedule_from_json(schedule));
  });
  m.def("gantt_svg", [](const std::string& instance, const std::string& schedule) {
    return qcc::gantt_svg(load(instance), qcc::schedule_from_json(schedule));
  });

  m.def("score", &qcc::score, py::arg("best_makespan"), py::arg("makespan"));
  m.def("improvement_delta", &qcc::improvement_delta, py::arg("before"), py::arg("after"));
}
