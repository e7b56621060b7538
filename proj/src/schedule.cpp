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

#include "qcc/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "json_util.hpp"

namespace qcc {

namespace {

using nlohmann::json;

TaskKind parse_kind(std::string_view text) {
  if (text == "swap") return TaskKind::kSwap;
  if (text == "ps") return TaskKind::kPs;
  if (text == "mix") return TaskKind::kMix;
  if (text == "init") return TaskKind::kInit;
  throw ParseError("field 'kind': expected swap, ps, mix or init, got \"" +
                   std::string(text) + "\"");
}

int ps_duration_of(const Chip& chip, QubitId u, QubitId v) {
  for (const ChipEdge& e : chip.edges) {
    if (e.joins(u, v)) return e.ps_duration;
  }
  throw std::invalid_argument("no PS gate on (" + std::to_string(u) + "," +
                              std::to_string(v) + ")");
}

}  // namespace

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::kSwap:
      return "swap";
    case TaskKind::kPs:
      return "ps";
    case TaskKind::kMix:
      return "mix";
    case TaskKind::kInit:
      return "init";
  }
  return "?";
}

GateTask make_swap(const Chip& chip, QubitId u, QubitId v, int start) {
  GateTask t;
  t.kind = TaskKind::kSwap;
  t.u = u;
  t.v = v;
  t.start = start;
  t.duration = chip.swap_duration;
  return t;
}

GateTask make_ps(const Chip& chip, QubitId u, QubitId v, int start, int goal_index) {
  GateTask t;
  t.kind = TaskKind::kPs;
  t.u = u;
  t.v = v;
  t.start = start;
  t.duration = ps_duration_of(chip, u, v);
  t.goal_index = goal_index;
  return t;
}

GateTask make_mix(const Chip& chip, QubitId q, StateId state, int start) {
  GateTask t;
  t.kind = TaskKind::kMix;
  t.u = q;
  t.start = start;
  t.duration = chip.mix_duration;
  t.state = state;
  return t;
}

GateTask make_init(QubitId q, StateId state) {
  GateTask t;
  t.kind = TaskKind::kInit;
  t.u = q;
  t.state = state;
  return t;
}

void Schedule::refresh_summary() {
  makespan = 0;
  swap_count = 0;
  for (const GateTask& t : tasks) {
    if (t.kind == TaskKind::kSwap) ++swap_count;
    if (t.kind == TaskKind::kPs && t.goal_index >= 0) makespan = std::max(makespan, t.end());
  }
}

void Schedule::sort_tasks() {
  std::stable_sort(tasks.begin(), tasks.end(), [](const GateTask& a, const GateTask& b) {
    return std::tie(a.start, a.kind, a.u, a.v, a.goal_index, a.state) <
           std::tie(b.start, b.kind, b.u, b.v, b.goal_index, b.state);
  });
}

int Schedule::total_span() const {
  int span = 0;
  for (const GateTask& t : tasks) span = std::max(span, t.end());
  return span;
}

std::string schedule_to_json(const Schedule& schedule) {
  json tasks = json::array();
  for (const GateTask& t : schedule.tasks) {
    json j = {{"kind", to_string(t.kind)}};
    if (t.two_qubit()) {
      j["location"] = {t.u, t.v};
    } else {
      j["location"] = t.u;
    }
    j["start"] = t.start;
    j["duration"] = t.duration;
    if (t.kind == TaskKind::kPs) j["goal_index"] = t.goal_index;
    if (t.kind == TaskKind::kMix || t.kind == TaskKind::kInit) j["state"] = t.state;
    tasks.push_back(j);
  }
  json doc = {{"format", "qcc-schedule"},
              {"version", 1},
              {"instance_ref", schedule.instance_ref},
              {"makespan", schedule.makespan},
              {"swap_count", schedule.swap_count},
              {"tasks", tasks}};
  return doc.dump(2) + "\n";
}

Schedule schedule_from_json(std::string_view text) {
  const json doc = detail::parse_document(text);
  Schedule s;
  s.instance_ref = detail::optional_field<std::string>(doc, "instance_ref", "");
  s.makespan = detail::field<int>(doc, "makespan");
  s.swap_count = detail::field<int>(doc, "swap_count");
  for (const json& j : detail::array_field(doc, "tasks")) {
    GateTask t;
    t.kind = parse_kind(detail::field<std::string>(j, "kind"));
    if (!j.contains("location")) throw ParseError("missing field 'location'");
    const json& loc = j.at("location");
    if (t.two_qubit()) {
      if (!loc.is_array() || loc.size() != 2 || !loc[0].is_number_integer() ||
          !loc[1].is_number_integer()) {
        throw ParseError("field 'location': expected [u, v] for a two-qubit gate");
      }
      t.u = loc[0].get<int>();
      t.v = loc[1].get<int>();
    } else {
      if (!loc.is_number_integer()) {
        throw ParseError("field 'location': expected a qubit id for a one-qubit task");
      }
      t.u = loc.get<int>();
    }
    t.start = detail::field<int>(j, "start");
    t.duration = detail::field<int>(j, "duration");
    if (t.kind == TaskKind::kPs) t.goal_index = detail::field<int>(j, "goal_index");
    if (t.kind == TaskKind::kMix || t.kind == TaskKind::kInit) {
      t.state = detail::field<int>(j, "state");
    }
    s.tasks.push_back(t);
  }
  return s;
}

Schedule read_schedule(const std::filesystem::path& path) {
  return schedule_from_json(read_text_file(path));
}

void write_schedule(const Schedule& schedule, const std::filesystem::path& path) {
  write_text_file(path, schedule_to_json(schedule));
}

double score(int best_makespan, int schedule_makespan) {
  if (best_makespan <= 0 || schedule_makespan <= 0) {
    throw std::invalid_argument("score needs positive makespans");
  }
  return static_cast<double>(best_makespan) / static_cast<double>(schedule_makespan);
}

double improvement_delta(int before, int after) {
  if (before <= 0 || after <= 0) {
    throw std::invalid_argument("improvement_delta needs positive makespans");
  }
  return 100.0 * static_cast<double>(before - after) / static_cast<double>(before);
}

}  // namespace qcc
