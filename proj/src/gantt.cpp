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

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qcc/bench.hpp"
#include "qcc/bounds.hpp"

namespace qcc {

namespace {

std::string block_kind(const Instance& in, const ChipGraph& graph, const GateTask& t) {
  switch (t.kind) {
    case TaskKind::kSwap:
      return "swap";
    case TaskKind::kPs: {
      const ChipEdge& e = in.chip.edges[static_cast<size_t>(graph.edge_index(t.u, t.v))];
      return e.ps_color == PsColor::kBlue ? "ps-blue" : "ps-red";
    }
    case TaskKind::kMix:
      return "mix";
    case TaskKind::kInit:
      return "init";
  }
  return "?";
}

}  // namespace

std::vector<GanttBlock> gantt_blocks(const Instance& in, const Schedule& s) {
  const ValidationReport report = validate(in, s, {std::max(s.total_span(), horizon_bound(in))});
  if (!report.valid) throw std::invalid_argument("refusing to draw an invalid schedule: " + report.summary());
  const ChipGraph graph(in.chip);
  std::vector<GanttBlock> blocks;
  for (size_t i = 0; i < s.tasks.size(); ++i) {
    const GateTask& t = s.tasks[i];
    GanttBlock b;
    b.rows = t.two_qubit() ? std::vector<QubitId>{std::min(t.u, t.v), std::max(t.u, t.v)}
                           : std::vector<QubitId>{t.u};
    b.start = t.start;
    b.end = t.end();
    b.kind = block_kind(in, graph, t);
    b.task = static_cast<int>(i);
    blocks.push_back(std::move(b));
  }
  if (!in.crosstalk()) return blocks;
  for (size_t i = 0; i < s.tasks.size(); ++i) {
    const GateTask& t = s.tasks[i];
    if (t.kind == TaskKind::kInit) continue;
    std::set<QubitId> rows;
    for (QubitId q : {t.u, t.v}) {
      if (q == 0 || !t.touches(q)) continue;
      for (QubitId w : graph.neighbors(q)) rows.insert(w);
    }
    rows.erase(t.u);
    if (t.two_qubit()) rows.erase(t.v);
    if (rows.empty()) continue;
    blocks.push_back({{rows.begin(), rows.end()}, t.start, t.end(), "blocked", static_cast<int>(i)});
  }
  return blocks;
}

std::string gantt_text(const Instance& in, const Schedule& s) {
  const std::vector<GanttBlock> blocks = gantt_blocks(in, s);
  const int n = in.chip.qubit_count;
  const int span = s.total_span();
  std::vector<std::string> grid(static_cast<size_t>(n) + 1, std::string(static_cast<size_t>(span), '.'));
  std::vector<bool> init(static_cast<size_t>(n) + 1, false);
  // Blocked marks go first so gate blocks draw over them.
  for (bool blocked_pass : {true, false}) {
    for (const GanttBlock& b : blocks) {
      if ((b.kind == "blocked") != blocked_pass) continue;
      if (b.kind == "init") {
        for (QubitId q : b.rows) init[q] = true;
        continue;
      }
      const char mark = b.kind == "swap"      ? 'S'
                        : b.kind == "ps-blue" ? 'B'
                        : b.kind == "ps-red"  ? 'R'
                        : b.kind == "mix"     ? 'M'
                                              : 'x';
      for (QubitId q : b.rows) {
        for (int t = b.start; t < b.end; ++t) grid[q][static_cast<size_t>(t)] = mark;
      }
    }
  }
  std::ostringstream out;
  const int label = static_cast<int>(std::to_string(n).size()) + 1;
  out << std::string(static_cast<size_t>(label) + 2, ' ');
  for (int t = 0; t < span; ++t) out << (t % 5 == 0 ? static_cast<char>('0' + (t / 5) % 10) : ' ');
  out << "\n";
  for (int q = 1; q <= n; ++q) {
    std::string name = "n" + std::to_string(q);
    out << name << std::string(static_cast<size_t>(label) - name.size() + 1, ' ')
        << (init[q] ? '#' : '|') << grid[q] << "\n";
  }
  out << "S swap  B blue ps  R red ps  M mix  x blocked  # initialized; axis every 5 cycles\n";
  return out.str();
}

std::string gantt_svg(const Instance& in, const Schedule& s) {
  const std::vector<GanttBlock> blocks = gantt_blocks(in, s);
  const int n = in.chip.qubit_count;
  const int span = s.total_span();
  constexpr int kCell = 20;
  constexpr int kRow = 24;
  constexpr int kLeft = 40;
  constexpr int kTop = 10;
  const int width = kLeft + std::max(span, 1) * kCell + 10;
  const int height = kTop + n * kRow + 30;
  auto x_of = [&](int t) { return kLeft + t * kCell; };
  auto y_of = [&](QubitId q) { return kTop + (q - 1) * kRow; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"monospace\" font-size=\"11\">\n";
  out << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
         "patternTransform=\"rotate(45)\"><rect width=\"6\" height=\"6\" fill=\"#eeeeee\"/>"
         "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#555555\" stroke-width=\"2\"/>"
         "</pattern></defs>\n";
  for (int q = 1; q <= n; ++q) {
    out << "<text x=\"4\" y=\"" << y_of(q) + kRow / 2 + 4 << "\">n" << q << "</text>\n";
    out << "<line class=\"row\" x1=\"" << kLeft << "\" y1=\"" << y_of(q) + kRow - 2 << "\" x2=\""
        << x_of(span) << "\" y2=\"" << y_of(q) + kRow - 2 << "\" stroke=\"#dddddd\"/>\n";
  }
  const int axis_y = kTop + n * kRow + 4;
  out << "<g class=\"axis\"><line x1=\"" << kLeft << "\" y1=\"" << axis_y << "\" x2=\"" << x_of(span)
      << "\" y2=\"" << axis_y << "\" stroke=\"#000000\"/>\n";
  for (int t = 0; t <= span; ++t) {
    out << "<line x1=\"" << x_of(t) << "\" y1=\"" << axis_y << "\" x2=\"" << x_of(t) << "\" y2=\""
        << axis_y + 4 << "\" stroke=\"#000000\"/>";
    if (t % 5 == 0) out << "<text x=\"" << x_of(t) - 3 << "\" y=\"" << axis_y + 16 << "\">" << t << "</text>";
    out << "\n";
  }
  out << "</g>\n";

  for (const GanttBlock& b : blocks) {
    const int x0 = x_of(b.start);
    const int w = (b.end - b.start) * kCell;
    out << "<g class=\"" << (b.kind == "blocked" ? "blocked" : "task " + b.kind) << "\" data-task=\""
        << b.task << "\" data-start=\"" << b.start << "\" data-end=\"" << b.end << "\">";
    for (QubitId q : b.rows) {
      const int y0 = y_of(q) + 2;
      const int h = kRow - 6;
      if (b.kind == "swap") {
        out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << w << "\" height=\"" << h
            << "\" fill=\"url(#hatch)\" stroke=\"#333333\"/>";
      } else if (b.kind == "ps-blue" || b.kind == "ps-red") {
        out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << w << "\" height=\"" << h
            << "\" fill=\"" << (b.kind == "ps-blue" ? "#1f5fbf" : "#c8302c") << "\" stroke=\"#333333\"/>";
      } else if (b.kind == "mix") {
        const int cx = x0 + w / 2;
        const int cy = y0 + h / 2;
        out << "<polygon points=\"" << cx << "," << y0 << " " << x0 + w << "," << cy << " " << cx << ","
            << y0 + h << " " << x0 << "," << cy << "\" fill=\"#2e9e4f\" stroke=\"#333333\"/>";
      } else if (b.kind == "init") {
        out << "<line x1=\"" << x0 + 1 << "\" y1=\"" << y0 << "\" x2=\"" << x0 + 1 << "\" y2=\"" << y0 + h
            << "\" stroke=\"#888888\" stroke-width=\"3\"/>";
      } else {
        for (int t = b.start; t < b.end; ++t) {
          const int cx = x_of(t);
          out << "<path d=\"M" << cx + 5 << " " << y0 + 4 << " L" << cx + kCell - 5 << " " << y0 + h - 4
              << " M" << cx + kCell - 5 << " " << y0 + 4 << " L" << cx + 5 << " " << y0 + h - 4
              << "\" stroke=\"#e0b000\" stroke-width=\"2\"/>";
        }
      }
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace qcc
