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

#include "qcc/instance.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "json_util.hpp"
#include "qcc/rng.hpp"

namespace qcc {

namespace {

using nlohmann::json;

PsColor parse_color(std::string_view text) {
  if (text == "red") return PsColor::kRed;
  if (text == "blue") return PsColor::kBlue;
  throw ParseError("field 'ps_color': expected \"red\" or \"blue\", got \"" +
                   std::string(text) + "\"");
}

InitialMapping parse_mapping(std::string_view text) {
  if (text == "identity") return InitialMapping::kIdentity;
  if (text == "free") return InitialMapping::kFree;
  throw ParseError("field 'initial_mapping': expected \"identity\" or \"free\"");
}

json chip_json(const Chip& chip) {
  json edges = json::array();
  for (const ChipEdge& e : chip.edges) {
    edges.push_back({{"u", e.u},
                     {"v", e.v},
                     {"ps_color", to_string(e.ps_color)},
                     {"ps_duration", e.ps_duration},
                     {"swap_enabled", e.swap_enabled}});
  }
  json j = {{"name", chip.name},
            {"qubit_count", chip.qubit_count},
            {"side_length", chip.side_length},
            {"swap_duration", chip.swap_duration},
            {"mix_duration", chip.mix_duration},
            {"edges", edges}};
  if (!chip.layout.empty()) {
    json layout = json::array();
    for (auto [r, c] : chip.layout) layout.push_back({r, c});
    j["layout"] = layout;
  }
  return j;
}

Chip chip_of(const json& j) {
  Chip chip;
  chip.name = detail::optional_field<std::string>(j, "name", "");
  chip.qubit_count = detail::field<int>(j, "qubit_count");
  chip.side_length = detail::field<int>(j, "side_length");
  chip.swap_duration = detail::optional_field<int>(j, "swap_duration", kDefaultSwapDuration);
  chip.mix_duration = detail::optional_field<int>(j, "mix_duration", kDefaultMixDuration);
  const json& edges = detail::array_field(j, "edges");
  for (const json& e : edges) {
    ChipEdge edge;
    edge.u = detail::field<int>(e, "u");
    edge.v = detail::field<int>(e, "v");
    edge.ps_color = parse_color(detail::field<std::string>(e, "ps_color"));
    const int fallback =
        edge.ps_color == PsColor::kBlue ? kDefaultBlueDuration : kDefaultRedDuration;
    edge.ps_duration = detail::optional_field<int>(e, "ps_duration", fallback);
    edge.swap_enabled = detail::optional_field<bool>(e, "swap_enabled", true);
    chip.edges.push_back(edge);
  }
  if (j.contains("layout")) {
    for (const json& p : detail::array_field(j, "layout")) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
          !p[1].is_number_integer()) {
        throw ParseError("field 'layout': expected [row, col] pairs");
      }
      chip.layout.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
  }
  return chip;
}

json instance_json(const Instance& in) {
  json goals = json::array();
  for (const Goal& g : in.goals) goals.push_back({g.a, g.b});
  return {{"format", "qcc-instance"},
          {"version", 1},
          {"name", in.name},
          {"chip", chip_json(in.chip)},
          {"goals", goals},
          {"stages", in.stages},
          {"variant", to_string(in.variant)},
          {"initial_mapping", to_string(in.initial_mapping)}};
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kQcc:
      return "qcc";
    case Variant::kQccI:
      return "qcc-i";
    case Variant::kQccX:
      return "qcc-x";
  }
  return "?";
}

std::string_view to_string(InitialMapping m) {
  return m == InitialMapping::kIdentity ? "identity" : "free";
}

std::string_view to_string(PsColor c) { return c == PsColor::kRed ? "red" : "blue"; }

Variant parse_variant(std::string_view text) {
  if (text == "qcc" || text == "QCC") return Variant::kQcc;
  if (text == "qcc-i" || text == "QCC-I") return Variant::kQccI;
  if (text == "qcc-x" || text == "QCC-X") return Variant::kQccX;
  throw ParseError("field 'variant': expected qcc, qcc-i or qcc-x, got \"" +
                   std::string(text) + "\"");
}

void Chip::validate() const {
  if (qubit_count <= 0) throw ValidationError("chip: qubit_count must be positive");
  if (side_length <= 0) throw ValidationError("chip: side_length must be positive");
  if (swap_duration <= 0 || mix_duration <= 0) {
    throw ValidationError("chip: durations must be positive");
  }
  if (!layout.empty() && static_cast<int>(layout.size()) != qubit_count) {
    throw ValidationError("chip: layout must list one position per qubit");
  }
  std::set<std::pair<int, int>> seen;
  for (const ChipEdge& e : edges) {
    if (e.u < 1 || e.u > qubit_count || e.v < 1 || e.v > qubit_count) {
      throw ValidationError("chip: edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ") references an unknown qubit");
    }
    if (e.u == e.v) throw ValidationError("chip: self-loop edge on qubit " + std::to_string(e.u));
    if (e.ps_duration <= 0) throw ValidationError("chip: ps_duration must be positive");
    if (!seen.insert(std::minmax(e.u, e.v)).second) {
      throw ValidationError("chip: duplicate edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ")");
    }
  }
  // Connectivity over all edges.
  std::vector<std::vector<int>> adj(static_cast<size_t>(qubit_count) + 1);
  for (const ChipEdge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> mark(static_cast<size_t>(qubit_count) + 1, 0);
  std::deque<int> queue{1};
  mark[1] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    for (int r : adj[q]) {
      if (!mark[r]) {
        mark[r] = 1;
        ++reached;
        queue.push_back(r);
      }
    }
  }
  if (reached != qubit_count) throw ValidationError("chip: graph is not connected");
}

int Chip::max_ps_duration() const {
  int best = 0;
  for (const ChipEdge& e : edges) best = std::max(best, e.ps_duration);
  return best;
}

int Chip::min_ps_duration() const {
  int best = 0;
  for (const ChipEdge& e : edges) {
    best = best == 0 ? e.ps_duration : std::min(best, e.ps_duration);
  }
  return best;
}

void Instance::validate() const {
  chip.validate();
  if (stages != 1 && stages != 2) throw ValidationError("instance: stages must be 1 or 2");
  const int beta = state_count();
  std::set<std::pair<int, int>> seen;
  for (const Goal& g : goals) {
    if (g.a < 1 || g.a > beta || g.b < 1 || g.b > beta) {
      throw ValidationError("instance: goal <q" + std::to_string(g.a) + ",q" +
                            std::to_string(g.b) + "> references an unknown state");
    }
    if (g.a == g.b) {
      throw ValidationError("instance: goal pairs state q" + std::to_string(g.a) +
                            " with itself");
    }
    if (!seen.insert(std::minmax(g.a, g.b)).second) {
      throw ValidationError("instance: duplicate goal <q" + std::to_string(g.a) + ",q" +
                            std::to_string(g.b) + ">");
    }
  }
  const InitialMapping expected =
      variant == Variant::kQccI ? InitialMapping::kFree : InitialMapping::kIdentity;
  if (initial_mapping != expected) {
    throw ValidationError("instance: variant " + std::string(to_string(variant)) +
                          " requires initial_mapping " + std::string(to_string(expected)));
  }
}

ChipGraph::ChipGraph(const Chip& chip) : n_(chip.qubit_count) {
  const size_t n1 = static_cast<size_t>(n_) + 1;
  adj_.assign(n1, {});
  swap_adj_.assign(n1, {});
  edge_of_.assign(n1, std::vector<int>(n1, -1));
  for (size_t k = 0; k < chip.edges.size(); ++k) {
    const ChipEdge& e = chip.edges[k];
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
    edge_of_[e.u][e.v] = edge_of_[e.v][e.u] = static_cast<int>(k);
    if (e.swap_enabled) {
      swap_adj_[e.u].push_back(e.v);
      swap_adj_[e.v].push_back(e.u);
    }
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
  for (auto& list : swap_adj_) std::sort(list.begin(), list.end());

  dist_.assign(n1, std::vector<int>(n1, -1));
  for (int s = 1; s <= n_; ++s) {
    std::vector<int>& d = dist_[s];
    d[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      for (int r : swap_adj_[q]) {
        if (d[r] < 0) {
          d[r] = d[q] + 1;
          queue.push_back(r);
        }
      }
    }
  }

  meet_.assign(n1, std::vector<int>(n1, -1));
  for (int a = 1; a <= n_; ++a) {
    for (int b = 1; b <= n_; ++b) {
      if (a == b) continue;
      int best = -1;
      for (const ChipEdge& e : chip.edges) {
        for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
          const int da = dist_[a][x];
          const int db = dist_[b][y];
          if (da < 0 || db < 0) continue;
          // A swap that does not exchange the two states moves at most one
          // of them by one hop, so this sum never overestimates.
          const int cost = da + db;
          if (best < 0 || cost < best) best = cost;
        }
      }
      meet_[a][b] = best;
    }
  }
}

bool ChipGraph::adjacent(QubitId a, QubitId b) const { return edge_of_[a][b] >= 0; }

int ChipGraph::edge_index(QubitId a, QubitId b) const {
  if (a < 1 || b < 1 || a > n_ || b > n_) return -1;
  return edge_of_[a][b];
}

std::vector<QubitId> ChipGraph::swap_path(QubitId a, QubitId b) const {
  std::vector<QubitId> path;
  if (dist_[a][b] < 0) return path;
  path.push_back(a);
  QubitId cur = a;
  while (cur != b) {
    for (QubitId next : swap_adj_[cur]) {
      if (dist_[next][b] == dist_[cur][b] - 1) {
        cur = next;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

int ChipGraph::swap_diameter() const {
  int best = 0;
  for (int a = 1; a <= n_; ++a) {
    for (int b = 1; b <= n_; ++b) best = std::max(best, dist_[a][b]);
  }
  return best;
}

Chip build_grid_chip(int side, GridColoring coloring) {
  if (side < 2) throw std::invalid_argument("grid side must be at least 2");
  Chip chip;
  chip.name = "grid-" + std::to_string(side) + "x" + std::to_string(side) +
              (coloring == GridColoring::kAllBlue ? "-blue" : "-alt");
  chip.qubit_count = side * side;
  chip.side_length = side;
  auto id = [side](int r, int c) { return r * side + c + 1; };
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) chip.layout.emplace_back(r, c);
  }
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      // Lower-left endpoint parity picks the color.
      const bool blue = coloring == GridColoring::kAllBlue || (r + c) % 2 == 0;
      const PsColor color = blue ? PsColor::kBlue : PsColor::kRed;
      const int dur = blue ? kDefaultBlueDuration : kDefaultRedDuration;
      if (c + 1 < side) chip.edges.push_back({id(r, c), id(r, c + 1), color, dur, true});
      if (r + 1 < side) chip.edges.push_back({id(r, c), id(r + 1, c), color, dur, true});
    }
  }
  return chip;
}

Instance generate_instance(const Chip& chip, int goal_count, int stages, Variant variant,
                           std::uint64_t seed) {
  chip.validate();
  const int beta = chip.qubit_count;
  const long long pairs = 1LL * beta * (beta - 1) / 2;
  if (goal_count < 0 || goal_count > pairs) {
    throw std::invalid_argument("goal_count " + std::to_string(goal_count) +
                                " exceeds the " + std::to_string(pairs) +
                                " distinct state pairs");
  }
  std::vector<Goal> all;
  all.reserve(static_cast<size_t>(pairs));
  for (int a = 1; a <= beta; ++a) {
    for (int b = a + 1; b <= beta; ++b) all.push_back({a, b});
  }
  // Partial Fisher-Yates: the first goal_count slots are a uniform sample.
  Rng rng(seed);
  for (int i = 0; i < goal_count; ++i) {
    const size_t j = static_cast<size_t>(i) + rng.below(all.size() - static_cast<size_t>(i));
    std::swap(all[static_cast<size_t>(i)], all[j]);
  }
  Instance in;
  in.chip = chip;
  in.goals.assign(all.begin(), all.begin() + goal_count);
  in.stages = stages;
  in.variant = variant;
  in.initial_mapping =
      variant == Variant::kQccI ? InitialMapping::kFree : InitialMapping::kIdentity;
  in.name = chip.name + "_g" + std::to_string(goal_count) + "_p" + std::to_string(stages) +
            "_" + std::string(to_string(variant)) + "_s" + std::to_string(seed);
  in.validate();
  return in;
}

std::string chip_to_json(const Chip& chip) { return chip_json(chip).dump(2) + "\n"; }

Chip chip_from_json(std::string_view text) {
  Chip chip = chip_of(detail::parse_document(text));
  chip.validate();
  return chip;
}

std::string instance_to_json(const Instance& instance) {
  return instance_json(instance).dump(2) + "\n";
}

Instance instance_from_json(std::string_view text) {
  const json j = detail::parse_document(text);
  Instance in;
  in.name = detail::optional_field<std::string>(j, "name", "");
  if (!j.contains("chip")) throw ParseError("missing field 'chip'");
  if (j.at("chip").is_string()) {
    in.chip = build_preset_chip(j.at("chip").get<std::string>());
  } else {
    in.chip = chip_of(j.at("chip"));
  }
  for (const json& g : detail::array_field(j, "goals")) {
    if (g.is_array() && g.size() == 2 && g[0].is_number_integer() &&
        g[1].is_number_integer()) {
      in.goals.push_back({g[0].get<int>(), g[1].get<int>()});
    } else if (g.is_object()) {
      in.goals.push_back({detail::field<int>(g, "a"), detail::field<int>(g, "b")});
    } else {
      throw ParseError("field 'goals': expected [a, b] state pairs");
    }
  }
  in.stages = detail::field<int>(j, "stages");
  in.variant = parse_variant(detail::field<std::string>(j, "variant"));
  in.initial_mapping = parse_mapping(detail::field<std::string>(j, "initial_mapping"));
  in.validate();
  return in;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Instance read_instance(const std::filesystem::path& path) {
  return instance_from_json(read_text_file(path));
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  write_text_file(path, instance_to_json(instance));
}

std::string instance_fingerprint(const Instance& instance) {
  const std::string text = instance_json(instance).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace qcc
