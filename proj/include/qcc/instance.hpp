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

// Chips, goal sets and problem variants.
//
// Qubits and qubit states are 1-based everywhere (n1..n_alpha, q1..q_beta).
// Goal indices are 0-based: goal o in [0, |G|) is a stage-1 goal and, for
// two-stage instances, o + |G| is its stage-2 duplicate.

#ifndef QCC_INSTANCE_HPP_
#define QCC_INSTANCE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcc {

using QubitId = int;
using StateId = int;

// Malformed input text. The message names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that breaks a domain invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PsColor { kRed, kBlue };

inline constexpr int kDefaultBlueDuration = 3;
inline constexpr int kDefaultRedDuration = 4;
inline constexpr int kDefaultSwapDuration = 2;
inline constexpr int kDefaultMixDuration = 1;

struct ChipEdge {
  QubitId u = 0;
  QubitId v = 0;
  PsColor ps_color = PsColor::kBlue;
  int ps_duration = kDefaultBlueDuration;
  bool swap_enabled = true;

  bool touches(QubitId q) const { return u == q || v == q; }
  bool joins(QubitId a, QubitId b) const {
    return (u == a && v == b) || (u == b && v == a);
  }
  friend bool operator==(const ChipEdge&, const ChipEdge&) = default;
};

struct Chip {
  std::string name;
  int qubit_count = 0;
  std::vector<ChipEdge> edges;
  int swap_duration = kDefaultSwapDuration;
  int mix_duration = kDefaultMixDuration;
  int side_length = 0;
  // Optional grid coordinates (row, col) per qubit, used for rendering.
  std::vector<std::pair<int, int>> layout;

  // Throws ValidationError when an invariant is broken.
  void validate() const;
  int max_ps_duration() const;
  int min_ps_duration() const;

  friend bool operator==(const Chip&, const Chip&) = default;
};

enum class Variant { kQcc, kQccI, kQccX };
enum class InitialMapping { kIdentity, kFree };

std::string_view to_string(Variant v);
std::string_view to_string(InitialMapping m);
std::string_view to_string(PsColor c);
Variant parse_variant(std::string_view text);

// Unordered pair of qubit states.
struct Goal {
  StateId a = 0;
  StateId b = 0;

  bool involves(StateId s) const { return a == s || b == s; }
  bool matches(StateId x, StateId y) const {
    return (a == x && b == y) || (a == y && b == x);
  }
  friend bool operator==(const Goal&, const Goal&) = default;
};

struct Instance {
  std::string name;
  Chip chip;
  std::vector<Goal> goals;
  int stages = 1;
  Variant variant = Variant::kQcc;
  InitialMapping initial_mapping = InitialMapping::kIdentity;

  int state_count() const { return chip.qubit_count; }
  int goal_count() const { return static_cast<int>(goals.size()); }
  // |G| for one stage, 2|G| when the duplicated set is included.
  int total_goal_count() const { return goal_count() * stages; }
  // Goal pair for an index in [0, total_goal_count()).
  const Goal& goal_at(int goal_index) const {
    return goals[static_cast<size_t>(goal_index % goal_count())];
  }
  int stage_of(int goal_index) const { return goal_index < goal_count() ? 1 : 2; }
  bool crosstalk() const { return variant == Variant::kQccX; }

  void validate() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Derived adjacency and distance queries over a chip.
class ChipGraph {
 public:
  explicit ChipGraph(const Chip& chip);

  int qubit_count() const { return n_; }
  const std::vector<QubitId>& neighbors(QubitId q) const { return adj_[q]; }
  bool adjacent(QubitId a, QubitId b) const;
  // Index into chip.edges of the edge joining a and b, or -1.
  int edge_index(QubitId a, QubitId b) const;
  // Hop distance over swap-enabled edges; -1 when unreachable.
  int swap_distance(QubitId a, QubitId b) const { return dist_[a][b]; }
  // Fewest swaps that put two states held on a and b onto the two ends
  // of some PS edge; -1 when impossible.
  int swaps_to_adjacent(QubitId a, QubitId b) const { return meet_[a][b]; }
  // Shortest path of qubits a..b over swap-enabled edges (inclusive).
  std::vector<QubitId> swap_path(QubitId a, QubitId b) const;
  int swap_diameter() const;

 private:
  int n_;
  std::vector<std::vector<QubitId>> adj_;
  std::vector<std::vector<int>> edge_of_;
  std::vector<std::vector<int>> dist_;
  std::vector<std::vector<int>> meet_;
  std::vector<std::vector<QubitId>> swap_adj_;
};

enum class GridColoring { kAlternating, kAllBlue };

Chip build_preset_chip(std::string_view name);
std::vector<std::string> preset_chip_names();
Chip build_grid_chip(int side, GridColoring coloring);

Instance generate_instance(const Chip& chip, int goal_count, int stages,
                           Variant variant, std::uint64_t seed);

std::string instance_to_json(const Instance& instance);
Instance instance_from_json(std::string_view text);
std::string chip_to_json(const Chip& chip);
Chip chip_from_json(std::string_view text);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance, const std::filesystem::path& path);

// Stable content hash of the canonical instance text.
std::string instance_fingerprint(const Instance& instance);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace qcc

#endif  // QCC_INSTANCE_HPP_
