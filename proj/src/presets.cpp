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

// Preset chips are compiled in from data/chips/*.json at build time.

#include <string_view>
#include <utility>

#include "qcc/instance.hpp"

namespace qcc {

namespace {

struct PresetText {
  std::string_view name;
  std::string_view json;
};

constexpr PresetText kPresets[] = {
#include "presets_data.inc"
};

}  // namespace

Chip build_preset_chip(std::string_view name) {
  for (const PresetText& p : kPresets) {
    if (p.name == name) return chip_from_json(p.json);
  }
  throw std::invalid_argument("unknown preset chip \"" + std::string(name) + "\"");
}

std::vector<std::string> preset_chip_names() {
  std::vector<std::string> names;
  for (const PresetText& p : kPresets) names.emplace_back(p.name);
  return names;
}

}  // namespace qcc
