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

// Field accessors that turn nlohmann::json type errors into ParseError
// messages naming the offending field.

#ifndef QCC_SRC_JSON_UTIL_HPP_
#define QCC_SRC_JSON_UTIL_HPP_

#include <string>
#include <string_view>
#include <type_traits>

#include <nlohmann/json.hpp>

#include "qcc/instance.hpp"

namespace qcc::detail {

inline nlohmann::json parse_document(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

template <typename T>
const char* type_name() {
  if constexpr (std::is_same_v<T, bool>) {
    return "boolean";
  } else if constexpr (std::is_integral_v<T>) {
    return "integer";
  } else if constexpr (std::is_floating_point_v<T>) {
    return "number";
  } else {
    return "string";
  }
}

template <typename T>
bool holds(const nlohmann::json& v) {
  if constexpr (std::is_same_v<T, bool>) {
    return v.is_boolean();
  } else if constexpr (std::is_integral_v<T>) {
    return v.is_number_integer();
  } else if constexpr (std::is_floating_point_v<T>) {
    return v.is_number();
  } else {
    return v.is_string();
  }
}

template <typename T>
T field(const nlohmann::json& j, const char* name) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
  if (!holds<T>(*it)) {
    throw ParseError(std::string("field '") + name + "': expected " + type_name<T>());
  }
  return it->get<T>();
}

template <typename T>
T optional_field(const nlohmann::json& j, const char* name, T fallback) {
  if (!j.is_object() || !j.contains(name) || j.at(name).is_null()) return fallback;
  return field<T>(j, name);
}

inline const nlohmann::json& array_field(const nlohmann::json& j, const char* name) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
  if (!it->is_array()) throw ParseError(std::string("field '") + name + "': expected array");
  return *it;
}

}  // namespace qcc::detail

#endif  // QCC_SRC_JSON_UTIL_HPP_
