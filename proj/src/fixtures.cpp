// Copyright 2026 The progbox Authors
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

#include "progbox/fixtures.hpp"

#include <stdexcept>

#include <json.hpp>

namespace progbox {

namespace detail {
extern const std::string_view kReferenceFixtureJson;
}  // namespace detail

ReferenceTable parse_reference_table(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("reference table: ") + e.what());
  }
  if (doc.value("format", "") != "progbox-reference-values") {
    throw std::invalid_argument("reference table: unexpected format tag");
  }
  ReferenceTable table;
  try {
    table.version = doc.at("version").get<int>();
    for (const auto& entry : doc.at("values")) {
      ReferenceValue v;
      v.key = entry.at("key").get<std::string>();
      v.value = entry.at("value").get<double>();
      v.exact = entry.value("exact", "");
      v.tolerance = entry.at("tolerance").get<double>();
      v.origin = entry.at("origin").get<std::string>();
      v.note = entry.value("note", "");
      if (v.origin != "published" && v.origin != "computed") {
        throw std::invalid_argument("reference table: unknown origin '" + v.origin + "'");
      }
      if (!(v.tolerance >= 0.0)) {
        throw std::invalid_argument("reference table: negative tolerance for " + v.key);
      }
      table.values.push_back(std::move(v));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("reference table: ") + e.what());
  }
  return table;
}

const ReferenceTable& reference_values() {
  static const ReferenceTable table = parse_reference_table(detail::kReferenceFixtureJson);
  return table;
}

const ReferenceValue& reference(std::string_view key) {
  for (const ReferenceValue& v : reference_values().values) {
    if (v.key == key) return v;
  }
  throw std::out_of_range("no reference value '" + std::string(key) + "'");
}

}  // namespace progbox
