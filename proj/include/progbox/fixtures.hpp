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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace progbox {

/// One entry of the versioned reference-value table (data/reference_values.json).
struct ReferenceValue {
  std::string key;
  double value = 0.0;
  std::string exact;  // human-readable closed form
  double tolerance = 0.0;
  std::string origin;  // "published" or "computed"
  std::string note;
};

struct ReferenceTable {
  int version = 0;
  std::vector<ReferenceValue> values;
};

/// Parses a reference table; throws std::invalid_argument on malformed input.
ReferenceTable parse_reference_table(std::string_view json_text);

/// The table compiled into the library.
const ReferenceTable& reference_values();

/// Throws std::out_of_range for an unknown key.
const ReferenceValue& reference(std::string_view key);

}  // namespace progbox
