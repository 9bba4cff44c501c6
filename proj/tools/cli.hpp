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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "progbox/haar.hpp"

namespace progbox::cli {

enum class OutputFormat { Json, Csv, Table };

struct CliConfig {
  std::vector<std::string> scenario_ids;  // empty with `all` set means every scenario
  bool all = false;
  bool list = false;
  AveragingMethod method = AveragingMethod::Design;
  std::size_t samples = 0;
  std::uint64_t seed = 7;
  std::size_t quadrature_nodes = 24;
  OutputFormat format = OutputFormat::Table;
  std::map<std::string, double> tolerance_overrides;
};

/// Exit codes: 0 all selected scenarios pass, 1 some scenario fails, 2 bad flags.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Twelve significant digits, as printed in every output format.
double round12(double x);
std::string format12(double x);

}  // namespace progbox::cli
