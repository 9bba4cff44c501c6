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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "progbox/discrimination.hpp"
#include "progbox/fixtures.hpp"
#include "progbox/haar.hpp"
#include "progbox/states.hpp"

/// Reproducible black-box discrimination experiments: a test state, the two
/// box patterns to tell apart, a measurement and the expected figure of merit.
namespace progbox {

enum class ScenarioMode { Unambiguous, MinError };

std::string_view to_string(ScenarioMode m);

/// A named sub-result checked alongside the main figure of merit.
struct Check {
  std::string name;
  double value;
  double expected;
  double tolerance;
  bool pass;
};

/// Absolute-deviation check.
Check make_check(std::string name, double value, double expected, double tolerance);
/// Pass iff `condition`; value/expected are informational.
Check make_condition(std::string name, double value, double expected, bool condition);

/// Averaged output states of the two hypotheses under one engine.
struct ScenarioContext {
  DensityMatrix rho1;
  DensityMatrix rho2;
  AveragingMethod method;
  AveragingOptions options;
};

struct Scenario {
  std::string id;
  std::string citation;
  PureState state;
  BoxPattern pattern1;
  BoxPattern pattern2;
  Povm povm;
  /// Non-fail POVM labels -> hypothesis index (0 or 1).
  std::map<std::string, std::size_t> identifies;
  std::array<double, 2> priors{0.5, 0.5};
  ScenarioMode mode = ScenarioMode::Unambiguous;
  ReferenceValue reference;
  std::vector<std::string> metadata;
  /// Scenario-specific sub-results, evaluated on the engine's states.
  std::function<std::vector<Check>(const ScenarioContext&)> extra_checks;
};

struct ScenarioRunOptions {
  /// monte_carlo: the analytic value comes from the design engine.
  AveragingMethod method = AveragingMethod::Design;
  std::size_t mc_samples = 0;  // 0 skips the sampled estimate
  std::uint64_t seed = 7;
  std::size_t quadrature_nodes = 24;
  std::size_t shards = 4;
};

struct ScenarioResult {
  std::string id;
  ScenarioMode mode;
  AveragingMethod method;
  double analytic;
  double paper_value;
  double tolerance;
  std::optional<double> mc_estimate;
  std::optional<double> mc_stderr;
  double cross_talk;
  bool pass;
  std::string citation;
  std::vector<std::string> metadata;
  std::vector<Check> checks;
};

/// Registered scenario ids, in registry order.
const std::vector<std::string>& scenario_ids();

/// Throws std::invalid_argument for an unknown id.
Scenario build_scenario(std::string_view id);

/// Success probability (unambiguous) or error probability (min_error) of the
/// scenario's measurement on the given output states.
double figure_of_merit(const Scenario& s, const DensityMatrix& rho1, const DensityMatrix& rho2);

/// pass iff |analytic - paper_value| <= tolerance, the sampled estimate (when
/// requested) lies within four standard errors of the analytic value, an
/// unambiguous scenario has cross-talk <= 1e-9, and every extra check passes.
ScenarioResult run_scenario(const Scenario& s, const ScenarioRunOptions& options = {});

/// Runs every registered scenario (concurrently); results in registry order.
std::vector<ScenarioResult> run_all(const ScenarioRunOptions& options = {});

/// Order finding with two U references, rewritten as the identical-pair
/// problem by reordering the wires (A,B,C1,C2) -> (C1,C2,A,B) and exchanging
/// U and V in the second hypothesis.
struct EquivalenceWitness {
  std::vector<std::size_t> permutation;  // wire i moves to permutation[i]
  BoxPattern order_pattern1;             // U U U V
  BoxPattern order_pattern2;             // U U V U
  BoxPattern mapped_pattern1;            // order_pattern1 reordered
  BoxPattern mapped_pattern2;            // order_pattern2 reordered, U <-> V
  BoxPattern pair_pattern1;              // identical-pair hypotheses
  BoxPattern pair_pattern2;
  double deviation_first;   // reordered rho(order 1) vs identical-pair rho2
  double deviation_second;  // reordered rho(order 2) vs identical-pair rho1
  bool patterns_match;
  bool pass;  // patterns match and both deviations <= 1e-10
};

EquivalenceWitness equivalence_witness_order_refs(
    AveragingMethod method = AveragingMethod::Design, const AveragingOptions& options = {});

}  // namespace progbox
