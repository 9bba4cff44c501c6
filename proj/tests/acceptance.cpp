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

// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "progbox/discrimination.hpp"
#include "progbox/fixtures.hpp"
#include "progbox/haar.hpp"
#include "progbox/scenarios.hpp"

using namespace progbox;

namespace {

// Tolerances pinned by the acceptance contract.
constexpr double kExact = 1e-9;
constexpr double kTight = 1e-12;
constexpr double kTrace = 1e-10;
constexpr double kAnnihilation = 1e-9;
constexpr double kPublishedWindow = 0.005;
constexpr double kPublishedSubspace = 0.43;
constexpr double kPairwiseSuccess = 0.375;
constexpr double kEngineAgreement = 1e-8;
constexpr double kSigmas = 4.0;
constexpr std::size_t kMcSamples = 100000;
constexpr std::uint64_t kMcSeed = 7;
constexpr double kCriterion1Seconds = 1.0;
constexpr double kCriterion9Seconds = 60.0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
  void near(double value, double expected, double tol, const std::string& what) {
    const bool ok = std::abs(value - expected) <= tol;
    detail << ' ' << what << '=' << cli::format12(value);
    expect(ok, what + " expected " + cli::format12(expected) + " +- " + cli::format12(tol));
  }
};

const Check& check_named(const ScenarioResult& r, const std::string& name) {
  for (const Check& c : r.checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range(r.id + ": no check named '" + name + "'");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScenarioResult design(const std::string& id) { return run_scenario(build_scenario(id)); }

void criterion1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioResult r = design("one-ref-unambiguous");
  const double elapsed = seconds_since(t0);
  o.near(r.analytic, 3.0 / 8.0, kExact, "p_success");
  o.near(check_named(r, "failure probability").value, 5.0 / 8.0, kExact, "p_fail");
  o.near(check_named(r, "symmetric-input success").value, 1.0 / 8.0, kExact, "symmetric_input");
  o.detail << " runtime=" << cli::format12(elapsed) << "s";
  o.expect(elapsed < kCriterion1Seconds, "runtime under 1 s");
}

void criterion2(Outcome& o) {
  const DensityMatrix pa(sym_antisym_projectors({0, 1}, 2).antisymmetric);
  const DensityMatrix mixed(ComplexMatrix::Identity(4, 4) / 4.0);
  o.near(helstrom(pa, mixed).p_error, 1.0 / 8.0, kTight, "helstrom");
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  double worst = 0.0;
  for (const SingletWeightRow& row : singlet_weight_scan(grid)) {
    worst = std::max(worst, std::abs(row.trace_norm - 2.0 * std::abs(0.25 - row.singlet_weight)));
  }
  o.near(worst, 0.0, kTrace, "scan_max_dev");
}

void criterion3(Outcome& o) {
  o.near(design("two-ref-singlet").analytic, 3.0 / 8.0, kExact, "singlet");
  const ScenarioResult sym = design("two-ref-symmetric");
  o.near(sym.analytic, 1.0 / 6.0, kExact, "symmetric");
  o.expect(validate_povm(build_scenario("two-ref-symmetric").povm).valid,
           "(2/3) P_anti POVM complete and PSD");
  const ScenarioResult three = design("two-ref-minerror-3q");
  o.near(three.analytic, (1.0 - 1.0 / std::sqrt(3.0)) / 2.0, kTight, "minerror_3q");
  o.near(check_named(three, "3x3 block eigenvalues +-1/(4 sqrt3), 0").value, 0.0, kTight,
         "block_eig_dev");
}

void criterion4(Outcome& o) {
  const ScenarioResult r = design("two-ref-4q-pairwise");
  o.near(check_named(r, "Tr(Pi1 rho1)").value, 3.0 / 8.0, kTrace, "T11");
  o.near(check_named(r, "Tr(Pi2 rho2)").value, 3.0 / 8.0, kTrace, "T22");
  o.near(check_named(r, "Tr(Pi1 rho2)").value, 0.0, kTrace, "T12");
  o.near(check_named(r, "Tr(Pi2 rho1)").value, 0.0, kTrace, "T21");
}

void criterion5(Outcome& o) {
  const Scenario s = build_scenario("two-ref-4q-subspace");
  const ScenarioResult r = run_scenario(s);
  o.expect(validate_povm(s.povm).valid, "validate_povm");
  o.near(check_named(r, "identify elements annihilate the opposing range").value, 0.0, kAnnihilation,
         "annihilation");
  const ReferenceValue& frozen = reference("two-ref-4q-subspace.success-frozen");
  for (const char* name : {"Tr(Pi1 rho1)", "Tr(Pi2 rho2)"}) {
    const double v = check_named(r, std::string(name) + " vs frozen value").value;
    o.near(v, kPublishedSubspace, kPublishedWindow, std::string(name) + "_vs_0.43");
    o.expect(v > kPairwiseSuccess + kExact, std::string(name) + " strictly greater than 0.375");
    o.near(v, frozen.value, kExact, std::string(name) + "_vs_frozen");
  }
}

void criterion6(Outcome& o) {
  o.near(design("pair-same-unambiguous").analytic, 3.0 / 4.0, kTrace, "unambiguous");
  o.near(design("pair-same-minerror").analytic, 1.0 / 8.0, kTrace, "minerror");
}

void criterion7(Outcome& o) {
  const EquivalenceWitness w = equivalence_witness_order_refs();
  o.expect(w.patterns_match, "patterns match after reorder and relabel");
  o.near(std::max(w.deviation_first, w.deviation_second), 0.0, kTrace, "max_entry_dev");
}

void criterion8(Outcome& o) {
  const ScenarioResult r = design("order-uv-refs");
  o.near(check_named(r, "Tr(Pi2 rho2)").value, 2.0 / 3.0, kTrace, "T22");
  o.near(r.analytic, 1.0 / 3.0, kTrace, "success");
  o.near(check_named(r, "rho1 equals the unaveraged double-singlet projector").value, 0.0, kTrace,
         "rho1_dev");
}

void criterion9(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  AveragingOptions opts;
  opts.quadrature_nodes = 24;
  opts.mc_samples = kMcSamples;
  opts.seed = kMcSeed;
  const TwirlReport report = twirl_identity_suite(opts);
  const double elapsed = seconds_since(t0);
  int passed = 0;
  for (const TwirlCheck& c : report.checks) {
    if (c.pass) {
      ++passed;
    } else {
      o.expect(false, c.name + " under " + std::string(to_string(c.method)));
    }
  }
  o.detail << " identities_passed=" << passed << '/' << report.checks.size()
           << " runtime=" << cli::format12(elapsed) << "s";
  o.expect(report.checks.size() == 18, "six identities under three engines");
  o.expect(elapsed < kCriterion9Seconds, "runtime under 60 s");
}

void criterion10(Outcome& o) {
  ScenarioRunOptions q;
  q.method = AveragingMethod::Quadrature;
  ScenarioRunOptions mc;
  mc.method = AveragingMethod::MonteCarlo;
  mc.mc_samples = kMcSamples;
  mc.seed = kMcSeed;
  const auto d = run_all();
  const auto qr = run_all(q);
  const auto mr = run_all(mc);
  double worst_quad = 0.0;
  double worst_sigma = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    worst_quad = std::max(worst_quad, std::abs(d[i].analytic - qr[i].analytic));
    const double sigma = std::abs(*mr[i].mc_estimate - d[i].analytic) / *mr[i].mc_stderr;
    worst_sigma = std::max(worst_sigma, sigma);
  }
  o.near(worst_quad, 0.0, kEngineAgreement, "max|design-quadrature|");
  o.detail << " max_mc_sigma=" << cli::format12(worst_sigma);
  o.expect(worst_sigma <= kSigmas, "Monte Carlo within 4 standard errors");

  const std::string samples = std::to_string(kMcSamples);
  const std::string seed = std::to_string(kMcSeed);
  const char* argv[] = {"progbox",  "--all",        "--method",      "monte_carlo", "--samples",
                        samples.c_str(), "--seed", seed.c_str(), "--format",    "json"};
  const int argc = static_cast<int>(std::size(argv));
  std::ostringstream out1, out2, err;
  cli::run_cli(argc, argv, out1, err);
  cli::run_cli(argc, argv, out2, err);
  o.expect(!out1.str().empty() && out1.str() == out2.str(), "repeated runs byte-identical");
  o.detail << " repeat_identical=" << (out1.str() == out2.str() ? "yes" : "no");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"single reference, unambiguous", criterion1},
      {"single reference, minimum error", criterion2},
      {"two references, three-qubit strategies", criterion3},
      {"two references, pairwise four-qubit POVM", criterion4},
      {"two references, range-discriminating POVM", criterion5},
      {"identical pair of unlabelled boxes", criterion6},
      {"order finding with two U references, equivalence", criterion7},
      {"order finding with U and V references", criterion8},
      {"Haar twirl identities", criterion9},
      {"engine concordance", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first
              << " |" << o.detail.str() << '\n';
  }
  std::cout << (criteria.size() - failures) << '/' << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
