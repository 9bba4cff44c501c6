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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracle.hpp"
#include "progbox/haar.hpp"

using namespace progbox;
using Catch::Matchers::WithinAbs;

namespace {

bool equal_up_to_phase(const Gate& a, const Gate& b) {
  const Complex overlap = (a.adjoint() * b).trace() / 2.0;
  return std::abs(std::abs(overlap) - 1.0) < 1e-12;
}

double unitarity_error(const Gate& g) {
  return (g.adjoint() * g - Gate::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("BoxPattern parsing and relabelling") {
  const BoxPattern p = BoxPattern::parse("UVUI");
  CHECK(p.size() == 4);
  CHECK(p.count(Box::RefU) == 2);
  CHECK(p.wires(Box::RefV) == std::vector<std::size_t>{1});
  CHECK(p.to_string() == "UVUI");
  CHECK(p.swapped_uv().to_string() == "VUVI");
  const std::vector<std::size_t> perm{2, 3, 0, 1};
  CHECK(BoxPattern::parse("UUUV").permuted(perm).to_string() == "UVUU");
  CHECK_THROWS_AS(BoxPattern::parse("UXV"), std::invalid_argument);
}

TEST_CASE("Clifford group: 24 distinct unitaries closed under products") {
  const auto& group = clifford_group();
  REQUIRE(group.size() == 24);
  for (std::size_t i = 0; i < group.size(); ++i) {
    CHECK(unitarity_error(group[i]) < 1e-14);
    for (std::size_t j = i + 1; j < group.size(); ++j) {
      CHECK_FALSE(equal_up_to_phase(group[i], group[j]));
    }
  }
  for (const Gate& a : group) {
    for (const Gate& b : group) {
      const Gate ab = a * b;
      bool found = false;
      for (const Gate& c : group) found = found || equal_up_to_phase(ab, c);
      CHECK(found);
    }
  }
}

TEST_CASE("SU(2) parameterization") {
  const Gate g = su2_from_params({1.1, 0.3, 2.0});
  CHECK(unitarity_error(g) < 1e-14);
  CHECK_THAT(std::abs(g.determinant() - Complex(1.0)), WithinAbs(0.0, 1e-14));
  // theta = 2 pi about any axis is -I.
  CHECK((su2_from_params({2.0 * M_PI, 0.4, 1.0}) + Gate::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(su2_from_params({-0.1, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(su2_from_params({0.0, 0.0, 4.0}), std::invalid_argument);
  CHECK_THAT(su2_haar_density({M_PI, 0.0, M_PI / 2.0}), WithinAbs(1.0 / (4.0 * M_PI * M_PI), 1e-15));
}

TEST_CASE("Haar samples are special unitary and seed-reproducible") {
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    const Gate ga = sample_haar_su2(a);
    CHECK(unitarity_error(ga) < 1e-14);
    CHECK(std::abs(ga.determinant() - Complex(1.0)) < 1e-14);
    CHECK(ga == sample_haar_su2(b));
  }
}

TEST_CASE("quadrature weights form a probability rule") {
  const auto rule = su2_quadrature(8);
  CHECK(rule.size() == 8 * 8 * 8);
  double total = 0.0;
  for (const WeightedGate& w : rule) {
    CHECK(w.weight >= 0.0);
    total += w.weight;
  }
  CHECK_THAT(total, WithinAbs(1.0, 1e-14));
}

TEST_CASE("two-copy twirl matches the Schur-Weyl formula") {
  std::mt19937_64 rng(31);
  const BoxPattern uu = BoxPattern::parse("UU");
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix x = oracle::random_matrix(4, 4, rng);
    const ComplexMatrix expected = oracle::two_copy_twirl(x);
    CHECK(max_abs_diff(average_operator(x, uu, AveragingMethod::Design).value, expected) < 1e-12);
    CHECK(max_abs_diff(average_operator(x, uu, AveragingMethod::Quadrature).value, expected) < 1e-9);
  }
}

TEST_CASE("independent U and V twirls factorize") {
  std::mt19937_64 rng(32);
  // U on wire 0, V on wire 1: each marginal becomes maximally mixed.
  const ComplexMatrix a = oracle::random_matrix(2, 2, rng);
  const ComplexMatrix b = oracle::random_matrix(2, 2, rng);
  const ComplexMatrix x = oracle::kron(a, b);
  const ComplexMatrix expected = a.trace() * b.trace() * ComplexMatrix::Identity(4, 4) / 4.0;
  for (AveragingMethod m : {AveragingMethod::Design, AveragingMethod::Quadrature}) {
    CHECK(max_abs_diff(average_operator(x, BoxPattern::parse("UV"), m).value, expected) < 1e-9);
  }
}

TEST_CASE("design and quadrature agree on three copies") {
  std::mt19937_64 rng(33);
  const ComplexMatrix x = oracle::random_matrix(16, 16, rng);
  const BoxPattern p = BoxPattern::parse("UUVU");
  const ComplexMatrix d = average_operator(x, p, AveragingMethod::Design).value;
  const ComplexMatrix q = average_operator(x, p, AveragingMethod::Quadrature).value;
  CHECK(max_abs_diff(d, q) < 1e-9);
}

TEST_CASE("design engine refuses four copies") {
  const ComplexMatrix x = ComplexMatrix::Identity(16, 16);
  CHECK_THROWS_AS(average_operator(x, BoxPattern::parse("UUUU"), AveragingMethod::Design),
                  std::invalid_argument);
  CHECK_NOTHROW(average_operator(x, BoxPattern::parse("UUUU"), AveragingMethod::Quadrature));
  CHECK_THROWS_AS(average_operator(x, BoxPattern::parse("UUU"), AveragingMethod::Design),
                  std::invalid_argument);
}

TEST_CASE("averaging order does not matter") {
  std::mt19937_64 rng(34);
  AveragingOptions v_first;
  v_first.v_first = true;
  for (int trial = 0; trial < 5; ++trial) {
    const PureState psi(oracle::random_state(4, rng));
    const BoxPattern p = BoxPattern::parse("UVUV");
    for (AveragingMethod m : {AveragingMethod::Design, AveragingMethod::Quadrature}) {
      const ComplexMatrix a = average_pattern(psi, p, m).rho.matrix();
      const ComplexMatrix b = average_pattern(psi, p, m, v_first).rho.matrix();
      CHECK(max_abs_diff(a, b) < 1e-12);
    }
  }
}

TEST_CASE("averaging is covariant under a common conjugation") {
  // E[W (G X G^dag) W^dag] = E[W X W^dag] for G = g on every U wire, by invariance.
  std::mt19937_64 rng(35);
  const BoxPattern p = BoxPattern::parse("UVU");
  const ComplexMatrix x = oracle::random_density(3, rng);
  const Gate g = oracle::random_su2(rng);
  ComplexMatrix y = x;
  conjugate_wire(y, g, 0);
  conjugate_wire(y, g, 2);
  for (AveragingMethod m : {AveragingMethod::Design, AveragingMethod::Quadrature}) {
    CHECK(max_abs_diff(average_operator(x, p, m).value, average_operator(y, p, m).value) < 1e-9);
  }
}

TEST_CASE("averaging is linear") {
  std::mt19937_64 rng(36);
  const BoxPattern p = BoxPattern::parse("UVV");
  const ComplexMatrix x = oracle::random_matrix(8, 8, rng);
  const ComplexMatrix y = oracle::random_matrix(8, 8, rng);
  const Complex a(0.3, -1.2);
  const ComplexMatrix lhs = average_operator(a * x + y, p, AveragingMethod::Design).value;
  const ComplexMatrix rhs = a * average_operator(x, p, AveragingMethod::Design).value +
                            average_operator(y, p, AveragingMethod::Design).value;
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("Monte Carlo averaging is deterministic and reports standard errors") {
  AveragingOptions opts;
  opts.mc_samples = 4000;
  opts.seed = 99;
  const ComplexMatrix x = oracle::ket("00") * oracle::ket("00").adjoint();
  const BoxPattern uu = BoxPattern::parse("UU");
  const OperatorAverage a = average_operator(x, uu, AveragingMethod::MonteCarlo, opts);
  const OperatorAverage b = average_operator(x, uu, AveragingMethod::MonteCarlo, opts);
  CHECK(max_abs_diff(a.value, b.value) == 0.0);
  CHECK(a.samples == 4000);
  CHECK(a.stderr_bound > 0.0);
  CHECK(max_abs_diff(a.value, oracle::two_copy_twirl(x)) <= 4.0 * a.stderr_bound + 1e-12);
  opts.seed = 100;
  const OperatorAverage c = average_operator(x, uu, AveragingMethod::MonteCarlo, opts);
  CHECK(max_abs_diff(a.value, c.value) > 0.0);
}

TEST_CASE("scalar Monte Carlo expectation") {
  // E|<0|U|0>|^2 = 1/2 under Haar measure.
  const auto stat = [](const Gate& u, const Gate&) { return std::norm(u(0, 0)); };
  const ScalarEstimate e = monte_carlo_expectation(stat, 20000, 3, 4);
  CHECK(e.samples == 20000);
  CHECK(std::abs(e.mean - 0.5) <= 4.0 * e.stderr_of_mean);
  const ScalarEstimate again = monte_carlo_expectation(stat, 20000, 3, 4);
  CHECK(e.mean == again.mean);
  CHECK_THROWS_AS(monte_carlo_expectation(stat, 0, 3, 4), std::invalid_argument);
}

TEST_CASE("averaging method names round-trip") {
  for (AveragingMethod m :
       {AveragingMethod::Design, AveragingMethod::Quadrature, AveragingMethod::MonteCarlo}) {
    CHECK(parse_averaging_method(to_string(m)) == m);
  }
  CHECK_FALSE(parse_averaging_method("exact").has_value());
}

TEST_CASE("twirl identity suite passes under the exact engines") {
  AveragingOptions opts;
  opts.mc_samples = 20000;
  const TwirlReport report = twirl_identity_suite(opts);
  for (const TwirlCheck& c : report.checks) {
    INFO(c.name << " [" << to_string(c.method) << "] deviation " << c.max_deviation);
    CHECK(c.pass);
  }
  CHECK(report.all_pass());
}
