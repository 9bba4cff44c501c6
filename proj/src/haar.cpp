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

#include "progbox/haar.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>

#include <gsl/gsl_integration.h>

namespace progbox {

namespace {

constexpr double kPi = std::numbers::pi;

// Removes the global phase so that the first non-negligible entry (row-major)
// is real and positive.
Gate canonical_phase(const Gate& g) {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (std::abs(g(r, c)) > 1e-9) return g * (std::abs(g(r, c)) / g(r, c));
    }
  }
  return g;
}

void conjugate_wires(ComplexMatrix& m, const Gate& g, std::span<const std::size_t> wires) {
  for (std::size_t w : wires) conjugate_wire(m, g, w);
}

ComplexMatrix average_over(const ComplexMatrix& m, std::span<const std::size_t> wires,
                           std::span<const WeightedGate> gates) {
  if (wires.empty()) return m;
  ComplexMatrix acc = ComplexMatrix::Zero(m.rows(), m.cols());
  ComplexMatrix work;
  for (const WeightedGate& wg : gates) {
    work = m;
    conjugate_wires(work, wg.gate, wires);
    acc += wg.weight * work;
  }
  return acc;
}

std::size_t integer_power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<std::size_t> shard_sizes(std::size_t samples, std::size_t shards) {
  if (shards == 0) throw std::invalid_argument("Monte Carlo: shard count must be positive");
  std::vector<std::size_t> sizes(shards, samples / shards);
  for (std::size_t k = 0; k < samples % shards; ++k) ++sizes[k];
  return sizes;
}

// Runs `body(rng, count)` once per shard, concurrently, returning the shard
// results in shard order.
template <class Body>
auto run_shards(std::size_t samples, std::uint64_t seed, std::size_t shards, Body body) {
  using Result = decltype(body(std::declval<std::mt19937_64&>(), std::size_t{}));
  const std::vector<std::size_t> sizes = shard_sizes(samples, shards);
  std::vector<std::future<Result>> futures;
  futures.reserve(shards);
  for (std::size_t k = 0; k < shards; ++k) {
    futures.push_back(std::async(std::launch::async, [&body, seed, k, n = sizes[k]] {
      std::mt19937_64 rng(seed + k);
      return body(rng, n);
    }));
  }
  std::vector<Result> results;
  results.reserve(shards);
  for (auto& f : futures) results.push_back(f.get());
  return results;
}

struct MatrixMoments {
  ComplexMatrix sum;
  Eigen::MatrixXd sum_sq_re;
  Eigen::MatrixXd sum_sq_im;
};

OperatorAverage monte_carlo_operator(const ComplexMatrix& x, const BoxPattern& pattern,
                                     const AveragingOptions& options) {
  const std::size_t n = options.mc_samples;
  if (n < 2) throw std::invalid_argument("Monte Carlo averaging needs at least two samples");
  const std::vector<std::size_t> u_wires = pattern.wires(Box::RefU);
  const std::vector<std::size_t> v_wires = pattern.wires(Box::RefV);
  const Eigen::Index d = x.rows();

  auto shard = [&](std::mt19937_64& rng, std::size_t count) {
    MatrixMoments acc{ComplexMatrix::Zero(d, d), Eigen::MatrixXd::Zero(d, d),
                      Eigen::MatrixXd::Zero(d, d)};
    ComplexMatrix work;
    for (std::size_t s = 0; s < count; ++s) {
      const Gate u = sample_haar_su2(rng);
      const Gate v = sample_haar_su2(rng);
      work = x;
      conjugate_wires(work, u, u_wires);
      conjugate_wires(work, v, v_wires);
      acc.sum += work;
      acc.sum_sq_re += work.real().cwiseAbs2();
      acc.sum_sq_im += work.imag().cwiseAbs2();
    }
    return acc;
  };
  const std::vector<MatrixMoments> parts = run_shards(n, options.seed, options.shards, shard);

  MatrixMoments total{ComplexMatrix::Zero(d, d), Eigen::MatrixXd::Zero(d, d),
                      Eigen::MatrixXd::Zero(d, d)};
  for (const MatrixMoments& p : parts) {
    total.sum += p.sum;
    total.sum_sq_re += p.sum_sq_re;
    total.sum_sq_im += p.sum_sq_im;
  }
  const double nn = static_cast<double>(n);
  OperatorAverage out;
  out.value = total.sum / nn;
  out.method = AveragingMethod::MonteCarlo;
  out.samples = n;
  out.entry_stderr = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double mre = out.value(i, j).real();
      const double mim = out.value(i, j).imag();
      const double var_re = std::max(0.0, (total.sum_sq_re(i, j) - nn * mre * mre) / (nn - 1.0));
      const double var_im = std::max(0.0, (total.sum_sq_im(i, j) - nn * mim * mim) / (nn - 1.0));
      out.entry_stderr(i, j) = std::sqrt(std::max(var_re, var_im) / nn);
    }
  }
  out.stderr_bound = out.entry_stderr.maxCoeff();
  return out;
}

}  // namespace

BoxPattern BoxPattern::parse(std::string_view text) {
  std::vector<Box> labels;
  for (char c : text) {
    switch (c) {
      case 'U': labels.push_back(Box::RefU); break;
      case 'V': labels.push_back(Box::RefV); break;
      case 'I': labels.push_back(Box::Idle); break;
      default: throw std::invalid_argument("BoxPattern: unknown label '" + std::string(1, c) + "'");
    }
  }
  return BoxPattern(std::move(labels));
}

std::size_t BoxPattern::count(Box b) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), b));
}

std::vector<std::size_t> BoxPattern::wires(Box b) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == b) out.push_back(i);
  }
  return out;
}

BoxPattern BoxPattern::permuted(std::span<const std::size_t> perm) const {
  check_permutation(perm, labels_.size());
  std::vector<Box> out(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) out[perm[i]] = labels_[i];
  return BoxPattern(std::move(out));
}

BoxPattern BoxPattern::swapped_uv() const {
  std::vector<Box> out = labels_;
  for (Box& b : out) {
    if (b == Box::RefU) {
      b = Box::RefV;
    } else if (b == Box::RefV) {
      b = Box::RefU;
    }
  }
  return BoxPattern(std::move(out));
}

std::string BoxPattern::to_string() const {
  std::string s;
  for (Box b : labels_) s += b == Box::RefU ? 'U' : b == Box::RefV ? 'V' : 'I';
  return s;
}

double su2_haar_density(const Su2Params& p) {
  const double s = std::sin(p.theta / 2.0);
  return s * s * std::sin(p.mu) / (4.0 * kPi * kPi);
}

Gate su2_from_params(const Su2Params& p) {
  if (!(p.theta >= 0.0 && p.theta <= 2.0 * kPi) || !(p.phi >= 0.0 && p.phi <= 2.0 * kPi) ||
      !(p.mu >= 0.0 && p.mu <= kPi)) {
    throw std::invalid_argument("su2_from_params: parameters out of range");
  }
  const double nx = std::sin(p.mu) * std::cos(p.phi);
  const double ny = std::sin(p.mu) * std::sin(p.phi);
  const double nz = std::cos(p.mu);
  const double c = std::cos(p.theta / 2.0);
  const double s = std::sin(p.theta / 2.0);
  const Complex i(0.0, 1.0);
  Gate axis;
  axis << nz, Complex(nx, -ny), Complex(nx, ny), -nz;
  return c * Gate::Identity() - i * s * axis;
}

Gate sample_haar_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  double q[4];
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& x : q) {
      x = normal(rng);
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& x : q) x *= inv;
  Gate g;
  g << Complex(q[0], q[1]), Complex(q[2], q[3]), Complex(-q[2], q[3]), Complex(q[0], -q[1]);
  return g;
}

const std::vector<Gate>& clifford_group() {
  static const std::vector<Gate> group = [] {
    const double r = 1.0 / std::sqrt(2.0);
    Gate h;
    h << r, r, r, -r;
    Gate s;
    s << 1.0, 0.0, 0.0, Complex(0.0, 1.0);
    std::vector<Gate> elements{Gate::Identity()};
    // Breadth-first closure; elements are compared modulo global phase.
    for (std::size_t next = 0; next < elements.size(); ++next) {
      for (const Gate& gen : {h, s}) {
        const Gate candidate = canonical_phase(gen * elements[next]);
        const bool known = std::any_of(elements.begin(), elements.end(), [&](const Gate& e) {
          return (e - candidate).cwiseAbs().maxCoeff() < 1e-9;
        });
        if (!known) elements.push_back(candidate);
        if (elements.size() > 24) {
          throw std::logic_error("clifford_group: closure exceeded 24 elements");
        }
      }
    }
    if (elements.size() != 24) throw std::logic_error("clifford_group: closure is not 24 elements");
    return elements;
  }();
  return group;
}

std::vector<WeightedGate> su2_quadrature(std::size_t nodes_per_angle) {
  if (nodes_per_angle < 1) throw std::invalid_argument("su2_quadrature: need at least one node");
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(nodes_per_angle);
  if (table == nullptr) throw std::runtime_error("su2_quadrature: GSL table allocation failed");
  struct Node {
    double x;
    double w;
  };
  auto nodes_on = [&](double a, double b) {
    std::vector<Node> out(nodes_per_angle);
    for (std::size_t i = 0; i < nodes_per_angle; ++i) {
      gsl_integration_glfixed_point(a, b, i, &out[i].x, &out[i].w, table);
    }
    return out;
  };
  const std::vector<Node> thetas = nodes_on(0.0, 2.0 * kPi);
  const std::vector<Node> phis = nodes_on(0.0, 2.0 * kPi);
  const std::vector<Node> mus = nodes_on(0.0, kPi);
  gsl_integration_glfixed_table_free(table);

  std::vector<WeightedGate> out;
  out.reserve(nodes_per_angle * nodes_per_angle * nodes_per_angle);
  double total = 0.0;
  for (const Node& t : thetas) {
    for (const Node& f : phis) {
      for (const Node& m : mus) {
        const Su2Params p{t.x, f.x, m.x};
        const double w = t.w * f.w * m.w * su2_haar_density(p);
        out.push_back({su2_from_params(p), w});
        total += w;
      }
    }
  }
  for (WeightedGate& g : out) g.weight /= total;
  return out;
}

std::string_view to_string(AveragingMethod m) {
  switch (m) {
    case AveragingMethod::Design: return "design";
    case AveragingMethod::Quadrature: return "quadrature";
    case AveragingMethod::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

std::optional<AveragingMethod> parse_averaging_method(std::string_view text) {
  if (text == "design") return AveragingMethod::Design;
  if (text == "quadrature") return AveragingMethod::Quadrature;
  if (text == "monte_carlo") return AveragingMethod::MonteCarlo;
  return std::nullopt;
}

OperatorAverage average_operator(const ComplexMatrix& x, const BoxPattern& pattern,
                                 AveragingMethod method, const AveragingOptions& options) {
  if (x.rows() != x.cols() || qubit_count(static_cast<std::size_t>(x.rows())) != pattern.size()) {
    throw std::invalid_argument("average: pattern length " + std::to_string(pattern.size()) +
                                " does not match the operator's qubit count");
  }
  const std::vector<std::size_t> u_wires = pattern.wires(Box::RefU);
  const std::vector<std::size_t> v_wires = pattern.wires(Box::RefV);
  const std::size_t labels_used = (u_wires.empty() ? 0 : 1) + (v_wires.empty() ? 0 : 1);

  if (method == AveragingMethod::MonteCarlo) return monte_carlo_operator(x, pattern, options);

  std::vector<WeightedGate> rule;
  std::size_t per_label = 0;
  if (method == AveragingMethod::Design) {
    if (u_wires.size() > kDesignMaxCopies || v_wires.size() > kDesignMaxCopies) {
      throw std::invalid_argument("average: the Clifford design is exact for at most " +
                                  std::to_string(kDesignMaxCopies) + " copies per unitary (pattern " +
                                  pattern.to_string() + ")");
    }
    const auto& group = clifford_group();
    for (const Gate& g : group) rule.push_back({g, 1.0 / static_cast<double>(group.size())});
    per_label = group.size();
  } else {
    rule = su2_quadrature(options.quadrature_nodes);
    per_label = rule.size();
  }

  ComplexMatrix value = x;
  if (options.v_first) {
    value = average_over(value, v_wires, rule);
    value = average_over(value, u_wires, rule);
  } else {
    value = average_over(value, u_wires, rule);
    value = average_over(value, v_wires, rule);
  }
  OperatorAverage out;
  out.value = std::move(value);
  out.method = method;
  out.samples = integer_power(per_label, labels_used);
  return out;
}

AverageResult average_pattern(const PureState& psi, const BoxPattern& pattern,
                              AveragingMethod method, const AveragingOptions& options) {
  OperatorAverage avg = average_operator(psi.projector(), pattern, method, options);
  return {DensityMatrix(hermitian_part(avg.value)), method, avg.samples, avg.stderr_bound};
}

ScalarEstimate monte_carlo_expectation(const UnitaryPairStatistic& stat, std::size_t samples,
                                       std::uint64_t seed, std::size_t shards) {
  if (samples < 2) throw std::invalid_argument("Monte Carlo estimate needs at least two samples");
  struct Sums {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  auto shard = [&stat](std::mt19937_64& rng, std::size_t count) {
    Sums s;
    for (std::size_t i = 0; i < count; ++i) {
      const Gate u = sample_haar_su2(rng);
      const Gate v = sample_haar_su2(rng);
      const double x = stat(u, v);
      s.sum += x;
      s.sum_sq += x * x;
    }
    return s;
  };
  Sums total;
  for (const Sums& s : run_shards(samples, seed, shards, shard)) {
    total.sum += s.sum;
    total.sum_sq += s.sum_sq;
  }
  const double n = static_cast<double>(samples);
  const double mean = total.sum / n;
  const double var = std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n), samples};
}

bool TwirlReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const TwirlCheck& c) { return c.pass; });
}

TwirlReport twirl_identity_suite(const AveragingOptions& options) {
  struct Identity {
    std::string name;
    ComplexMatrix input;
    BoxPattern pattern;
    ComplexMatrix expected;
  };
  const ComplexVector k0 = basis_vector("0");
  const ComplexVector k1 = basis_vector("1");
  const ComplexVector k00 = basis_vector("00");
  const ComplexVector k11 = basis_vector("11");
  const ComplexVector singlet = bell(BellKind::PsiMinus).amplitudes();
  const PairProjectors p2 = sym_antisym_projectors({0, 1}, 2);

  const std::vector<Identity> identities{
      {"U|0><0|U+ = I/2", k0 * k0.adjoint(), BoxPattern::parse("U"), 0.5 * identity(2)},
      {"U|1><1|U+ = I/2", k1 * k1.adjoint(), BoxPattern::parse("U"), 0.5 * identity(2)},
      {"U|0><1|U+ = 0", k0 * k1.adjoint(), BoxPattern::parse("U"), ComplexMatrix::Zero(2, 2)},
      {"UU|00><00|U+U+ = P_sym/3", k00 * k00.adjoint(), BoxPattern::parse("UU"),
       p2.symmetric / 3.0},
      {"UU|00><11|U+U+ = 0", k00 * k11.adjoint(), BoxPattern::parse("UU"),
       ComplexMatrix::Zero(4, 4)},
      {"UU|psi-><00|U+U+ = 0", singlet * k00.adjoint(), BoxPattern::parse("UU"),
       ComplexMatrix::Zero(4, 4)},
  };

  TwirlReport report;
  for (AveragingMethod method :
       {AveragingMethod::Design, AveragingMethod::Quadrature, AveragingMethod::MonteCarlo}) {
    for (const Identity& id : identities) {
      const OperatorAverage avg = average_operator(id.input, id.pattern, method, options);
      const double dev = max_abs_diff(avg.value, id.expected);
      double allowed = 0.0;
      switch (method) {
        case AveragingMethod::Design: allowed = 1e-12; break;
        case AveragingMethod::Quadrature: allowed = 1e-9; break;
        case AveragingMethod::MonteCarlo: allowed = 4.0 * avg.stderr_bound + 1e-12; break;
      }
      report.checks.push_back({id.name, method, dev, avg.stderr_bound, allowed, dev <= allowed});
    }
  }
  return report;
}

}  // namespace progbox
