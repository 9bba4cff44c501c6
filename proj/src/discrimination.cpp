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

#include "progbox/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace progbox {

namespace {

constexpr double kZeroEigenvalue = 1e-12;
constexpr double kSharedCosine = 1.0 - 1e-9;
constexpr double kOrthogonalCosine = 1e-9;

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  // Tr(AB) without forming the product.
  return (a.transpose().cwiseProduct(b)).sum().real();
}

void check_priors(double p1, double p2) {
  if (p1 < 0.0 || p2 < 0.0 || std::abs(p1 + p2 - 1.0) > 1e-12) {
    throw std::invalid_argument("priors must be nonnegative and sum to one");
  }
}

// Smallest eigenvalue of the failure operator restricted to one Jordan block,
// in the orthonormal basis {u, w} with w the part of the partner orthogonal to
// u. Both rank-one detectors carry the same weight.
double block_failure_min_eig(double cosine, double weight) {
  const double s = std::sqrt(1.0 - cosine * cosine);
  // I - weight (s, -c)(s, -c)^T - weight (0, 1)(0, 1)^T
  const double a = 1.0 - weight * s * s;
  const double b = weight * s * cosine;
  const double d = 1.0 - weight * cosine * cosine - weight;
  return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + b * b);
}

double max_block_weight(double cosine) {
  double lo = 0.0;
  double hi = 1.0;
  if (block_failure_min_eig(cosine, hi) >= 0.0) return hi;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (block_failure_min_eig(cosine, mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

std::size_t Povm::dim() const {
  return elements.empty() ? 0 : static_cast<std::size_t>(elements.front().op.rows());
}

const ComplexMatrix& Povm::at(const std::string& label) const {
  for (const PovmElement& e : elements) {
    if (e.label == label) return e.op;
  }
  throw std::out_of_range("Povm: no element labelled '" + label + "'");
}

bool Povm::contains(const std::string& label) const {
  return std::any_of(elements.begin(), elements.end(),
                     [&](const PovmElement& e) { return e.label == label; });
}

Povm complete_with_failure(std::vector<PovmElement> elements) {
  if (elements.empty()) throw std::invalid_argument("complete_with_failure: no elements");
  ComplexMatrix rest = identity(static_cast<std::size_t>(elements.front().op.rows()));
  for (const PovmElement& e : elements) rest -= e.op;
  elements.push_back({kFail, hermitian_part(rest)});
  return Povm{std::move(elements)};
}

PovmReport validate_povm(const Povm& povm) {
  PovmReport report{{}, INFINITY, false, false};
  if (povm.elements.empty()) return report;
  const Eigen::Index d = povm.elements.front().op.rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  bool shapes_ok = true;
  for (const PovmElement& e : povm.elements) {
    if (e.op.rows() != d || e.op.cols() != d) {
      shapes_ok = false;
      report.elements.push_back({e.label, INFINITY, -INFINITY, false, false});
      continue;
    }
    const double herm = hermiticity_error(e.op);
    const double lmin = min_eigenvalue(hermitian_part(e.op));
    report.elements.push_back({e.label, herm, lmin, herm <= kHermitianTolerance, lmin >= -1e-10});
    sum += e.op;
  }
  if (shapes_ok) {
    report.completeness_error = max_abs_diff(sum, ComplexMatrix::Identity(d, d));
    report.complete = report.completeness_error <= 1e-10;
  }
  report.valid = report.complete &&
                 std::all_of(report.elements.begin(), report.elements.end(),
                             [](const PovmElementReport& r) { return r.hermitian && r.positive; });
  return report;
}

std::vector<LabeledProbability> outcome_probs(const Povm& povm, const ComplexMatrix& rho) {
  std::vector<LabeledProbability> out;
  for (const PovmElement& e : povm.elements) {
    if (e.op.rows() != rho.rows() || e.op.cols() != rho.cols()) {
      throw std::invalid_argument("outcome_probs: POVM element '" + e.label +
                                  "' does not match the state dimension");
    }
    out.push_back({e.label, trace_product(e.op, rho)});
  }
  return out;
}

std::vector<LabeledProbability> outcome_probs(const Povm& povm, const DensityMatrix& rho) {
  return outcome_probs(povm, rho.matrix());
}

double probability_of(const Povm& povm, const std::string& label, const ComplexMatrix& rho) {
  const ComplexMatrix& op = povm.at(label);
  if (op.rows() != rho.rows()) throw std::invalid_argument("probability_of: dimension mismatch");
  return trace_product(op, rho);
}

MinErrorResult helstrom(const ComplexMatrix& rho1, const ComplexMatrix& rho2, double p1,
                        double p2) {
  check_priors(p1, p2);
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols()) {
    throw std::invalid_argument("helstrom: dimension mismatch");
  }
  const Spectrum spec = herm_eig(hermitian_part(p1 * rho1 - p2 * rho2));
  const Eigen::Index d = rho1.rows();
  const bool ties_to_first = p1 >= p2;
  ComplexMatrix first = ComplexMatrix::Zero(d, d);
  ComplexMatrix second = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lambda = spec.eigenvalues(i);
    const ComplexMatrix proj = spec.eigenvectors.col(i) * spec.eigenvectors.col(i).adjoint();
    const bool to_first =
        lambda > kZeroEigenvalue || (std::abs(lambda) <= kZeroEigenvalue && ties_to_first);
    (to_first ? first : second) += proj;
  }
  MinErrorResult out;
  out.eigenvalues = spec.eigenvalues;
  out.p_error = 0.5 * (1.0 - spec.eigenvalues.cwiseAbs().sum());
  out.optimal_projectors.elements = {{kIdentify1, hermitian_part(first)},
                                     {kIdentify2, hermitian_part(second)}};
  return out;
}

MinErrorResult helstrom(const DensityMatrix& rho1, const DensityMatrix& rho2, double p1,
                        double p2) {
  return helstrom(rho1.matrix(), rho2.matrix(), p1, p2);
}

std::vector<SingletWeightRow> singlet_weight_scan(std::span<const double> weights) {
  const PairProjectors proj = sym_antisym_projectors({0, 1}, 2);
  const ComplexMatrix rho2 = 0.25 * identity(4);
  std::vector<SingletWeightRow> rows;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw std::invalid_argument("singlet_weight_scan: weight outside [0, 1]");
    }
    const ComplexMatrix rho1 = w * proj.antisymmetric + (1.0 - w) / 3.0 * proj.symmetric;
    const double norm = abs_eig_sum(rho1 - rho2);
    const double closed = 2.0 * std::abs(0.25 - w);
    rows.push_back({w, norm, helstrom(rho1, rho2, 0.5, 0.5).p_error, closed,
                    std::abs(norm - closed)});
  }
  return rows;
}

UnambiguousResult unambiguous_eval(const Povm& povm, std::span<const DensityMatrix> states,
                                   std::span<const double> priors,
                                   const std::map<std::string, std::size_t>& identifies) {
  if (states.size() != priors.size() || states.empty()) {
    throw std::invalid_argument("unambiguous_eval: need one prior per state");
  }
  double prior_sum = 0.0;
  for (double p : priors) {
    if (p < 0.0) throw std::invalid_argument("unambiguous_eval: negative prior");
    prior_sum += p;
  }
  if (std::abs(prior_sum - 1.0) > 1e-12) {
    throw std::invalid_argument("unambiguous_eval: priors do not sum to one");
  }
  UnambiguousResult out{0.0, std::vector<double>(states.size(), 0.0), 0.0, 0.0};
  for (const PovmElement& e : povm.elements) {
    const bool is_fail = e.label == kFail;
    std::size_t target = 0;
    if (!is_fail) {
      const auto it = identifies.find(e.label);
      if (it == identifies.end()) {
        throw std::invalid_argument("unambiguous_eval: identify element '" + e.label +
                                    "' is not mapped to a state");
      }
      target = it->second;
      if (target >= states.size()) {
        throw std::invalid_argument("unambiguous_eval: element '" + e.label +
                                    "' maps to a missing state");
      }
    }
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (e.op.rows() != states[j].matrix().rows()) {
        throw std::invalid_argument("unambiguous_eval: dimension mismatch");
      }
      const double p = trace_product(e.op, states[j].matrix());
      if (is_fail) {
        out.failure_prob += priors[j] * p;
      } else if (j == target) {
        out.per_state_success[j] += p;
      } else {
        out.cross_talk = std::max(out.cross_talk, p);
      }
    }
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    out.p_success += priors[i] * out.per_state_success[i];
  }
  return out;
}

JordanBases jordan_bases(const Subspace& first, const Subspace& second) {
  if (first.ambient_dim() != second.ambient_dim()) {
    throw std::invalid_argument("jordan_bases: subspaces live in different spaces");
  }
  const ComplexMatrix& q1 = first.basis();
  const ComplexMatrix& q2 = second.basis();
  JordanBases out;
  if (q1.cols() == 0 || q2.cols() == 0) {
    out.first_only = q1;
    out.second_only = q2;
    return out;
  }
  const ComplexMatrix cross = q1.adjoint() * q2;
  Eigen::JacobiSVD<ComplexMatrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const ComplexMatrix left = q1 * svd.matrixU();
  const ComplexMatrix right = q2 * svd.matrixV();
  const Eigen::Index k = std::min(q1.cols(), q2.cols());
  for (Eigen::Index i = 0; i < k; ++i) {
    const double c = std::clamp(svd.singularValues()(i), 0.0, 1.0);
    out.pairs.push_back({left.col(i), right.col(i), c});
  }
  out.first_only = left.rightCols(q1.cols() - k);
  out.second_only = right.rightCols(q2.cols() - k);
  return out;
}

SubspacePovm unambiguous_subspace_povm(const Subspace& first, const Subspace& second) {
  const JordanBases jb = jordan_bases(first, second);
  const auto d = static_cast<Eigen::Index>(first.ambient_dim());
  ComplexMatrix detect1 = jb.first_only * jb.first_only.adjoint();
  ComplexMatrix detect2 = jb.second_only * jb.second_only.adjoint();
  if (detect1.size() == 0) detect1 = ComplexMatrix::Zero(d, d);
  if (detect2.size() == 0) detect2 = ComplexMatrix::Zero(d, d);

  SubspacePovm out;
  for (const JordanPair& p : jb.pairs) {
    if (p.cosine >= kSharedCosine) continue;  // shared direction: useless
    if (p.cosine <= kOrthogonalCosine) {
      detect1 += p.in_first * p.in_first.adjoint();
      detect2 += p.in_second * p.in_second.adjoint();
      continue;
    }
    const double c = p.cosine;
    const double s = std::sqrt(1.0 - c * c);
    // w: unit vector in the block orthogonal to in_first; it is also the
    // second-subspace detector. z = s u - c w is orthogonal to in_second.
    const ComplexVector w = (p.in_second - c * p.in_first) / s;
    const ComplexVector z = s * p.in_first - c * w;
    const double weight = max_block_weight(c);
    const double expected = 1.0 / (1.0 + c);
    if (std::abs(weight - expected) > 1e-9) {
      throw std::logic_error("unambiguous_subspace_povm: block weight " + std::to_string(weight) +
                             " disagrees with 1/(1+c) = " + std::to_string(expected));
    }
    out.block_weights.push_back({c, weight, expected});
    detect1 += weight * z * z.adjoint();
    detect2 += weight * w * w.adjoint();
  }
  const bool detects1 = detect1.cwiseAbs().maxCoeff() > 1e-12;
  const bool detects2 = detect2.cwiseAbs().maxCoeff() > 1e-12;
  out.precondition_ok = detects1 && detects2;
  out.povm = complete_with_failure(
      {{kIdentify1, hermitian_part(detect1)}, {kIdentify2, hermitian_part(detect2)}});
  return out;
}

}  // namespace progbox
