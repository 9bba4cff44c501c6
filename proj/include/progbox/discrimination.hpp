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

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "progbox/linalg.hpp"
#include "progbox/states.hpp"

namespace progbox {

/// Conventional POVM labels.
inline constexpr const char* kIdentify1 = "identify-1";
inline constexpr const char* kIdentify2 = "identify-2";
inline constexpr const char* kFail = "fail";

/// A scheme counts as unambiguous when no identify element fires on a wrong
/// hypothesis with probability above this.
inline constexpr double kCrossTalkTolerance = 1e-9;

struct PovmElement {
  std::string label;
  ComplexMatrix op;
};

struct Povm {
  std::vector<PovmElement> elements;

  std::size_t dim() const;
  /// Throws std::out_of_range for an unknown label.
  const ComplexMatrix& at(const std::string& label) const;
  bool contains(const std::string& label) const;
};

/// `fail` = identity minus the sum of the given elements.
Povm complete_with_failure(std::vector<PovmElement> elements);

struct PovmElementReport {
  std::string label;
  double hermiticity_error;
  double min_eigenvalue;
  bool hermitian;
  bool positive;
};

struct PovmReport {
  std::vector<PovmElementReport> elements;
  double completeness_error;  // max |sum_i Pi_i - I|
  bool complete;
  bool valid;
};

/// Hermitian within 1e-12, PSD within -1e-10, sum within 1e-10 of identity.
PovmReport validate_povm(const Povm& povm);

struct LabeledProbability {
  std::string label;
  double probability;
};

/// Tr(Pi_i rho) for every element, in element order. Throws
/// std::invalid_argument on a dimension mismatch.
std::vector<LabeledProbability> outcome_probs(const Povm& povm, const ComplexMatrix& rho);
std::vector<LabeledProbability> outcome_probs(const Povm& povm, const DensityMatrix& rho);
double probability_of(const Povm& povm, const std::string& label, const ComplexMatrix& rho);

struct MinErrorResult {
  double p_error;
  Eigen::VectorXd eigenvalues;  // of p1 rho1 - p2 rho2, descending
  /// identify-1: positive eigenspace; identify-2: negative eigenspace. Zero
  /// eigenvalues go to the higher-prior state (the first on equal priors).
  Povm optimal_projectors;
};

/// Minimum-error two-state discrimination: p_e = (1 - sum |lambda_i|) / 2.
MinErrorResult helstrom(const ComplexMatrix& rho1, const ComplexMatrix& rho2, double p1,
                        double p2);
MinErrorResult helstrom(const DensityMatrix& rho1, const DensityMatrix& rho2, double p1 = 0.5,
                        double p2 = 0.5);

struct SingletWeightRow {
  double singlet_weight;  // |a|^2
  double trace_norm;      // Tr |rho1 - rho2|
  double p_error;         // equal priors
  double closed_form;     // 2 |1/4 - |a|^2|
  double deviation;       // |trace_norm - closed_form|
};

/// Two-qubit averaged states rho1 = w P_anti + (1 - w) P_sym / 3 against
/// rho2 = I/4, for each singlet weight w in [0, 1].
std::vector<SingletWeightRow> singlet_weight_scan(std::span<const double> weights);

struct UnambiguousResult {
  double p_success;
  std::vector<double> per_state_success;
  double cross_talk;  // max over identify elements and mismatched states
  double failure_prob;
  bool unambiguous() const { return cross_talk <= kCrossTalkTolerance; }
};

/// `identifies` maps every non-`fail` label to the index of the state it
/// identifies. Throws std::invalid_argument for an unmapped identify element,
/// an index out of range, or mismatched priors.
UnambiguousResult unambiguous_eval(const Povm& povm, std::span<const DensityMatrix> states,
                                   std::span<const double> priors,
                                   const std::map<std::string, std::size_t>& identifies);

struct JordanPair {
  ComplexVector in_first;
  ComplexVector in_second;
  double cosine;  // <in_first|in_second>, real and in [0, 1]
};

/// Principal (Jordan) vectors of two subspaces.
struct JordanBases {
  std::vector<JordanPair> pairs;  // min(dim1, dim2) pairs, cosines descending
  ComplexMatrix first_only;       // columns of the larger space beyond the pairs
  ComplexMatrix second_only;
};

/// SVD of the cross-Gram matrix of the two bases.
JordanBases jordan_bases(const Subspace& first, const Subspace& second);

struct JordanBlockWeight {
  double cosine;
  double weight;    // found by bisection on the block's failure operator
  double expected;  // 1 / (1 + cosine)
};

struct SubspacePovm {
  Povm povm;  // identify-1, identify-2, fail
  /// False when one subspace lies inside the other (nothing identifies it).
  bool precondition_ok;
  std::vector<JordanBlockWeight> block_weights;
};

/// Equal-prior optimal unambiguous discrimination of two subspaces: vectors of
/// one subspace orthogonal to the other are detected with weight one, shared
/// vectors are dropped, and each partially overlapping Jordan pair contributes
/// a rank-one element orthogonal to its partner, with the largest common
/// weight that keeps the failure element positive.
SubspacePovm unambiguous_subspace_povm(const Subspace& first, const Subspace& second);

}  // namespace progbox
