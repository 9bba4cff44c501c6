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
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "progbox/linalg.hpp"

namespace progbox {

/// Normalized amplitude vector over a qubit register.
class PureState {
 public:
  /// Throws std::invalid_argument unless the length is a power of two and the
  /// norm is within 1e-12 of one.
  explicit PureState(ComplexVector amplitudes);

  /// Rescales to unit norm. Throws for a zero vector.
  static PureState normalized(const ComplexVector& amplitudes);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }
  Complex inner(const PureState& other) const { return amplitudes_.dot(other.amplitudes_); }

 private:
  ComplexVector amplitudes_;
  std::size_t num_qubits_ = 0;
};

/// Hermitian, positive semidefinite, unit-trace matrix over a qubit register.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-12), trace (1e-12) and the smallest eigenvalue
  /// (>= -1e-10); throws std::invalid_argument on violation.
  explicit DensityMatrix(ComplexMatrix matrix);

  static DensityMatrix from_pure(const PureState& psi);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
  std::size_t num_qubits_ = 0;
};

ComplexVector basis_vector(std::string_view bits);
PureState basis_state(std::string_view bits);

PureState permute_qubits(const PureState& psi, std::span<const std::size_t> perm);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
Subspace range_basis(const DensityMatrix& rho, double tol = kDefaultRankTolerance);

/// A state together with the wires it occupies in a larger register.
struct Placement {
  ComplexVector state;
  std::vector<std::size_t> wires;
};

/// Tensor product of the placed factors on an n-qubit register; unlisted wires
/// are |0>. Built on adjacent wires, then moved into place with permute_qubits.
ComplexVector place(std::span<const Placement> factors, std::size_t n);

enum class BellKind { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

/// |psi+-> = (|01> +- |10>)/sqrt2, |phi+-> = (|00> +- |11>)/sqrt2.
PureState bell(BellKind kind);

/// a|psi-> + b|psi+> + c|phi-> + d|phi+>. The coefficients must have unit norm
/// within 1e-9; the result is renormalized.
PureState bell_combination(Complex a, Complex b, Complex c, Complex d);

using WirePair = std::pair<std::size_t, std::size_t>;

struct PairProjectors {
  ComplexMatrix symmetric;
  ComplexMatrix antisymmetric;
};

/// Projectors onto the symmetric and antisymmetric subspaces of the wire
/// pair, tensored with identity on the remaining wires of an n-qubit register.
PairProjectors sym_antisym_projectors(WirePair pair, std::size_t n);

/// Superposition of a singlet on (A,C) with B=D=|0> and a singlet on (B,C)
/// with A=|0>, D=|1>, over wires (A,B,C,D). The raw branch sum is
/// renormalized; four_qubit_test_state_raw_norm() reports its norm.
PureState four_qubit_test_state();
double four_qubit_test_state_raw_norm();

/// Three-qubit state on (A,B,C) with singlet fidelity 3/4 on both the (A,C)
/// and (B,C) marginals.
PureState approx_double_singlet_3q();

/// Product of singlets on the two wire pairs (first wire of each pair is the
/// |0> slot of |01> - |10>); other wires |0>. Throws if wires overlap.
PureState double_singlet(WirePair first, WirePair second, std::size_t n);

}  // namespace progbox
