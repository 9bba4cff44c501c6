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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

/// Dense complex kernel for small qubit registers.
///
/// Qubit 0 is the leftmost tensor factor: in a basis index of an n-qubit
/// register, qubit k occupies bit (n - 1 - k).
namespace progbox {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Gate = Eigen::Matrix2cd;

/// Entrywise tolerance for a matrix to count as Hermitian.
inline constexpr double kHermitianTolerance = 1e-12;
/// Default rank cut, relative to the largest eigenvalue.
inline constexpr double kDefaultRankTolerance = 1e-10;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues descending.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  ComplexMatrix eigenvectors;  // column i belongs to eigenvalues(i)
};

/// Orthonormal basis of a subspace, stored as columns.
class Subspace {
 public:
  /// Throws std::invalid_argument if the Gram matrix is not within 1e-10 of
  /// the identity.
  explicit Subspace(ComplexMatrix basis);

  std::size_t ambient_dim() const { return static_cast<std::size_t>(basis_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(basis_.cols()); }
  const ComplexMatrix& basis() const { return basis_; }
  ComplexMatrix projector() const { return basis_ * basis_.adjoint(); }

 private:
  ComplexMatrix basis_;
};

ComplexMatrix identity(std::size_t dim);

/// Kronecker product; dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Number of qubits n with dim == 2^n; throws std::invalid_argument otherwise.
std::size_t qubit_count(std::size_t dim);

/// Checks that `perm` is a bijection on {0..n-1}; throws otherwise.
void check_permutation(std::span<const std::size_t> perm, std::size_t n);
std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm);

/// Relabels tensor factors: the content of wire i moves to wire perm[i].
ComplexVector permute_qubits(const ComplexVector& v, std::span<const std::size_t> perm);
ComplexMatrix permute_qubits(const ComplexMatrix& m, std::span<const std::size_t> perm);

/// Places an operator acting on `wires.size()` qubits onto `wires` of an
/// n-qubit register (identity elsewhere). wires[k] receives factor k.
ComplexMatrix embed_operator(const ComplexMatrix& op, std::span<const std::size_t> wires,
                             std::size_t n);

/// Traces out every wire not listed in `keep`. The result orders the kept
/// wires as listed.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> keep);

/// In place: m <- G_w m G_w^dagger, with G acting on wire `wire`.
void conjugate_wire(ComplexMatrix& m, const Gate& g, std::size_t wire);
/// In place: v <- G_w v.
void apply_wire(ComplexVector& v, const Gate& g, std::size_t wire);

double hermiticity_error(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTolerance);
/// (m + m^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Throws std::invalid_argument for non-square or non-Hermitian input.
Spectrum herm_eig(const ComplexMatrix& m);
/// Sum of |eigenvalues|, i.e. the trace norm of a Hermitian matrix.
double abs_eig_sum(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);

/// Eigenvectors whose eigenvalue exceeds tol * lambda_max.
Subspace range_basis(const ComplexMatrix& rho, double tol = kDefaultRankTolerance);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace progbox
