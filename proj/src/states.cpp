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

#include "progbox/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace progbox {

namespace {

constexpr double kNormTolerance = 1e-12;

ComplexVector raw_four_qubit_branches() {
  const ComplexVector singlet = bell(BellKind::PsiMinus).amplitudes();
  const ComplexVector zero = basis_vector("0");
  const ComplexVector one = basis_vector("1");
  // Wires: A=0, B=1, C=2, D=3.
  const std::vector<Placement> first{{singlet, {0, 2}}, {zero, {1}}, {zero, {3}}};
  const std::vector<Placement> second{{singlet, {1, 2}}, {zero, {0}}, {one, {3}}};
  return (place(first, 4) + place(second, 4)) / std::sqrt(2.0);
}

}  // namespace

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  num_qubits_ = qubit_count(static_cast<std::size_t>(amplitudes_.size()));
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw std::invalid_argument("PureState: norm " + std::to_string(norm) + " is not 1");
  }
}

PureState PureState::normalized(const ComplexVector& amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw std::invalid_argument("PureState: cannot normalize the zero vector");
  return PureState(amplitudes / norm);
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix is not square");
  }
  num_qubits_ = qubit_count(static_cast<std::size_t>(matrix_.rows()));
  const double herm = hermiticity_error(matrix_);
  if (herm > kHermitianTolerance) {
    throw std::invalid_argument("DensityMatrix: not Hermitian (" + std::to_string(herm) + ")");
  }
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > 1e-12) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(trace) + " is not 1");
  }
  const double lmin = min_eigenvalue(matrix_);
  if (lmin < -1e-10) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(lmin));
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(hermitian_part(psi.projector()));
}

ComplexVector basis_vector(std::string_view bits) {
  if (bits.empty()) throw std::invalid_argument("basis_vector: empty bit string");
  std::size_t index = 0;
  for (char b : bits) {
    if (b != '0' && b != '1') throw std::invalid_argument("basis_vector: bits must be 0 or 1");
    index = (index << 1) | static_cast<std::size_t>(b == '1');
  }
  ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << bits.size());
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

PureState basis_state(std::string_view bits) { return PureState(basis_vector(bits)); }

PureState permute_qubits(const PureState& psi, std::span<const std::size_t> perm) {
  return PureState(permute_qubits(psi.amplitudes(), perm));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  return DensityMatrix(hermitian_part(partial_trace(rho.matrix(), keep)));
}

Subspace range_basis(const DensityMatrix& rho, double tol) {
  return range_basis(rho.matrix(), tol);
}

ComplexVector place(std::span<const Placement> factors, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::vector<bool> used(n, false);
  ComplexVector product = ComplexVector::Ones(1);
  std::size_t slot = 0;
  for (const Placement& f : factors) {
    if (qubit_count(static_cast<std::size_t>(f.state.size())) != f.wires.size()) {
      throw std::invalid_argument("place: factor size does not match its wire list");
    }
    for (std::size_t w : f.wires) {
      if (w >= n || used[w]) throw std::invalid_argument("place: wires overlap or exceed register");
      used[w] = true;
      perm[slot++] = w;
    }
    product = kron(product, f.state);
  }
  for (std::size_t w = 0; w < n; ++w) {
    if (!used[w]) {
      perm[slot++] = w;
      product = kron(product, basis_vector("0"));
    }
  }
  return permute_qubits(product, perm);
}

PureState bell(BellKind kind) {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector v = ComplexVector::Zero(4);
  switch (kind) {
    case BellKind::PsiMinus: v << 0.0, r, -r, 0.0; break;
    case BellKind::PsiPlus: v << 0.0, r, r, 0.0; break;
    case BellKind::PhiMinus: v << r, 0.0, 0.0, -r; break;
    case BellKind::PhiPlus: v << r, 0.0, 0.0, r; break;
  }
  return PureState::normalized(v);
}

PureState bell_combination(Complex a, Complex b, Complex c, Complex d) {
  const double norm2 = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
  if (std::abs(norm2 - 1.0) > 1e-9) {
    throw std::invalid_argument("bell_combination: coefficients are not normalized (sum |.|^2 = " +
                                std::to_string(norm2) + ")");
  }
  const ComplexVector v = a * bell(BellKind::PsiMinus).amplitudes() +
                          b * bell(BellKind::PsiPlus).amplitudes() +
                          c * bell(BellKind::PhiMinus).amplitudes() +
                          d * bell(BellKind::PhiPlus).amplitudes();
  return PureState::normalized(v);
}

PairProjectors sym_antisym_projectors(WirePair pair, std::size_t n) {
  if (pair.first == pair.second || pair.first >= n || pair.second >= n) {
    throw std::invalid_argument("sym_antisym_projectors: invalid wire pair");
  }
  const std::vector<std::size_t> wires{pair.first, pair.second};
  const ComplexMatrix anti = embed_operator(bell(BellKind::PsiMinus).projector(), wires, n);
  return {identity(std::size_t{1} << n) - anti, anti};
}

PureState four_qubit_test_state() { return PureState::normalized(raw_four_qubit_branches()); }

double four_qubit_test_state_raw_norm() { return raw_four_qubit_branches().norm(); }

PureState approx_double_singlet_3q() {
  const double a = 1.0 / (2.0 * std::sqrt(3.0));
  const double b = 1.0 / std::sqrt(3.0);
  const ComplexVector v = a * (basis_vector("100") + basis_vector("010") + basis_vector("011") +
                               basis_vector("101")) -
                          b * (basis_vector("001") + basis_vector("110"));
  return PureState(v);
}

PureState double_singlet(WirePair first, WirePair second, std::size_t n) {
  const ComplexVector singlet = bell(BellKind::PsiMinus).amplitudes();
  const std::vector<Placement> factors{{singlet, {first.first, first.second}},
                                       {singlet, {second.first, second.second}}};
  const std::size_t ws[] = {first.first, first.second, second.first, second.second};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (ws[i] == ws[j]) throw std::invalid_argument("double_singlet: pairs overlap");
    }
  }
  return PureState(place(factors, n));
}

}  // namespace progbox
