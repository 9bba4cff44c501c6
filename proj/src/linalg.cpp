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

#include "progbox/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace progbox {

namespace {

// Maps a basis index through the wire relabeling perm (wire i -> perm[i]).
std::size_t permute_index(std::size_t index, std::span<const std::size_t> perm) {
  const std::size_t n = perm.size();
  std::size_t out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = (index >> (n - 1 - i)) & 1U;
    out |= bit << (n - 1 - perm[i]);
  }
  return out;
}

void check_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
}

}  // namespace

Subspace::Subspace(ComplexMatrix basis) : basis_(std::move(basis)) {
  const ComplexMatrix gram = basis_.adjoint() * basis_;
  const ComplexMatrix id = ComplexMatrix::Identity(gram.rows(), gram.cols());
  if (gram.size() > 0 && max_abs_diff(gram, id) > 1e-10) {
    throw std::invalid_argument("Subspace: basis columns are not orthonormal");
  }
}

ComplexMatrix identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return ComplexMatrix::Identity(d, d);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

std::size_t qubit_count(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
  }
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

void check_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) {
    throw std::invalid_argument("permutation length " + std::to_string(perm.size()) +
                                " does not match qubit count " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) {
      throw std::invalid_argument("qubit permutation is not a bijection");
    }
    seen[p] = true;
  }
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm) {
  check_permutation(perm, perm.size());
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

ComplexVector permute_qubits(const ComplexVector& v, std::span<const std::size_t> perm) {
  const std::size_t n = qubit_count(static_cast<std::size_t>(v.size()));
  check_permutation(perm, n);
  ComplexVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(permute_index(static_cast<std::size_t>(i), perm))) = v(i);
  }
  return out;
}

ComplexMatrix permute_qubits(const ComplexMatrix& m, std::span<const std::size_t> perm) {
  check_square(m, "permute_qubits");
  const std::size_t n = qubit_count(static_cast<std::size_t>(m.rows()));
  check_permutation(perm, n);
  std::vector<Eigen::Index> map(static_cast<std::size_t>(m.rows()));
  for (std::size_t i = 0; i < map.size(); ++i) {
    map[i] = static_cast<Eigen::Index>(permute_index(i, perm));
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) = m(i, j);
    }
  }
  return out;
}

ComplexMatrix embed_operator(const ComplexMatrix& op, std::span<const std::size_t> wires,
                             std::size_t n) {
  check_square(op, "embed_operator");
  const std::size_t k = qubit_count(static_cast<std::size_t>(op.rows()));
  if (k != wires.size() || k > n) {
    throw std::invalid_argument("embed_operator: operator size does not match wire list");
  }
  // Source wire order: the operator's factors first, then untouched wires ascending.
  std::vector<std::size_t> perm(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < k; ++i) {
    if (wires[i] >= n || used[wires[i]]) {
      throw std::invalid_argument("embed_operator: invalid wire list");
    }
    perm[i] = wires[i];
    used[wires[i]] = true;
  }
  std::size_t next = k;
  for (std::size_t w = 0; w < n; ++w) {
    if (!used[w]) perm[next++] = w;
  }
  return permute_qubits(kron(op, identity(std::size_t{1} << (n - k))), perm);
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> keep) {
  check_square(m, "partial_trace");
  const std::size_t n = qubit_count(static_cast<std::size_t>(m.rows()));
  std::vector<std::size_t> perm(n);
  std::vector<bool> kept(n, false);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= n || kept[keep[i]]) {
      throw std::invalid_argument("partial_trace: keep is not a subset of the register wires");
    }
    kept[keep[i]] = true;
    perm[keep[i]] = i;
  }
  std::size_t next = keep.size();
  for (std::size_t w = 0; w < n; ++w) {
    if (!kept[w]) perm[w] = next++;
  }
  const ComplexMatrix moved = permute_qubits(m, perm);
  const auto kept_dim = Eigen::Index{1} << keep.size();
  const auto env_dim = Eigen::Index{1} << (n - keep.size());
  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (Eigen::Index a = 0; a < kept_dim; ++a) {
    for (Eigen::Index b = 0; b < kept_dim; ++b) {
      Complex sum = 0.0;
      for (Eigen::Index e = 0; e < env_dim; ++e) sum += moved(a * env_dim + e, b * env_dim + e);
      out(a, b) = sum;
    }
  }
  return out;
}

void conjugate_wire(ComplexMatrix& m, const Gate& g, std::size_t wire) {
  const std::size_t n = qubit_count(static_cast<std::size_t>(m.rows()));
  if (wire >= n) throw std::invalid_argument("conjugate_wire: wire out of range");
  const auto stride = Eigen::Index{1} << (n - 1 - wire);
  const Eigen::Index dim = m.rows();
  // Rows: m <- G m.
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index off = 0; off < stride; ++off) {
      const Eigen::Index r0 = base + off;
      const Eigen::Index r1 = r0 + stride;
      for (Eigen::Index c = 0; c < dim; ++c) {
        const Complex x0 = m(r0, c);
        const Complex x1 = m(r1, c);
        m(r0, c) = g(0, 0) * x0 + g(0, 1) * x1;
        m(r1, c) = g(1, 0) * x0 + g(1, 1) * x1;
      }
    }
  }
  // Columns: m <- m G^dagger.
  const Complex h00 = std::conj(g(0, 0));
  const Complex h01 = std::conj(g(0, 1));
  const Complex h10 = std::conj(g(1, 0));
  const Complex h11 = std::conj(g(1, 1));
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index off = 0; off < stride; ++off) {
      const Eigen::Index c0 = base + off;
      const Eigen::Index c1 = c0 + stride;
      for (Eigen::Index r = 0; r < dim; ++r) {
        const Complex x0 = m(r, c0);
        const Complex x1 = m(r, c1);
        m(r, c0) = x0 * h00 + x1 * h01;
        m(r, c1) = x0 * h10 + x1 * h11;
      }
    }
  }
}

void apply_wire(ComplexVector& v, const Gate& g, std::size_t wire) {
  const std::size_t n = qubit_count(static_cast<std::size_t>(v.size()));
  if (wire >= n) throw std::invalid_argument("apply_wire: wire out of range");
  const auto stride = Eigen::Index{1} << (n - 1 - wire);
  for (Eigen::Index base = 0; base < v.size(); base += 2 * stride) {
    for (Eigen::Index off = 0; off < stride; ++off) {
      const Complex x0 = v(base + off);
      const Complex x1 = v(base + off + stride);
      v(base + off) = g(0, 0) * x0 + g(0, 1) * x1;
      v(base + off + stride) = g(1, 0) * x0 + g(1, 1) * x1;
    }
  }
}

double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) { return hermiticity_error(m) <= tol; }

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

Spectrum herm_eig(const ComplexMatrix& m) {
  check_square(m, "herm_eig");
  if (!is_hermitian(m)) {
    throw std::invalid_argument("herm_eig: matrix is not Hermitian (max |M - M^dagger| = " +
                                std::to_string(hermiticity_error(m)) + ")");
  }
  // Tridiagonal reduction followed by implicit symmetric QR; ascending order.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("herm_eig: eigensolver did not converge");
  }
  const Eigen::Index d = m.rows();
  Spectrum out{Eigen::VectorXd(d), ComplexMatrix(d, d)};
  for (Eigen::Index i = 0; i < d; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(d - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return out;
}

double abs_eig_sum(const ComplexMatrix& m) { return herm_eig(m).eigenvalues.cwiseAbs().sum(); }

double min_eigenvalue(const ComplexMatrix& m) {
  const Spectrum s = herm_eig(m);
  return s.eigenvalues.size() == 0 ? 0.0 : s.eigenvalues(s.eigenvalues.size() - 1);
}

Subspace range_basis(const ComplexMatrix& rho, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("range_basis: tolerance must be positive");
  const Spectrum s = herm_eig(rho);
  const double lmax = s.eigenvalues.size() == 0 ? 0.0 : s.eigenvalues(0);
  Eigen::Index rank = 0;
  while (rank < s.eigenvalues.size() && lmax > 0.0 && s.eigenvalues(rank) > tol * lmax) ++rank;
  return Subspace(s.eigenvectors.leftCols(rank));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace progbox
