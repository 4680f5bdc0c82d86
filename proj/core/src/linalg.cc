// Copyright 2026 The meshcomp Authors
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

#include "meshcomp/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "meshcomp/rng.h"

namespace meshcomp {

void CheckFinite(const ComplexMatrix& m) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw DimensionError("matrix must have at least one row and column");
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        throw std::domain_error("matrix entry (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") is not finite");
      }
    }
  }
}

double UnitarityDefect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("unitarity is only defined for square matrices");
  }
  const auto n = m.rows();
  return (m.adjoint() * m - ComplexMatrix::Identity(n, n)).norm();
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tolerance)
    : m_(std::move(m)) {
  CheckFinite(m_);
  if (m_.rows() != m_.cols()) {
    throw DimensionError("unitary matrix must be square, got " +
                         std::to_string(m_.rows()) + "x" +
                         std::to_string(m_.cols()));
  }
  const double defect = UnitarityDefect(m_);
  if (!(defect <= tolerance)) {
    throw std::domain_error("matrix is not unitary: ||U^dag U - I||_F = " +
                            std::to_string(defect));
  }
}

UnitaryMatrix UnitaryMatrix::Identity(int n) {
  if (n < 1) throw DimensionError("dimension must be >= 1");
  return UnitaryMatrix(ComplexMatrix::Identity(n, n), Unchecked{});
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(m_.adjoint(), Unchecked{});
}

UnitaryMatrix UnitaryMatrix::Relabeled(const Permutation& out,
                                       const Permutation& in) const {
  if (out.size() != size() || in.size() != size()) {
    throw DimensionError("permutation size does not match matrix");
  }
  ComplexMatrix r(size(), size());
  for (int j = 0; j < size(); ++j) {
    for (int i = 0; i < size(); ++i) r(out(i), in(j)) = m_(i, j);
  }
  return UnitaryMatrix(std::move(r), Unchecked{});
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.size() != b.size()) {
    throw DimensionError("cannot multiply unitaries of different sizes");
  }
  return UnitaryMatrix(a.m_ * b.m_, UnitaryMatrix::Unchecked{});
}

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
  const int n = static_cast<int>(map_.size());
  if (n < 1) throw DimensionError("permutation must act on >= 1 element");
  std::vector<bool> seen(n, false);
  for (int v : map_) {
    if (v < 0 || v >= n || seen[v]) {
      throw std::invalid_argument("mapping is not a bijection on {0..n-1}");
    }
    seen[v] = true;
  }
}

Permutation Permutation::Identity(int n) {
  if (n < 1) throw DimensionError("permutation must act on >= 1 element");
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return Permutation(std::move(m));
}

Permutation Permutation::Transposition(int n, int i) {
  if (i < 0 || i + 1 >= n) {
    throw DimensionError("transposition index out of range");
  }
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  std::swap(m[i], m[i + 1]);
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (int j = 0; j < size(); ++j) inv[map_[j]] = j;
  return Permutation(std::move(inv));
}

Permutation Permutation::then(const Permutation& b) const {
  if (b.size() != size()) throw DimensionError("permutation size mismatch");
  std::vector<int> out(map_.size());
  for (int j = 0; j < size(); ++j) out[j] = b.map_[map_[j]];
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
  for (int j = 0; j < size(); ++j) {
    if (map_[j] != j) return false;
  }
  return true;
}

UnitaryMatrix HaarRandomUnitary(int n, std::uint64_t seed) {
  if (n < 1) throw DimensionError("Haar unitary dimension must be >= 1");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0);
  }
  return UnitaryMatrix(std::move(q));
}

double FidelityDistance(const ComplexMatrix& target,
                        const ComplexMatrix& realized) {
  if (target.rows() != realized.rows() || target.cols() != realized.cols() ||
      target.rows() != target.cols()) {
    throw DimensionError("fidelity distance needs equal square dimensions");
  }
  const ComplexMatrix prod = target * realized.adjoint();
  const auto n = prod.rows();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = std::abs(prod(i, j)) - (i == j ? 1.0 : 0.0);
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

double FidelityDistance(const UnitaryMatrix& target,
                        const UnitaryMatrix& realized) {
  return FidelityDistance(target.matrix(), realized.matrix());
}

UnitaryMatrix PermutationMatrix(const Permutation& p) {
  const int n = p.size();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m(p(j), j) = 1.0;
  return UnitaryMatrix(std::move(m));
}

}  // namespace meshcomp
