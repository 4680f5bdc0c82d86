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

#ifndef MESHCOMP_LINALG_H_
#define MESHCOMP_LINALG_H_

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace meshcomp {

using Complex = std::complex<double>;

// Dense complex matrix. Row/column counts are >= 1 and all entries finite
// wherever a ComplexMatrix crosses a module boundary; use CheckFinite() to
// enforce that on untrusted input.
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultUnitaryTolerance = 1e-10;

// Thrown for dimension or index problems (n = 0, mismatched shapes, ...).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws DimensionError if the matrix is empty, std::domain_error if any
// entry is NaN or infinite.
void CheckFinite(const ComplexMatrix& m);

// ||m^dagger m - I||_F for a square matrix.
double UnitarityDefect(const ComplexMatrix& m);

class Permutation;

// A square complex matrix whose unitarity has been verified at construction.
class UnitaryMatrix {
 public:
  // Throws DimensionError for non-square / empty input and std::domain_error
  // if ||U^dagger U - I||_F exceeds `tolerance`.
  explicit UnitaryMatrix(ComplexMatrix m,
                         double tolerance = kDefaultUnitaryTolerance);

  static UnitaryMatrix Identity(int n);

  int size() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  UnitaryMatrix adjoint() const;

  // Rows and columns relabelled: result(i, j) = U(out^-1(i), in^-1(j)).
  // Exact, so no unitarity re-check.
  UnitaryMatrix Relabeled(const Permutation& out,
                          const Permutation& in) const;
  friend UnitaryMatrix operator*(const UnitaryMatrix& a,
                                 const UnitaryMatrix& b);

 private:
  struct Unchecked {};
  UnitaryMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

// A bijection on {0, ..., n-1}; mapping[j] is the image of j.
class Permutation {
 public:
  explicit Permutation(std::vector<int> mapping);

  static Permutation Identity(int n);
  // The nearest-neighbour transposition of (i, i+1), 0-based.
  static Permutation Transposition(int n, int i);

  int size() const { return static_cast<int>(map_.size()); }
  int operator()(int j) const { return map_[j]; }
  const std::vector<int>& mapping() const { return map_; }

  Permutation inverse() const;
  // (a.then(b))(j) == b(a(j)).
  Permutation then(const Permutation& b) const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.map_ <=> b.map_;
  }

 private:
  std::vector<int> map_;
};

// Haar-distributed n x n unitary. QR of an i.i.d. complex Gaussian matrix
// with the phases of R's diagonal divided out of Q. Same seed, same matrix.
UnitaryMatrix HaarRandomUnitary(int n, std::uint64_t seed);

// ||  |U_t U_r^dagger| - I  ||_F with |.| taken entrywise.
double FidelityDistance(const UnitaryMatrix& target,
                        const UnitaryMatrix& realized);
double FidelityDistance(const ComplexMatrix& target,
                        const ComplexMatrix& realized);

// P with P e_j = e_{p(j)}, i.e. P(p(j), j) = 1.
UnitaryMatrix PermutationMatrix(const Permutation& p);

}  // namespace meshcomp

#endif  // MESHCOMP_LINALG_H_
