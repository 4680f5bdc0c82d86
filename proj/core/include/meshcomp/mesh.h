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

// Physical model of a rectangular Mach-Zehnder mesh.
//
// A beam-splitter with parameter theta has reflectivity cos^2(theta); theta
// = pi/4 is the balanced 50:50 device. An MZI is B(theta) R(phi_i) B(theta)
// R(phi_e) where R(phi) = diag(e^{i phi}, 1) acts on the top mode. Both
// beam-splitters of one MZI share a theta.
//
// Mesh layout: N layers; layer l holds MZIs on modes (m, m+1) for every
// m = l mod 2, m <= N-2. Layer 0 is next to the inputs. MZIs are indexed in
// (layer, top_mode) order everywhere (chip files, phase programs).

#ifndef MESHCOMP_MESH_H_
#define MESHCOMP_MESH_H_

#include <array>
#include <cstdint>
#include <numbers>
#include <vector>

#include "meshcomp/linalg.h"

namespace meshcomp {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kBalancedTheta = std::numbers::pi / 4.0;

// Fixed-size 2x2 complex matrix for the two-mode building blocks.
using Matrix2c = Eigen::Matrix2cd;

double ThetaFromReflectivity(double reflectivity);
double ReflectivityFromTheta(double theta);

// [[cos t, i sin t], [i sin t, cos t]]; throws std::domain_error unless
// 0 < theta < pi/2.
Matrix2c BeamSplitter(double theta);

// diag(e^{i phi}, 1).
Matrix2c PhaseShifter(double phi);

// B(theta) R(phi_i) B(theta) R(phi_e), in closed form. At theta = pi/4 this
// is i e^{i phi_i/2} [[e^{i phi_e} sin(phi_i/2), cos(phi_i/2)],
//                     [e^{i phi_e} cos(phi_i/2), -sin(phi_i/2)]].
Matrix2c MziMatrix(double phi_i, double phi_e, double theta = kBalancedTheta);

// Power reflectivity |Z_00|^2 = 1 - sin^2(2 theta) cos^2(phi_i / 2).
double MziReflectivity(double phi_i, double theta = kBalancedTheta);

// N x N identity with rows/cols (m, m+1) replaced by z.
ComplexMatrix EmbedTwoMode(const Matrix2c& z, int m, int n);

// In-place products with an embedded two-mode block, O(N).
void ApplyLeft(ComplexMatrix& u, const Matrix2c& z, int m);   // u <- Z_[m] u
void ApplyRight(ComplexMatrix& u, const Matrix2c& z, int m);  // u <- u Z_[m]

struct PhaseShifterCal {
  double alpha = 0.0;  // phase at zero voltage, rad
  double beta = 1.0;   // rad / V^2, > 0
};

struct MziUnit {
  int layer = 0;
  int top_mode = 0;
  // Beam-splitter reflectivity cos^2(theta), in (0, 1). Stored instead of
  // theta so chip files round-trip exactly.
  double reflectivity = 0.5;
  PhaseShifterCal internal;
  PhaseShifterCal external;

  double theta() const { return ThetaFromReflectivity(reflectivity); }
};

// Slot (layer, top_mode) of every MZI of an n-mode rectangular mesh, in
// canonical order. Size n(n-1)/2.
std::vector<std::array<int, 2>> MeshLayout(int n);

// Index of the MZI at (layer, top_mode) in canonical order, or -1.
int MziIndex(int n, int layer, int top_mode);

class ChipSpec {
 public:
  // Validates topology (exact canonical layout), reflectivities in (0, 1),
  // finite alphas, positive betas. Throws std::invalid_argument.
  ChipSpec(int n_modes, std::vector<MziUnit> mzis,
           std::vector<PhaseShifterCal> output_shifters);

  // Every MZI at the given reflectivity, alpha = 0, beta = 1.
  static ChipSpec Uniform(int n_modes, double reflectivity);
  static ChipSpec Ideal(int n_modes) { return Uniform(n_modes, 0.5); }

  int n_modes() const { return n_; }
  int mzi_count() const { return static_cast<int>(mzis_.size()); }
  const std::vector<MziUnit>& mzis() const { return mzis_; }
  const std::vector<PhaseShifterCal>& output_shifters() const {
    return outputs_;
  }
  std::vector<double> thetas() const;
  std::vector<double> reflectivities() const;

  // Same chip with every MZI reflectivity replaced.
  ChipSpec WithReflectivities(const std::vector<double>& r) const;

 private:
  int n_;
  std::vector<MziUnit> mzis_;
  std::vector<PhaseShifterCal> outputs_;
};

struct ChipSampleOptions {
  double reflectivity_mean = 0.5;
  double reflectivity_sd = 0.0;
  // beta ~ log-uniform over [beta_min, beta_max]; alpha ~ U[0, 2 pi).
  double beta_min = 0.5;
  double beta_max = 2.0;
};

// Synthetic chip, deterministic in `seed`. Reflectivities are drawn
// normal(mean, sd) and redrawn until inside (0, 1). Throws
// std::invalid_argument if that is (nearly) impossible or n < 2.
ChipSpec SampleChip(int n, const ChipSampleOptions& options,
                    std::uint64_t seed);

}  // namespace meshcomp

#endif  // MESHCOMP_MESH_H_
