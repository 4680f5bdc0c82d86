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

// Unitary -> phase compilation for the rectangular mesh.
//
// Decompose() nulls the target in the rectangular (Clements) order,
// alternating left multiplications by Z^theta on adjacent rows and right
// multiplications by (Z^theta)^-1 on adjacent columns, then moves the left
// factors through the remaining diagonal so the result reads
//   U = D' Z_[K] ... Z_[1].
// Every nulling uses the beam-splitter parameter of the physical MZI it
// lands on, so passing the chip's measured thetas gives the
// hardware-tailored program and passing pi/4 everywhere gives the standard
// ideal one. When a required MZI reflectivity is out of reach for an
// imperfect MZI, phi_i is clamped to 0 or 2 pi and compilation continues.

#ifndef MESHCOMP_COMPILER_H_
#define MESHCOMP_COMPILER_H_

#include <span>
#include <vector>

#include "meshcomp/linalg.h"
#include "meshcomp/mesh.h"

namespace meshcomp {

struct MziSetting {
  int mzi = 0;
  double phi_i = 0.0;  // [0, 2 pi]; 2 pi is kept distinct from 0
  double phi_e = 0.0;  // [0, 2 pi)
};

struct PhaseProgram {
  int n_modes = 0;
  std::vector<MziSetting> settings;   // settings[k].mzi == k
  std::vector<double> output_phases;  // the output diagonal, one per mode

  // Throws std::invalid_argument unless the program has one setting per MZI
  // of an n-mode mesh in canonical order and every phase is finite.
  void Validate() const;
};

// Every MZI at (phi_i, phi_e), zero output phases.
PhaseProgram UniformProgram(int n, double phi_i, double phi_e);

struct NullingPhases {
  double phi_i = 0.0;
  double phi_e = 0.0;
  bool clamped = false;  // required reflectivity unreachable
};

// Phases of Z^theta (multiplied from the left on rows n-1, n) that null
// U(n, m) given partner = U(n-1, m) and target = U(n, m).
NullingPhases LeftNullingPhases(Complex partner, Complex target, double theta);
// Phases of (Z^theta)^-1 (multiplied from the right on columns m, m+1) that
// null U(n, m) given target = U(n, m) and partner = U(n, m+1).
NullingPhases RightNullingPhases(Complex target, Complex partner,
                                 double theta);

// Null u(row, col) with Z^theta on rows (row-1, row); u is updated in place.
NullingPhases NullWithZ(ComplexMatrix& u, int col, int row, double theta);
// Null u(row, col) with (Z^theta)^-1 on columns (col, col+1).
NullingPhases NullWithZinv(ComplexMatrix& u, int col, int row, double theta);

// Solves Z^-1(phi_i, phi_e) diag(d_top, d_bottom) = diag(d_top', d_bottom')
// Z(phi_i', phi_e') for a shared theta.
struct MigratedPhases {
  double phi_i = 0.0;
  double phi_e = 0.0;
  Complex d_top;
  Complex d_bottom;
};
MigratedPhases MigrateThroughDiagonal(double phi_i, double phi_e,
                                      Complex d_top, Complex d_bottom);

enum class NullingSide { kLeft, kRight };

struct NullingStep {
  NullingSide side;
  int row;
  int col;
  int top_mode;  // modes (top_mode, top_mode + 1) are mixed
  int mzi;       // canonical index of the physical MZI that realizes it
};

// The nulling sequence for an n-mode mesh with each step already mapped to
// its MZI. Independent of the matrix; cached.
const std::vector<NullingStep>& NullingPlan(int n);

struct CompileStats {
  int clamped_steps = 0;
};

// Throws DimensionError if thetas.size() != n(n-1)/2.
PhaseProgram Decompose(const UnitaryMatrix& u, std::span<const double> thetas,
                       CompileStats* stats = nullptr);
PhaseProgram DecomposeIdeal(const UnitaryMatrix& u,
                            CompileStats* stats = nullptr);

// D * Z_[K] ... Z_[1] evaluated at the given per-MZI thetas.
ComplexMatrix ReconstructMatrix(const PhaseProgram& program,
                                std::span<const double> thetas);
UnitaryMatrix Reconstruct(const PhaseProgram& program,
                          std::span<const double> thetas);

// Wraps an angle into [0, 2 pi).
double WrapPhase(double phi);

}  // namespace meshcomp

#endif  // MESHCOMP_COMPILER_H_
