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

// Splitting-ratio calibration from output intensities.
//
// Per-MZI: each MZI in turn is crossed (phi_i = 0) with every other MZI in
// the bar state, so light injected at its top mode reaches it unmixed and
// leaves on its two modes in the ratio cot^2(2 theta).
//
// Global: a probe unitary U0 is compiled with the tailored compiler for a
// trial reflectivity r, run on the chip for every input port, and the
// measured intensities are compared with |U0|^2. The r that makes the
// compiled probe land best is the fitted uniform reflectivity.

#ifndef MESHCOMP_CALIBRATION_H_
#define MESHCOMP_CALIBRATION_H_

#include <optional>
#include <utility>
#include <vector>

#include "meshcomp/compiler.h"
#include "meshcomp/linalg.h"
#include "meshcomp/simulator.h"

namespace meshcomp {

struct CalibrationResult {
  std::optional<std::vector<double>> per_mzi_theta;
  std::optional<double> global_theta;
  int evaluations = 0;
  double residual = 0.0;
  // Set when the fit ran into the search interval edge or out of budget.
  bool warning = false;
  // (reflectivity, f) per evaluation, global method only.
  std::vector<std::pair<double, double>> trace;
};

// Intensities only fix cos^2(2 theta), which is shared by r and 1 - r.
enum class ReflectivityBranch {
  kBelowHalf,  // r <= 0.5, theta in [pi/4, pi/2)
  kAboveHalf,  // r >= 0.5, theta in (0, pi/4]
};

// theta from one crossed MZI's bar/cross intensities. I_bar = 0 gives
// pi/4. Throws std::domain_error when no light reached the cross port.
double ThetaFromCrossIntensities(double i_bar, double i_cross,
                                 ReflectivityBranch branch);

// Program with MZI `mzi` crossed and every other MZI barred.
PhaseProgram IsolationProgram(int n, int mzi);

CalibrationResult CalibratePerMzi(
    ChipUnderTest& chip,
    ReflectivityBranch branch = ReflectivityBranch::kBelowHalf);

// Every MZI of an ideal mesh set to reflectivity r_probe, zero external and
// output phases.
PhaseProgram ProbeProgram(int n, double r_probe);
UnitaryMatrix ProbeUnitary(int n, double r_probe);

struct GlobalCalibrationOptions {
  // Probe reflectivity; the guess is used when unset.
  std::optional<double> probe_reflectivity;
  double half_width = 0.3;
  double lower = 0.01;
  double upper = 0.99;
  double x_tolerance = 1e-8;
  int max_evaluations = 30;
};

// ||measured - |U0|^2||_2 over all N^2 intensities for the probe compiled
// at uniform reflectivity r.
double GlobalFitResidual(ChipUnderTest& chip, const UnitaryMatrix& probe,
                         double r);

CalibrationResult CalibrateGlobal(ChipUnderTest& chip, double r_guess,
                                  const GlobalCalibrationOptions& options = {});

}  // namespace meshcomp

#endif  // MESHCOMP_CALIBRATION_H_
