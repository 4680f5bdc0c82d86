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

#include "meshcomp/calibration.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "meshcomp/brent.h"
#include "meshcomp/mesh.h"

namespace meshcomp {

double ThetaFromCrossIntensities(double i_bar, double i_cross,
                                 ReflectivityBranch branch) {
  i_bar = std::max(i_bar, 0.0);
  i_cross = std::max(i_cross, 0.0);
  if (!(i_cross > 0.0)) {
    throw std::domain_error("no light at the cross port; reflectivity is 0 or 1");
  }
  // 2 theta' = acot(sqrt(I_bar / I_cross)), theta' in (0, pi/4]
  const double t = 0.5 * std::atan2(std::sqrt(i_cross), std::sqrt(i_bar));
  return branch == ReflectivityBranch::kAboveHalf ? t : kPi / 2.0 - t;
}

PhaseProgram IsolationProgram(int n, int mzi) {
  PhaseProgram p = UniformProgram(n, kPi, 0.0);
  if (mzi < 0 || mzi >= static_cast<int>(p.settings.size())) {
    throw DimensionError("MZI index " + std::to_string(mzi) + " out of range");
  }
  p.settings[mzi].phi_i = 0.0;
  return p;
}

CalibrationResult CalibratePerMzi(ChipUnderTest& chip,
                                  ReflectivityBranch branch) {
  const int n = chip.n_modes();
  const auto layout = MeshLayout(n);
  std::vector<double> thetas;
  thetas.reserve(layout.size());
  CalibrationResult result;
  for (size_t k = 0; k < layout.size(); ++k) {
    const int m = layout[k][1];
    const std::vector<double> out =
        chip.Measure(IsolationProgram(n, static_cast<int>(k)), m);
    ++result.evaluations;
    thetas.push_back(ThetaFromCrossIntensities(out[m], out[m + 1], branch));
  }
  result.per_mzi_theta = std::move(thetas);
  return result;
}

PhaseProgram ProbeProgram(int n, double r_probe) {
  if (!(r_probe >= 0.0 && r_probe <= 1.0)) {
    throw std::domain_error("probe reflectivity must lie in [0, 1]");
  }
  // ideal MZI reflectivity is sin^2(phi_i / 2)
  return UniformProgram(n, 2.0 * std::asin(std::sqrt(r_probe)), 0.0);
}

UnitaryMatrix ProbeUnitary(int n, double r_probe) {
  return Reconstruct(ProbeProgram(n, r_probe),
                     std::vector<double>(n * (n - 1) / 2, kBalancedTheta));
}

double GlobalFitResidual(ChipUnderTest& chip, const UnitaryMatrix& probe,
                         double r) {
  const int n = chip.n_modes();
  if (probe.size() != n) throw DimensionError("probe size does not match chip");
  const std::vector<double> thetas(n * (n - 1) / 2, ThetaFromReflectivity(r));
  const PhaseProgram program = Decompose(probe, thetas);
  double sum = 0.0;
  for (int port = 0; port < n; ++port) {
    const std::vector<double> measured = chip.Measure(program, port);
    for (int j = 0; j < n; ++j) {
      const double d = measured[j] - std::norm(probe(j, port));
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

CalibrationResult CalibrateGlobal(ChipUnderTest& chip, double r_guess,
                                  const GlobalCalibrationOptions& options) {
  if (!(r_guess > 0.0 && r_guess < 1.0)) {
    throw std::domain_error("reflectivity guess must lie in (0, 1)");
  }
  const double lo = std::max(options.lower, r_guess - options.half_width);
  const double hi = std::min(options.upper, r_guess + options.half_width);
  const double x0 = std::clamp(r_guess, lo + 1e-6, hi - 1e-6);
  const UnitaryMatrix probe = ProbeUnitary(
      chip.n_modes(), options.probe_reflectivity.value_or(r_guess));

  // minimize f^2: smooth at a zero residual, same minimizer
  const BrentResult b = BrentMinimize(
      [&](double r) {
        const double f = GlobalFitResidual(chip, probe, r);
        return f * f;
      },
      lo, x0, hi, {options.x_tolerance, options.max_evaluations});

  CalibrationResult result;
  result.global_theta = ThetaFromReflectivity(b.x);
  result.evaluations = b.evaluations;
  result.residual = std::sqrt(b.fx);
  for (const auto& [x, f2] : b.trace) result.trace.emplace_back(x, std::sqrt(f2));
  const double edge = 10.0 * options.x_tolerance;
  result.warning = !b.converged || b.x - lo < edge || hi - b.x < edge;
  return result;
}

}  // namespace meshcomp
