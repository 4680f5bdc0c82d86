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

#include "meshcomp/compiler.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace meshcomp {

namespace {

// Both matrix elements below this magnitude: nothing to null.
constexpr double kNullThreshold = 1e-12;
// atan2 of a vanishing (y, x) pair is defined as 0.
constexpr double kAtanZero = 1e-14;

double SafeAtan2(double y, double x) {
  if (std::abs(y) < kAtanZero && std::abs(x) < kAtanZero) return 0.0;
  return std::atan2(y, x);
}

double ArgRatio(Complex num, Complex den) {
  const double a = std::abs(num) > 0.0 ? std::arg(num) : 0.0;
  const double b = std::abs(den) > 0.0 ? std::arg(den) : 0.0;
  return a - b;
}

// phi_i from s = cos(atan|partner/target|) / sin(2 theta).
void SolveInternal(double partner_mag, double target_mag, double theta,
                   NullingPhases& out) {
  const double a = std::atan2(partner_mag, target_mag);
  const double s = std::cos(a) / std::sin(2.0 * theta);
  if (s > -1.0 && s < 1.0) {
    out.phi_i = 2.0 * std::acos(s);
  } else if (s <= -1.0) {
    out.phi_i = kTwoPi;
    out.clamped = s < -1.0;
  } else {
    out.phi_i = 0.0;
    out.clamped = s > 1.0;
  }
}

}  // namespace

double WrapPhase(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

void PhaseProgram::Validate() const {
  if (n_modes < 1) throw std::invalid_argument("program needs n >= 1");
  const size_t expected = static_cast<size_t>(n_modes) * (n_modes - 1) / 2;
  if (settings.size() != expected) {
    throw std::invalid_argument("program for " + std::to_string(n_modes) +
                                " modes needs " + std::to_string(expected) +
                                " MZI settings, got " +
                                std::to_string(settings.size()));
  }
  for (size_t k = 0; k < settings.size(); ++k) {
    if (settings[k].mzi != static_cast<int>(k)) {
      throw std::invalid_argument("setting " + std::to_string(k) +
                                  " refers to MZI " +
                                  std::to_string(settings[k].mzi));
    }
    if (!std::isfinite(settings[k].phi_i) ||
        !std::isfinite(settings[k].phi_e)) {
      throw std::invalid_argument("non-finite phase in setting " +
                                  std::to_string(k));
    }
  }
  if (static_cast<int>(output_phases.size()) != n_modes) {
    throw std::invalid_argument("program needs one output phase per mode");
  }
  for (double g : output_phases) {
    if (!std::isfinite(g)) throw std::invalid_argument("non-finite phase");
  }
}

PhaseProgram UniformProgram(int n, double phi_i, double phi_e) {
  PhaseProgram p;
  p.n_modes = n;
  const int count = n * (n - 1) / 2;
  for (int k = 0; k < count; ++k) p.settings.push_back({k, phi_i, phi_e});
  p.output_phases.assign(n, 0.0);
  return p;
}

NullingPhases LeftNullingPhases(Complex partner, Complex target,
                                double theta) {
  NullingPhases out;
  const double pm = std::abs(partner);
  const double tm = std::abs(target);
  if (pm < kNullThreshold && tm < kNullThreshold) {
    out.phi_i = kPi;  // bar
    out.phi_e = 0.0;
    return out;
  }
  SolveInternal(pm, tm, theta, out);
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double correction = SafeAtan2(-s2 * std::sin(out.phi_i),
                                      c2 - s2 * std::cos(out.phi_i));
  out.phi_e = WrapPhase(-ArgRatio(partner, target) + kPi / 2.0 -
                        out.phi_i / 2.0 + correction);
  return out;
}

NullingPhases RightNullingPhases(Complex target, Complex partner,
                                 double theta) {
  NullingPhases out;
  const double pm = std::abs(partner);
  const double tm = std::abs(target);
  if (pm < kNullThreshold && tm < kNullThreshold) {
    out.phi_i = kPi;
    out.phi_e = 0.0;
    return out;
  }
  SolveInternal(pm, tm, theta, out);
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double correction = SafeAtan2(-c2 * std::sin(out.phi_i),
                                      -s2 + c2 * std::cos(out.phi_i));
  out.phi_e = WrapPhase(-ArgRatio(partner, target) - kPi / 2.0 +
                        out.phi_i / 2.0 + correction);
  return out;
}

NullingPhases NullWithZ(ComplexMatrix& u, int col, int row, double theta) {
  if (row < 1 || row >= u.rows() || col < 0 || col >= u.cols()) {
    throw DimensionError("left nulling target out of range");
  }
  const NullingPhases p = LeftNullingPhases(u(row - 1, col), u(row, col), theta);
  ApplyLeft(u, MziMatrix(p.phi_i, p.phi_e, theta), row - 1);
  return p;
}

NullingPhases NullWithZinv(ComplexMatrix& u, int col, int row, double theta) {
  if (row < 0 || row >= u.rows() || col < 0 || col + 1 >= u.cols()) {
    throw DimensionError("right nulling target out of range");
  }
  const NullingPhases p =
      RightNullingPhases(u(row, col), u(row, col + 1), theta);
  ApplyRight(u, MziMatrix(p.phi_i, p.phi_e, theta).adjoint(), col);
  return p;
}

MigratedPhases MigrateThroughDiagonal(double phi_i, double phi_e,
                                      Complex d_top, Complex d_bottom) {
  // B(-t) = R(pi) B(t) R(pi) gives
  //   Z^-1(pi, pe) diag(d0, d1)
  //     = diag(d1 e^{i(pi - pe)}, d1) Z(2 pi - pi_, pi + arg(d0 / d1)).
  MigratedPhases out;
  out.phi_i = kTwoPi - phi_i;
  out.phi_e = WrapPhase(kPi + std::arg(d_top) - std::arg(d_bottom));
  out.d_top = d_bottom * std::polar(1.0, kPi - phi_e);
  out.d_bottom = d_bottom;
  return out;
}

namespace {

std::vector<NullingStep> BuildPlan(int n) {
  std::vector<NullingStep> steps;
  for (int i = 0; i + 1 < n; ++i) {
    if (i % 2 == 0) {
      for (int j = 0; j <= i; ++j) {
        const int col = i - j;
        steps.push_back({NullingSide::kRight, n - 1 - j, col, col, -1});
      }
    } else {
      for (int j = 1; j <= i + 1; ++j) {
        const int row = n + j - i - 2;
        steps.push_back({NullingSide::kLeft, row, j - 1, row - 1, -1});
      }
    }
  }

  // Light meets the right factors in nulling order, then the migrated left
  // factors in reverse nulling order. Each factor goes to the first free
  // layer of matching parity after everything it depends on.
  std::vector<size_t> light_order;
  for (size_t k = 0; k < steps.size(); ++k) {
    if (steps[k].side == NullingSide::kRight) light_order.push_back(k);
  }
  for (size_t k = steps.size(); k-- > 0;) {
    if (steps[k].side == NullingSide::kLeft) light_order.push_back(k);
  }
  std::vector<int> last_layer(n, -1);
  std::vector<bool> used(steps.size(), false);
  for (size_t k : light_order) {
    const int m = steps[k].top_mode;
    int layer = std::max(last_layer[m], last_layer[m + 1]) + 1;
    if (layer % 2 != m % 2) ++layer;
    const int index = MziIndex(n, layer, m);
    if (index < 0 || used[index]) {
      throw std::logic_error("nulling order does not map onto the mesh");
    }
    used[index] = true;
    steps[k].mzi = index;
    last_layer[m] = last_layer[m + 1] = layer;
  }
  return steps;
}

}  // namespace

const std::vector<NullingStep>& NullingPlan(int n) {
  if (n < 1) throw DimensionError("plan needs n >= 1");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<const std::vector<NullingStep>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const std::vector<NullingStep>>(BuildPlan(n));
  return *slot;
}

PhaseProgram Decompose(const UnitaryMatrix& u, std::span<const double> thetas,
                       CompileStats* stats) {
  const int n = u.size();
  const size_t count = static_cast<size_t>(n) * (n - 1) / 2;
  if (thetas.size() != count) {
    throw DimensionError("decompose needs " + std::to_string(count) +
                         " thetas for " + std::to_string(n) + " modes, got " +
                         std::to_string(thetas.size()));
  }
  const auto& plan = NullingPlan(n);
  ComplexMatrix work = u.matrix();
  PhaseProgram program;
  program.n_modes = n;
  program.settings.resize(count);
  int clamped = 0;
  for (const NullingStep& step : plan) {
    const double theta = thetas[step.mzi];
    const NullingPhases p =
        step.side == NullingSide::kRight
            ? NullWithZinv(work, step.col, step.row, theta)
            : NullWithZ(work, step.col, step.row, theta);
    clamped += p.clamped ? 1 : 0;
    program.settings[step.mzi] = {step.mzi, p.phi_i, p.phi_e};
  }

  std::vector<Complex> diag(n);
  for (int j = 0; j < n; ++j) {
    const Complex d = work(j, j);
    const double mag = std::abs(d);
    // Clamped steps leave residue off the diagonal; keep only the phase.
    diag[j] = mag > 0.0 ? d / mag : Complex(1.0);
  }
  for (size_t k = plan.size(); k-- > 0;) {
    const NullingStep& step = plan[k];
    if (step.side != NullingSide::kLeft) continue;
    MziSetting& s = program.settings[step.mzi];
    const int m = step.top_mode;
    const MigratedPhases mp =
        MigrateThroughDiagonal(s.phi_i, s.phi_e, diag[m], diag[m + 1]);
    s.phi_i = mp.phi_i;
    s.phi_e = mp.phi_e;
    diag[m] = mp.d_top;
    diag[m + 1] = mp.d_bottom;
  }
  program.output_phases.resize(n);
  for (int j = 0; j < n; ++j) program.output_phases[j] = WrapPhase(std::arg(diag[j]));
  if (stats != nullptr) stats->clamped_steps = clamped;
  return program;
}

PhaseProgram DecomposeIdeal(const UnitaryMatrix& u, CompileStats* stats) {
  const int n = u.size();
  const std::vector<double> thetas(static_cast<size_t>(n) * (n - 1) / 2,
                                   kBalancedTheta);
  return Decompose(u, thetas, stats);
}

ComplexMatrix ReconstructMatrix(const PhaseProgram& program,
                                std::span<const double> thetas) {
  program.Validate();
  const int n = program.n_modes;
  if (thetas.size() != program.settings.size()) {
    throw DimensionError("reconstruct needs one theta per MZI");
  }
  const auto layout = MeshLayout(n);
  ComplexMatrix u = ComplexMatrix::Identity(n, n);
  for (size_t k = 0; k < program.settings.size(); ++k) {
    const MziSetting& s = program.settings[k];
    ApplyLeft(u, MziMatrix(s.phi_i, s.phi_e, thetas[k]), layout[k][1]);
  }
  for (int j = 0; j < n; ++j) u.row(j) *= std::polar(1.0, program.output_phases[j]);
  return u;
}

UnitaryMatrix Reconstruct(const PhaseProgram& program,
                          std::span<const double> thetas) {
  return UnitaryMatrix(ReconstructMatrix(program, thetas));
}

}  // namespace meshcomp
