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

#include "meshcomp/mesh.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "meshcomp/rng.h"

namespace meshcomp {

double ThetaFromReflectivity(double reflectivity) {
  if (!(reflectivity > 0.0 && reflectivity < 1.0)) {
    throw std::domain_error("reflectivity must lie in (0, 1), got " +
                            std::to_string(reflectivity));
  }
  return std::acos(std::sqrt(reflectivity));
}

double ReflectivityFromTheta(double theta) {
  const double c = std::cos(theta);
  return c * c;
}

Matrix2c BeamSplitter(double theta) {
  if (!(theta > 0.0 && theta < kPi / 2.0)) {
    throw std::domain_error("beam-splitter theta must lie in (0, pi/2)");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix2c b;
  b << Complex(c, 0.0), Complex(0.0, s), Complex(0.0, s), Complex(c, 0.0);
  return b;
}

Matrix2c PhaseShifter(double phi) {
  Matrix2c r = Matrix2c::Zero();
  r(0, 0) = std::polar(1.0, phi);
  r(1, 1) = 1.0;
  return r;
}

Matrix2c MziMatrix(double phi_i, double phi_e, double theta) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const Complex ei = std::polar(1.0, phi_i);
  const Complex ee = std::polar(1.0, phi_e);
  const Complex cross = Complex(0.0, 1.0) * std::polar(1.0, phi_i / 2.0) *
                        std::cos(phi_i / 2.0) * std::sin(2.0 * theta);
  Matrix2c z;
  z(0, 0) = ee * (ei * c2 - s2);
  z(0, 1) = cross;
  z(1, 0) = ee * cross;
  z(1, 1) = c2 - ei * s2;
  return z;
}

double MziReflectivity(double phi_i, double theta) {
  const double s = std::sin(2.0 * theta);
  const double c = std::cos(phi_i / 2.0);
  return 1.0 - s * s * c * c;
}

ComplexMatrix EmbedTwoMode(const Matrix2c& z, int m, int n) {
  if (n < 2 || m < 0 || m > n - 2) {
    throw DimensionError("two-mode block at mode " + std::to_string(m) +
                         " does not fit in " + std::to_string(n) + " modes");
  }
  ComplexMatrix out = ComplexMatrix::Identity(n, n);
  out.block<2, 2>(m, m) = z;
  return out;
}

void ApplyLeft(ComplexMatrix& u, const Matrix2c& z, int m) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    const Complex a = u(m, j);
    const Complex b = u(m + 1, j);
    u(m, j) = z(0, 0) * a + z(0, 1) * b;
    u(m + 1, j) = z(1, 0) * a + z(1, 1) * b;
  }
}

void ApplyRight(ComplexMatrix& u, const Matrix2c& z, int m) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const Complex a = u(i, m);
    const Complex b = u(i, m + 1);
    u(i, m) = a * z(0, 0) + b * z(1, 0);
    u(i, m + 1) = a * z(0, 1) + b * z(1, 1);
  }
}

std::vector<std::array<int, 2>> MeshLayout(int n) {
  std::vector<std::array<int, 2>> slots;
  if (n < 2) return slots;
  slots.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int layer = 0; layer < n; ++layer) {
    for (int m = layer % 2; m <= n - 2; m += 2) slots.push_back({layer, m});
  }
  return slots;
}

int MziIndex(int n, int layer, int top_mode) {
  if (layer < 0 || layer >= n || top_mode < 0 || top_mode > n - 2 ||
      (top_mode % 2) != (layer % 2)) {
    return -1;
  }
  // Even layers hold floor(n/2) MZIs, odd layers floor((n-1)/2).
  const int even = n / 2;
  const int odd = (n - 1) / 2;
  const int before = (layer / 2) * (even + odd) + (layer % 2 ? even : 0);
  return before + top_mode / 2;
}

namespace {

void CheckCal(const PhaseShifterCal& cal, const std::string& what) {
  if (!std::isfinite(cal.alpha)) {
    throw std::invalid_argument(what + ": alpha must be finite");
  }
  if (!(cal.beta > 0.0) || !std::isfinite(cal.beta)) {
    throw std::invalid_argument(what + ": beta must be positive");
  }
}

}  // namespace

ChipSpec::ChipSpec(int n_modes, std::vector<MziUnit> mzis,
                   std::vector<PhaseShifterCal> output_shifters)
    : n_(n_modes), mzis_(std::move(mzis)), outputs_(std::move(output_shifters)) {
  if (n_ < 1) throw DimensionError("chip needs at least one mode");
  const auto layout = MeshLayout(n_);
  if (mzis_.size() != layout.size()) {
    throw std::invalid_argument(
        "chip with " + std::to_string(n_) + " modes needs " +
        std::to_string(layout.size()) + " MZIs, got " +
        std::to_string(mzis_.size()));
  }
  for (size_t k = 0; k < mzis_.size(); ++k) {
    const MziUnit& u = mzis_[k];
    const std::string where = "MZI " + std::to_string(k);
    if (u.layer != layout[k][0] || u.top_mode != layout[k][1]) {
      throw std::invalid_argument(where + " is not at its mesh slot (layer " +
                                  std::to_string(layout[k][0]) + ", mode " +
                                  std::to_string(layout[k][1]) + ")");
    }
    if (!(u.reflectivity > 0.0 && u.reflectivity < 1.0)) {
      throw std::invalid_argument(where + ": reflectivity must be in (0, 1)");
    }
    CheckCal(u.internal, where + " internal shifter");
    CheckCal(u.external, where + " external shifter");
  }
  if (static_cast<int>(outputs_.size()) != n_) {
    throw std::invalid_argument("chip needs one output shifter per mode");
  }
  for (size_t k = 0; k < outputs_.size(); ++k) {
    CheckCal(outputs_[k], "output shifter " + std::to_string(k));
  }
}

ChipSpec ChipSpec::Uniform(int n_modes, double reflectivity) {
  std::vector<MziUnit> mzis;
  for (const auto& [layer, m] : MeshLayout(n_modes)) {
    MziUnit u;
    u.layer = layer;
    u.top_mode = m;
    u.reflectivity = reflectivity;
    mzis.push_back(u);
  }
  return ChipSpec(n_modes, std::move(mzis),
                  std::vector<PhaseShifterCal>(n_modes));
}

std::vector<double> ChipSpec::thetas() const {
  std::vector<double> out;
  out.reserve(mzis_.size());
  for (const auto& u : mzis_) out.push_back(u.theta());
  return out;
}

std::vector<double> ChipSpec::reflectivities() const {
  std::vector<double> out;
  out.reserve(mzis_.size());
  for (const auto& u : mzis_) out.push_back(u.reflectivity);
  return out;
}

ChipSpec ChipSpec::WithReflectivities(const std::vector<double>& r) const {
  if (r.size() != mzis_.size()) {
    throw DimensionError("reflectivity list does not match MZI count");
  }
  std::vector<MziUnit> mzis = mzis_;
  for (size_t k = 0; k < r.size(); ++k) mzis[k].reflectivity = r[k];
  return ChipSpec(n_, std::move(mzis), outputs_);
}

ChipSpec SampleChip(int n, const ChipSampleOptions& options,
                    std::uint64_t seed) {
  if (n < 2) throw DimensionError("sampled chips need n >= 2");
  const double mean = options.reflectivity_mean;
  const double sd = options.reflectivity_sd;
  if (!(sd >= 0.0) || !std::isfinite(sd) || !std::isfinite(mean)) {
    throw std::invalid_argument("reflectivity sd must be finite and >= 0");
  }
  if (sd == 0.0) {
    if (!(mean > 0.0 && mean < 1.0)) {
      throw std::invalid_argument("reflectivity mean must be in (0, 1)");
    }
  } else {
    // Probability mass of normal(mean, sd) inside (0, 1).
    const auto cdf = [&](double x) {
      return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
    };
    if (cdf(1.0) - cdf(0.0) < 1e-3) {
      throw std::invalid_argument(
          "reflectivity distribution puts almost no mass inside (0, 1)");
    }
  }
  if (!(options.beta_min > 0.0) || !(options.beta_max >= options.beta_min)) {
    throw std::invalid_argument("need 0 < beta_min <= beta_max");
  }

  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_lo = std::log(options.beta_min);
  const double log_hi = std::log(options.beta_max);
  const auto draw_cal = [&] {
    PhaseShifterCal cal;
    cal.alpha = kTwoPi * unit(rng);
    cal.beta = std::exp(log_lo + (log_hi - log_lo) * unit(rng));
    return cal;
  };
  const auto draw_reflectivity = [&] {
    if (sd == 0.0) return mean;
    for (;;) {
      const double r = mean + sd * normal(rng);
      if (r > 0.0 && r < 1.0) return r;
    }
  };

  std::vector<MziUnit> mzis;
  for (const auto& [layer, m] : MeshLayout(n)) {
    MziUnit u;
    u.layer = layer;
    u.top_mode = m;
    u.reflectivity = draw_reflectivity();
    u.internal = draw_cal();
    u.external = draw_cal();
    mzis.push_back(u);
  }
  std::vector<PhaseShifterCal> outputs;
  for (int k = 0; k < n; ++k) outputs.push_back(draw_cal());
  return ChipSpec(n, std::move(mzis), std::move(outputs));
}

}  // namespace meshcomp
