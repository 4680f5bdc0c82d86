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

#include "meshcomp/simulator.h"

#include <stdexcept>
#include <string>

#include "meshcomp/rng.h"

namespace meshcomp {

namespace {

void CheckFits(const PhaseProgram& program, const ChipSpec& chip) {
  program.Validate();
  if (program.n_modes != chip.n_modes()) {
    throw std::invalid_argument("program has " +
                                std::to_string(program.n_modes) +
                                " modes, chip has " +
                                std::to_string(chip.n_modes()));
  }
}

std::vector<double> ColumnIntensities(const ComplexMatrix& u, int port) {
  if (port < 0 || port >= u.cols()) {
    throw DimensionError("input port " + std::to_string(port) +
                         " out of range");
  }
  std::vector<double> out(u.rows());
  for (Eigen::Index j = 0; j < u.rows(); ++j) out[j] = std::norm(u(j, port));
  return out;
}

}  // namespace

UnitaryMatrix Execute(const PhaseProgram& program, const ChipSpec& chip) {
  CheckFits(program, chip);
  return Reconstruct(program, chip.thetas());
}

std::vector<double> IntensityResponse(const PhaseProgram& program,
                                      const ChipSpec& chip, int input_port) {
  CheckFits(program, chip);
  return ColumnIntensities(ReconstructMatrix(program, chip.thetas()),
                           input_port);
}

SimulatedChip::SimulatedChip(ChipSpec chip, SimulatorOptions options)
    : chip_(std::move(chip)), options_(options) {
  if (options_.phase_error_sd > 0.0) {
    Rng rng(DeriveSeed(options_.seed, 0));
    std::normal_distribution<double> normal(0.0, options_.phase_error_sd);
    for (int k = 0; k < chip_.mzi_count(); ++k) {
      internal_error_.push_back(normal(rng));
      external_error_.push_back(normal(rng));
    }
    for (int j = 0; j < chip_.n_modes(); ++j) output_error_.push_back(normal(rng));
  }
}

PhaseProgram SimulatedChip::Perturb(const PhaseProgram& program) const {
  CheckFits(program, chip_);
  if (internal_error_.empty()) return program;
  PhaseProgram p = program;
  for (size_t k = 0; k < p.settings.size(); ++k) {
    p.settings[k].phi_i += internal_error_[k];
    p.settings[k].phi_e += external_error_[k];
  }
  for (size_t j = 0; j < p.output_phases.size(); ++j) {
    p.output_phases[j] += output_error_[j];
  }
  return p;
}

UnitaryMatrix SimulatedChip::Execute(const PhaseProgram& program) const {
  return Reconstruct(Perturb(program), chip_.thetas());
}

std::vector<double> SimulatedChip::Measure(const PhaseProgram& program,
                                           int input_port) {
  std::vector<double> out = ColumnIntensities(
      ReconstructMatrix(Perturb(program), chip_.thetas()), input_port);
  ++measurements_;
  if (options_.intensity_noise_sd > 0.0) {
    Rng rng(DeriveSeed(options_.seed, ++noise_counter_));
    std::normal_distribution<double> normal(0.0, options_.intensity_noise_sd);
    for (double& v : out) v += normal(rng);
  }
  return out;
}

}  // namespace meshcomp
