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

#include "meshcomp/power.h"

#include <stdexcept>

namespace meshcomp {

double PhaseToV2(double phi, const PhaseShifterCal& cal) {
  return WrapPhase(phi - cal.alpha) / cal.beta;
}

namespace {

void CheckShapes(const PhaseProgram& program, const ChipSpec& chip) {
  program.Validate();
  if (program.n_modes != chip.n_modes()) {
    throw std::invalid_argument("program and chip have different mode counts");
  }
}

}  // namespace

PowerReport ProgramPower(const PhaseProgram& program, const ChipSpec& chip,
                         const PowerOptions& options) {
  CheckShapes(program, chip);
  PowerReport report;
  const auto& mzis = chip.mzis();
  report.per_shifter_v2.reserve(2 * mzis.size() + chip.n_modes());
  for (size_t k = 0; k < mzis.size(); ++k) {
    report.per_shifter_v2.push_back(
        PhaseToV2(program.settings[k].phi_i, mzis[k].internal));
    report.per_shifter_v2.push_back(
        PhaseToV2(program.settings[k].phi_e, mzis[k].external));
  }
  if (options.include_output_phases) {
    for (int j = 0; j < chip.n_modes(); ++j) {
      report.per_shifter_v2.push_back(
          PhaseToV2(program.output_phases[j], chip.output_shifters()[j]));
    }
  }
  for (double v : report.per_shifter_v2) report.total += v;
  return report;
}

double ProgramPowerTotal(const PhaseProgram& program, const ChipSpec& chip,
                         const PowerOptions& options) {
  CheckShapes(program, chip);
  const auto& mzis = chip.mzis();
  double total = 0.0;
  for (size_t k = 0; k < mzis.size(); ++k) {
    total += PhaseToV2(program.settings[k].phi_i, mzis[k].internal);
    total += PhaseToV2(program.settings[k].phi_e, mzis[k].external);
  }
  if (options.include_output_phases) {
    for (int j = 0; j < chip.n_modes(); ++j) {
      total += PhaseToV2(program.output_phases[j], chip.output_shifters()[j]);
    }
  }
  return total;
}

}  // namespace meshcomp
