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

#ifndef MESHCOMP_POWER_H_
#define MESHCOMP_POWER_H_

#include <vector>

#include "meshcomp/compiler.h"
#include "meshcomp/mesh.h"

namespace meshcomp {

// Smallest V^2 >= 0 with alpha + beta V^2 = phi (mod 2 pi).
double PhaseToV2(double phi, const PhaseShifterCal& cal);

struct PowerReport {
  // Internal then external shifter of every MZI in canonical order, then the
  // output shifters (if included).
  std::vector<double> per_shifter_v2;
  double total = 0.0;
};

struct PowerOptions {
  bool include_output_phases = true;
};

// Throws std::invalid_argument if the program does not fit the chip.
PowerReport ProgramPower(const PhaseProgram& program, const ChipSpec& chip,
                         const PowerOptions& options = {});

// Same sum without building the per-shifter list.
double ProgramPowerTotal(const PhaseProgram& program, const ChipSpec& chip,
                         const PowerOptions& options = {});

}  // namespace meshcomp

#endif  // MESHCOMP_POWER_H_
