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

#ifndef MESHCOMP_SIMULATOR_H_
#define MESHCOMP_SIMULATOR_H_

#include <cstdint>
#include <vector>

#include "meshcomp/compiler.h"
#include "meshcomp/linalg.h"
#include "meshcomp/mesh.h"

namespace meshcomp {

// The unitary a chip realizes when driven with `program`: the programmed
// phases pass through the chip's true beam-splitters.
UnitaryMatrix Execute(const PhaseProgram& program, const ChipSpec& chip);

// |U_r(j, input_port)|^2 for every output j; unit, lossless input.
std::vector<double> IntensityResponse(const PhaseProgram& program,
                                      const ChipSpec& chip, int input_port);

struct SimulatorOptions {
  // Additive Gaussian noise on every measured intensity.
  double intensity_noise_sd = 0.0;
  // Static per-shifter phase error (miscalibrated phase-voltage curves),
  // drawn once per chip.
  double phase_error_sd = 0.0;
  std::uint64_t seed = 0;
};

// Intensity-measurement access to a chip. Calibration only talks to this.
class ChipUnderTest {
 public:
  virtual ~ChipUnderTest() = default;
  virtual int n_modes() const = 0;
  // Output intensities with light injected at `input_port`.
  virtual std::vector<double> Measure(const PhaseProgram& program,
                                      int input_port) = 0;
};

// A ChipSpec behind a ChipUnderTest. Noise draws advance an internal stream,
// so Measure() is deterministic per call sequence but not thread-safe.
class SimulatedChip : public ChipUnderTest {
 public:
  explicit SimulatedChip(ChipSpec chip, SimulatorOptions options = {});

  int n_modes() const override { return chip_.n_modes(); }
  std::vector<double> Measure(const PhaseProgram& program,
                              int input_port) override;

  // Noise-free unitary including any static phase errors.
  UnitaryMatrix Execute(const PhaseProgram& program) const;

  const ChipSpec& spec() const { return chip_; }
  long measurements() const { return measurements_; }

 private:
  PhaseProgram Perturb(const PhaseProgram& program) const;

  ChipSpec chip_;
  SimulatorOptions options_;
  std::vector<double> internal_error_;
  std::vector<double> external_error_;
  std::vector<double> output_error_;
  std::uint64_t noise_counter_ = 0;
  long measurements_ = 0;
};

}  // namespace meshcomp

#endif  // MESHCOMP_SIMULATOR_H_
