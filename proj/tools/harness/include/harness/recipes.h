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

// Desk-scale experiment recipes. Every recipe is deterministic in its seeds
// and fans samples out over ParallelFor; row order is the sample index.

#ifndef HARNESS_RECIPES_H_
#define HARNESS_RECIPES_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "meshcomp/calibration.h"
#include "meshcomp/mesh.h"
#include "meshcomp/port_alloc.h"

namespace harness {

double Mean(const std::vector<double>& v);
// Sample standard deviation (n - 1).
double StdDev(const std::vector<double>& v);
double Median(std::vector<double> v);

// Haar seed of sample s in stream `seed`.
std::uint64_t SampleSeed(std::uint64_t seed, long s);

// ---- power-minimizing allocation -----------------------------------------

struct PowerSearchOptions {
  int n = 4;
  long samples = 1000;
  std::uint64_t seed = 5;
  std::uint64_t chip_seed = 2024;
  int sweeps = 2;
  // Exhaustive search is skipped (NaN column) above this size.
  int unrestricted_cap = meshcomp::kDefaultUnrestrictedCap;
};

struct PowerSearchRow {
  double default_power;
  double unrestricted_power;
  double sweep_power;
};

struct PowerSearchResult {
  std::vector<PowerSearchRow> rows;
  double mean_default = 0, mean_unrestricted = 0, mean_sweep = 0;
  // 1 - mean(best) / mean(default)
  double unrestricted_reduction = 0, sweep_reduction = 0;
};

PowerSearchResult RunPowerSearch(const PowerSearchOptions& opts);
void WriteCsv(std::ostream& os, const PowerSearchResult& r);

// ---- target-power allocation ----------------------------------------------

struct TargetPowerOptions {
  int n = 8;
  long samples = 1000;
  std::uint64_t seed = 6;
  std::uint64_t chip_seed = 2024;
  int sweeps = 2;
  // Unset: median default power of a pilot batch drawn from a separate
  // seed stream.
  std::optional<double> target;
  long pilot_samples = 200;
};

struct TargetPowerRow {
  double default_power;
  double achieved_power;
};

struct TargetPowerResult {
  double target = 0;
  std::vector<TargetPowerRow> rows;
  double sd_default = 0, sd_achieved = 0, sd_factor = 0;
  double mean_abs_error = 0;
};

TargetPowerResult RunTargetPower(const TargetPowerOptions& opts);
void WriteCsv(std::ostream& os, const TargetPowerResult& r);

// ---- naive vs tailored compilation ----------------------------------------

struct CompileSweepOptions {
  std::vector<int> sizes{6};
  std::vector<double> reflectivities{0.49};
  long samples = 200;
  std::uint64_t seed = 3;
};

struct CompileSweepRow {
  int n;
  double reflectivity;
  long sample;
  double naive;
  double tailored;
  int clamps;
};

struct CompileSweepCell {
  int n;
  double reflectivity;
  double mean_naive;
  double mean_tailored;
};

struct CompileSweepResult {
  std::vector<CompileSweepRow> rows;
  std::vector<CompileSweepCell> cells;  // sizes-major order
};

CompileSweepResult RunCompileSweep(const CompileSweepOptions& opts);
void WriteCsv(std::ostream& os, const CompileSweepResult& r);

// ---- calibrate, compile, allocate -----------------------------------------

enum class AllocationStrategy { kAuto, kUnrestricted, kSweep, kNone };

struct PipelineOptions {
  long samples = 500;
  std::uint64_t seed = 77;
  double r_guess = 0.2;
  AllocationStrategy strategy = AllocationStrategy::kAuto;
  int sweeps = 2;
};

struct PipelineRow {
  double naive;      // ideal compile on the real chip
  double tailored;   // compiled for the calibrated theta
  double allocated;  // plus min-distance port allocation
};

struct PipelineResult {
  meshcomp::CalibrationResult calibration;
  double calibrated_reflectivity = 0;
  std::vector<PipelineRow> rows;
  double mean_naive = 0, mean_tailored = 0, mean_allocated = 0;
  double tailored_factor = 0, allocated_factor = 0;
};

PipelineResult RunPipeline(const meshcomp::ChipSpec& chip,
                           const PipelineOptions& opts);
void WriteCsv(std::ostream& os, const PipelineResult& r);

// ---- global calibration curve ---------------------------------------------

struct CalibrationCurveOptions {
  int n = 12;
  double mean = 0.47;
  double sd = 0.005;
  std::uint64_t chip_seed = 7;
  double r_guess = 0.2;
  double intensity_noise_sd = 0.0;
  int grid_points = 99;  // f(r) on a uniform grid over [0.01, 0.99]
};

struct CalibrationCurveResult {
  meshcomp::CalibrationResult calibration;
  double reflectivity = 0;
  std::vector<std::pair<double, double>> curve;
};

CalibrationCurveResult RunCalibrationCurve(const CalibrationCurveOptions& opts);
// "r,f" rows: the optimizer trace, or the grid curve.
void WriteTraceCsv(std::ostream& os, const CalibrationCurveResult& r);
void WriteCurveCsv(std::ostream& os, const CalibrationCurveResult& r);

}  // namespace harness

#endif  // HARNESS_RECIPES_H_
