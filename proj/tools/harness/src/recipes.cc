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

#include "harness/recipes.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "meshcomp/compiler.h"
#include "meshcomp/io.h"
#include "meshcomp/parallel.h"
#include "meshcomp/power.h"
#include "meshcomp/rng.h"
#include "meshcomp/simulator.h"

namespace harness {

using meshcomp::FormatDouble;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Pilot batches for the target-power recipe live in their own stream.
constexpr std::uint64_t kPilotStream = 0x9e11;

std::vector<double> Column(const auto& rows, auto member) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.*member);
  return out;
}

void CheckSamples(long samples) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
}

}  // namespace

double Mean(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double StdDev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = Mean(v);
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / (v.size() - 1));
}

double Median(std::vector<double> v) {
  if (v.empty()) return kNaN;
  const size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2) return v[mid];
  return 0.5 * (v[mid] + *std::max_element(v.begin(), v.begin() + mid));
}

std::uint64_t SampleSeed(std::uint64_t seed, long s) {
  return meshcomp::DeriveSeed(seed, static_cast<std::uint64_t>(s));
}

PowerSearchResult RunPowerSearch(const PowerSearchOptions& opts) {
  CheckSamples(opts.samples);
  const meshcomp::ChipSpec chip = meshcomp::SampleChip(opts.n, {}, opts.chip_seed);
  const auto objective = meshcomp::Objective::MinPower(chip);
  const bool exhaustive = opts.n <= opts.unrestricted_cap;
  PowerSearchResult result;
  result.rows.resize(opts.samples);
  meshcomp::ParallelFor(opts.samples, [&](long s) {
    const auto u = meshcomp::HaarRandomUnitary(opts.n, SampleSeed(opts.seed, s));
    const auto sweep = meshcomp::SweepSearch(u, objective, {opts.sweeps});
    PowerSearchRow& row = result.rows[s];
    row.default_power = sweep.baseline;
    row.sweep_power = sweep.best.objective;
    row.unrestricted_power =
        exhaustive ? meshcomp::UnrestrictedSearch(u, objective, opts.n)
                         .best.objective
                   : kNaN;
  });
  result.mean_default = Mean(Column(result.rows, &PowerSearchRow::default_power));
  result.mean_sweep = Mean(Column(result.rows, &PowerSearchRow::sweep_power));
  result.mean_unrestricted =
      Mean(Column(result.rows, &PowerSearchRow::unrestricted_power));
  result.sweep_reduction = 1 - result.mean_sweep / result.mean_default;
  result.unrestricted_reduction =
      1 - result.mean_unrestricted / result.mean_default;
  return result;
}

void WriteCsv(std::ostream& os, const PowerSearchResult& r) {
  os << "sample,default_power,unrestricted_power,sweep_power\n";
  for (size_t s = 0; s < r.rows.size(); ++s) {
    const auto& row = r.rows[s];
    os << s << ',' << FormatDouble(row.default_power) << ','
       << (std::isnan(row.unrestricted_power)
               ? std::string()
               : FormatDouble(row.unrestricted_power))
       << ',' << FormatDouble(row.sweep_power) << '\n';
  }
}

TargetPowerResult RunTargetPower(const TargetPowerOptions& opts) {
  CheckSamples(opts.samples);
  const meshcomp::ChipSpec chip = meshcomp::SampleChip(opts.n, {}, opts.chip_seed);
  const auto power = [&](const meshcomp::UnitaryMatrix& u) {
    return meshcomp::ProgramPowerTotal(meshcomp::DecomposeIdeal(u), chip);
  };
  TargetPowerResult result;
  if (opts.target) {
    result.target = *opts.target;
  } else {
    CheckSamples(opts.pilot_samples);
    std::vector<double> pilot(opts.pilot_samples);
    const std::uint64_t stream = meshcomp::DeriveSeed(opts.seed, kPilotStream);
    meshcomp::ParallelFor(opts.pilot_samples, [&](long s) {
      pilot[s] = power(meshcomp::HaarRandomUnitary(opts.n, SampleSeed(stream, s)));
    });
    result.target = Median(std::move(pilot));
  }
  const auto objective =
      meshcomp::Objective::TargetPower(chip, result.target);
  result.rows.resize(opts.samples);
  meshcomp::ParallelFor(opts.samples, [&](long s) {
    const auto u = meshcomp::HaarRandomUnitary(opts.n, SampleSeed(opts.seed, s));
    const auto sweep = meshcomp::SweepSearch(u, objective, {opts.sweeps});
    result.rows[s] = {power(u), power(sweep.best.permuted)};
  });
  const auto achieved = Column(result.rows, &TargetPowerRow::achieved_power);
  result.sd_default = StdDev(Column(result.rows, &TargetPowerRow::default_power));
  result.sd_achieved = StdDev(achieved);
  result.sd_factor = result.sd_default / result.sd_achieved;
  double err = 0;
  for (double a : achieved) err += std::abs(a - result.target);
  result.mean_abs_error = err / achieved.size();
  return result;
}

void WriteCsv(std::ostream& os, const TargetPowerResult& r) {
  os << "sample,target,default_power,achieved_power\n";
  for (size_t s = 0; s < r.rows.size(); ++s) {
    os << s << ',' << FormatDouble(r.target) << ','
       << FormatDouble(r.rows[s].default_power) << ','
       << FormatDouble(r.rows[s].achieved_power) << '\n';
  }
}

CompileSweepResult RunCompileSweep(const CompileSweepOptions& opts) {
  CheckSamples(opts.samples);
  CompileSweepResult result;
  for (int n : opts.sizes) {
    // Same unitaries for every reflectivity of one size.
    const std::uint64_t stream = meshcomp::DeriveSeed(opts.seed, n);
    for (double r : opts.reflectivities) {
      const meshcomp::ChipSpec chip = meshcomp::ChipSpec::Uniform(n, r);
      const auto thetas = chip.thetas();
      std::vector<CompileSweepRow> rows(opts.samples);
      meshcomp::ParallelFor(opts.samples, [&](long s) {
        const auto u = meshcomp::HaarRandomUnitary(n, SampleSeed(stream, s));
        meshcomp::CompileStats stats;
        const auto tailored = meshcomp::Decompose(u, thetas, &stats);
        rows[s] = {n,
                   r,
                   s,
                   meshcomp::FidelityDistance(
                       u, meshcomp::Execute(meshcomp::DecomposeIdeal(u), chip)),
                   meshcomp::FidelityDistance(u, meshcomp::Execute(tailored, chip)),
                   stats.clamped_steps};
      });
      result.cells.push_back({n, r, Mean(Column(rows, &CompileSweepRow::naive)),
                              Mean(Column(rows, &CompileSweepRow::tailored))});
      result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
  }
  return result;
}

void WriteCsv(std::ostream& os, const CompileSweepResult& r) {
  os << "n,reflectivity,sample,naive_distance,tailored_distance,clamped_steps\n";
  for (const auto& row : r.rows) {
    os << row.n << ',' << FormatDouble(row.reflectivity) << ',' << row.sample
       << ',' << FormatDouble(row.naive) << ',' << FormatDouble(row.tailored)
       << ',' << row.clamps << '\n';
  }
}

PipelineResult RunPipeline(const meshcomp::ChipSpec& chip,
                           const PipelineOptions& opts) {
  CheckSamples(opts.samples);
  const int n = chip.n_modes();
  PipelineResult result;
  {
    meshcomp::SimulatedChip device(chip);
    result.calibration = meshcomp::CalibrateGlobal(device, opts.r_guess);
  }
  result.calibrated_reflectivity =
      meshcomp::ReflectivityFromTheta(*result.calibration.global_theta);
  const std::vector<double> assumed(chip.mzi_count(),
                                    *result.calibration.global_theta);
  const auto objective = meshcomp::Objective::MinDistance(assumed);
  AllocationStrategy strategy = opts.strategy;
  if (strategy == AllocationStrategy::kAuto) {
    strategy = n <= meshcomp::kDefaultUnrestrictedCap
                   ? AllocationStrategy::kUnrestricted
                   : AllocationStrategy::kSweep;
  }
  const auto realized = [&](const meshcomp::UnitaryMatrix& u) {
    return meshcomp::FidelityDistance(
        u, meshcomp::Execute(meshcomp::Decompose(u, assumed), chip));
  };
  result.rows.resize(opts.samples);
  meshcomp::ParallelFor(opts.samples, [&](long s) {
    const auto u = meshcomp::HaarRandomUnitary(n, SampleSeed(opts.seed, s));
    PipelineRow& row = result.rows[s];
    row.naive = meshcomp::FidelityDistance(
        u, meshcomp::Execute(meshcomp::DecomposeIdeal(u), chip));
    row.tailored = realized(u);
    switch (strategy) {
      case AllocationStrategy::kUnrestricted:
        row.allocated =
            realized(meshcomp::UnrestrictedSearch(u, objective, n).best.permuted);
        break;
      case AllocationStrategy::kSweep:
        row.allocated = realized(
            meshcomp::SweepSearch(u, objective, {opts.sweeps}).best.permuted);
        break;
      default:
        row.allocated = row.tailored;
    }
  });
  result.mean_naive = Mean(Column(result.rows, &PipelineRow::naive));
  result.mean_tailored = Mean(Column(result.rows, &PipelineRow::tailored));
  result.mean_allocated = Mean(Column(result.rows, &PipelineRow::allocated));
  result.tailored_factor = result.mean_naive / result.mean_tailored;
  result.allocated_factor = result.mean_naive / result.mean_allocated;
  return result;
}

void WriteCsv(std::ostream& os, const PipelineResult& r) {
  os << "sample,naive_distance,tailored_distance,allocated_distance\n";
  for (size_t s = 0; s < r.rows.size(); ++s) {
    os << s << ',' << FormatDouble(r.rows[s].naive) << ','
       << FormatDouble(r.rows[s].tailored) << ','
       << FormatDouble(r.rows[s].allocated) << '\n';
  }
}

CalibrationCurveResult RunCalibrationCurve(const CalibrationCurveOptions& opts) {
  const meshcomp::ChipSpec chip =
      meshcomp::SampleChip(opts.n, {opts.mean, opts.sd}, opts.chip_seed);
  CalibrationCurveResult result;
  meshcomp::SimulatorOptions sim;
  sim.intensity_noise_sd = opts.intensity_noise_sd;
  sim.seed = opts.chip_seed;
  meshcomp::SimulatedChip device(chip, sim);
  result.calibration = meshcomp::CalibrateGlobal(device, opts.r_guess);
  result.reflectivity =
      meshcomp::ReflectivityFromTheta(*result.calibration.global_theta);
  if (opts.grid_points > 0) {
    // The noiseless twin keeps the curve independent of the fit's draws.
    meshcomp::SimulatedChip clean(chip);
    const auto probe = meshcomp::ProbeUnitary(opts.n, opts.r_guess);
    result.curve.resize(opts.grid_points);
    const double step =
        opts.grid_points > 1 ? 0.98 / (opts.grid_points - 1) : 0.0;
    for (int k = 0; k < opts.grid_points; ++k) {
      const double r = 0.01 + step * k;
      result.curve[k] = {r, meshcomp::GlobalFitResidual(clean, probe, r)};
    }
  }
  return result;
}

namespace {
void WritePairs(std::ostream& os,
                const std::vector<std::pair<double, double>>& pairs) {
  os << "reflectivity,residual\n";
  for (const auto& [r, f] : pairs) {
    os << FormatDouble(r) << ',' << FormatDouble(f) << '\n';
  }
}
}  // namespace

void WriteTraceCsv(std::ostream& os, const CalibrationCurveResult& r) {
  WritePairs(os, r.calibration.trace);
}

void WriteCurveCsv(std::ostream& os, const CalibrationCurveResult& r) {
  WritePairs(os, r.curve);
}

}  // namespace harness
