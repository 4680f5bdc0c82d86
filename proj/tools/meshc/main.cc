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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "harness/recipes.h"
#include "meshcomp/calibration.h"
#include "meshcomp/compiler.h"
#include "meshcomp/io.h"
#include "meshcomp/port_alloc.h"
#include "meshcomp/power.h"
#include "meshcomp/simulator.h"

namespace {

using namespace meshcomp;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kNotMet = 1;
constexpr int kUsage = 2;

// Thrown for bad flag values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void Emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    WriteJsonFile(out, j);
  }
}

template <typename Fn>
void WriteFile(const fs::path& path, Fn&& write) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write " + path.string());
  write(os);
}

// ---- haar / sample-chip ---------------------------------------------------

struct HaarArgs {
  int n = 4;
  std::uint64_t seed = 0;
  std::string out;
};

int RunHaar(const HaarArgs& a) {
  Emit(MatrixToJson(HaarRandomUnitary(a.n, a.seed).matrix()), a.out);
  return kOk;
}

struct ChipArgs {
  int n = 4;
  std::uint64_t seed = 0;
  double mean = 0.5;
  double sd = 0.0;
  double beta_min = 0.5;
  double beta_max = 2.0;
  bool uniform = false;
  std::string out;
};

int RunSampleChip(const ChipArgs& a) {
  const ChipSpec chip = a.uniform
                            ? ChipSpec::Uniform(a.n, a.mean)
                            : SampleChip(a.n, {a.mean, a.sd, a.beta_min, a.beta_max}, a.seed);
  Emit(ChipToJson(chip), a.out);
  return kOk;
}

// ---- compile / simulate ---------------------------------------------------

struct CompileArgs {
  std::string unitary, chip, out;
  bool tailored = false;
};

int RunCompile(const CompileArgs& a) {
  const UnitaryMatrix u = UnitaryFromJson(ReadJsonFile(a.unitary));
  const ChipSpec chip = ChipFromJson(ReadJsonFile(a.chip));
  if (u.size() != chip.n_modes()) throw FormatError("unitary and chip sizes differ");
  CompileStats stats;
  const PhaseProgram p = a.tailored ? Decompose(u, chip.thetas(), &stats)
                                    : DecomposeIdeal(u, &stats);
  Emit(ProgramToJson(p), a.out);
  std::cerr << "distance " << FormatDouble(FidelityDistance(u, Execute(p, chip)))
            << "  clamped_steps " << stats.clamped_steps << "  power "
            << FormatDouble(ProgramPowerTotal(p, chip)) << '\n';
  return kOk;
}

struct SimulateArgs {
  std::string program, chip;
  int port = 1;
};

int RunSimulate(const SimulateArgs& a) {
  const PhaseProgram p = ProgramFromJson(ReadJsonFile(a.program));
  const ChipSpec chip = ChipFromJson(ReadJsonFile(a.chip));
  if (a.port < 1 || a.port > chip.n_modes()) throw UsageError("--port out of range");
  WriteIntensityCsv(std::cout, IntensityResponse(p, chip, a.port - 1));
  return kOk;
}

// ---- allocate -------------------------------------------------------------

struct AllocateArgs {
  std::string unitary, chip, out;
  std::string objective = "power";
  std::string strategy = "sweep:2";
  std::optional<double> threshold;
  long candidates = 1000;
  std::uint64_t seed = 0;
  int max_modes = kDefaultUnrestrictedCap;
  bool per_side = false;
};

Objective ParseObjective(const std::string& text, const ChipSpec& chip) {
  if (text == "power") return Objective::MinPower(chip);
  if (text == "distance") return Objective::MinDistance(chip.thetas());
  if (text.rfind("target:", 0) == 0) {
    try {
      size_t used = 0;
      const std::string value = text.substr(7);
      const double target = std::stod(value, &used);
      if (used == value.size() && std::isfinite(target)) {
        return Objective::TargetPower(chip, target);
      }
    } catch (const std::logic_error&) {
    }
  }
  throw UsageError("--objective must be power, distance or target:<value>");
}

int RunAllocate(const AllocateArgs& a) {
  const UnitaryMatrix u = UnitaryFromJson(ReadJsonFile(a.unitary));
  const ChipSpec chip = ChipFromJson(ReadJsonFile(a.chip));
  if (u.size() != chip.n_modes()) throw FormatError("unitary and chip sizes differ");
  const Objective objective = ParseObjective(a.objective, chip);
  const double threshold = a.threshold.value_or(-INFINITY);
  const int n = u.size();

  const auto search = [&]() -> SearchResult {
    if (a.strategy == "full") {
      if (n >= 5) {
        std::cerr << "warning: unrestricted search evaluates (" << n
                  << "!)^2 allocations\n";
      }
      SearchResult r = UnrestrictedSearch(u, objective, a.max_modes);
      r.threshold_met = r.best.objective <= threshold;
      return r;
    }
    if (a.strategy == "random") {
      return RandomizedSearch(u, objective, {a.candidates, threshold}, a.seed);
    }
    if (a.strategy.rfind("sweep:", 0) == 0) {
      int k = 0;
      try {
        size_t used = 0;
        k = std::stoi(a.strategy.substr(6), &used);
        if (used != a.strategy.size() - 6) k = 0;
      } catch (const std::logic_error&) {
      }
      if (k < 1) throw UsageError("--strategy sweep:k needs an integer k >= 1");
      return SweepSearch(u, objective, {k, threshold, a.per_side});
    }
    throw UsageError("--strategy must be full, random or sweep:<k>");
  };
  const SearchResult r = search();

  Json j = AllocationToJson(r.best);
  j["baseline"] = r.baseline;
  j["evaluations"] = r.evaluations;
  j["objective_name"] = objective.name();
  Emit(j, a.out);
  std::cerr << objective.name() << " before " << FormatDouble(r.baseline)
            << "  after " << FormatDouble(r.best.objective) << "  evaluations "
            << r.evaluations << '\n';
  if (a.threshold && !r.threshold_met) {
    std::cerr << "threshold " << FormatDouble(*a.threshold) << " not met\n";
    return kNotMet;
  }
  return kOk;
}

// ---- calibrate ------------------------------------------------------------

struct CalibrateArgs {
  std::string chip, out;
  std::string method = "global";
  double guess = 0.2;
  std::optional<double> probe;
  double noise = 0.0;
  std::uint64_t seed = 0;
  bool above_half = false;
};

int RunCalibrate(const CalibrateArgs& a) {
  const ChipSpec chip = ChipFromJson(ReadJsonFile(a.chip));
  SimulatedChip device(chip, {a.noise, 0.0, a.seed});
  CalibrationResult r;
  if (a.method == "per-mzi") {
    r = CalibratePerMzi(device, a.above_half ? ReflectivityBranch::kAboveHalf
                                             : ReflectivityBranch::kBelowHalf);
  } else {
    GlobalCalibrationOptions opts;
    opts.probe_reflectivity = a.probe;
    r = CalibrateGlobal(device, a.guess, opts);
    std::cout << "reflectivity,residual\n";
    for (const auto& [x, f] : r.trace) {
      std::cout << FormatDouble(x) << ',' << FormatDouble(f) << '\n';
    }
    std::cerr << "reflectivity " << FormatDouble(ReflectivityFromTheta(*r.global_theta))
              << "  evaluations " << r.evaluations << "  residual "
              << FormatDouble(r.residual) << '\n';
    if (r.warning) std::cerr << "warning: fit hit the search interval edge or budget\n";
  }
  if (!a.out.empty() || a.method == "per-mzi") Emit(CalibrationToJson(r), a.out);
  return r.warning ? kNotMet : kOk;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::string figure;
  std::optional<long> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> chip_seed;
  std::optional<double> target;
  std::string out = ".";
};

template <typename T>
void Override(T& field, const std::optional<T>& value) {
  if (value) field = *value;
}

int RunBench(const BenchArgs& a) {
  const fs::path dir(a.out);
  fs::create_directories(dir);
  Json summary;
  summary["figure"] = a.figure;

  if (a.figure == "fig2") {
    harness::PowerSearchOptions left;
    Override(left.samples, a.samples);
    Override(left.seed, a.seed);
    Override(left.chip_seed, a.chip_seed);
    const auto l = harness::RunPowerSearch(left);
    WriteFile(dir / "fig2_power.csv", [&](auto& os) { harness::WriteCsv(os, l); });
    harness::TargetPowerOptions right;
    Override(right.samples, a.samples);
    Override(right.seed, a.seed);
    Override(right.chip_seed, a.chip_seed);
    right.target = a.target;
    const auto r = harness::RunTargetPower(right);
    WriteFile(dir / "fig2_target.csv", [&](auto& os) { harness::WriteCsv(os, r); });
    summary["unrestricted_reduction"] = l.unrestricted_reduction;
    summary["sweep_reduction"] = l.sweep_reduction;
    summary["target"] = r.target;
    summary["sd_default"] = r.sd_default;
    summary["sd_achieved"] = r.sd_achieved;
    summary["sd_factor"] = r.sd_factor;
  } else if (a.figure == "fig3") {
    harness::CompileSweepOptions by_r;
    by_r.reflectivities.clear();
    for (int k = 40; k <= 50; ++k) by_r.reflectivities.push_back(k / 100.0);
    Override(by_r.samples, a.samples);
    Override(by_r.seed, a.seed);
    harness::CompileSweepOptions by_n = by_r;
    by_n.sizes = {4, 6, 8, 10, 12, 14, 16};
    by_n.reflectivities = {0.48};
    const auto r1 = harness::RunCompileSweep(by_r);
    const auto r2 = harness::RunCompileSweep(by_n);
    WriteFile(dir / "fig3_reflectivity.csv", [&](auto& os) { harness::WriteCsv(os, r1); });
    WriteFile(dir / "fig3_size.csv", [&](auto& os) { harness::WriteCsv(os, r2); });
    Json cells = Json::array();
    for (const auto* r : {&r1, &r2}) {
      for (const auto& c : r->cells) {
        cells.push_back({{"n", c.n}, {"reflectivity", c.reflectivity},
                         {"mean_naive", c.mean_naive}, {"mean_tailored", c.mean_tailored}});
      }
    }
    summary["cells"] = cells;
  } else if (a.figure == "fig4" || a.figure == "fig8") {
    harness::PipelineOptions opts;
    Override(opts.samples, a.samples);
    Override(opts.seed, a.seed);
    const ChipSpec chip = a.figure == "fig4"
                              ? ChipSpec::Uniform(4, 0.47)
                              : SampleChip(4, {0.47, 0.005}, a.chip_seed.value_or(1));
    const auto r = harness::RunPipeline(chip, opts);
    WriteFile(dir / (a.figure + "_pipeline.csv"), [&](auto& os) { harness::WriteCsv(os, r); });
    summary["calibrated_reflectivity"] = r.calibrated_reflectivity;
    summary["mean_naive"] = r.mean_naive;
    summary["mean_tailored"] = r.mean_tailored;
    summary["mean_allocated"] = r.mean_allocated;
    summary["improvement_factor"] = r.allocated_factor;
  } else if (a.figure == "fig7") {
    harness::CalibrationCurveOptions opts;
    Override(opts.chip_seed, a.chip_seed);
    const auto r = harness::RunCalibrationCurve(opts);
    WriteFile(dir / "fig7_trace.csv", [&](auto& os) { harness::WriteTraceCsv(os, r); });
    WriteFile(dir / "fig7_curve.csv", [&](auto& os) { harness::WriteCurveCsv(os, r); });
    summary["reflectivity"] = r.reflectivity;
    summary["evaluations"] = r.calibration.evaluations;
    summary["residual"] = r.calibration.residual;
  } else {
    throw UsageError("unknown figure '" + a.figure + "'");
  }
  WriteJsonFile(dir / (a.figure + "_summary.json"), summary);
  std::cout << summary.dump(2) << '\n';
  return kOk;
}

constexpr const char* kBenchColumns = R"(Output files (one row per sample, sample index first):
  fig2_power.csv         sample,default_power,unrestricted_power,sweep_power
  fig2_target.csv        sample,target,default_power,achieved_power
  fig3_reflectivity.csv  n,reflectivity,sample,naive_distance,tailored_distance,clamped_steps
  fig3_size.csv          (same columns)
  fig4_pipeline.csv      sample,naive_distance,tailored_distance,allocated_distance
  fig8_pipeline.csv      (same columns)
  fig7_trace.csv         reflectivity,residual   (optimizer evaluations)
  fig7_curve.csv         reflectivity,residual   (99-point grid)
  <fig>_summary.json     aggregate figures)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile, allocate and calibrate programs for rectangular MZI meshes"};
  app.require_subcommand(1);
  std::function<int()> action;

  HaarArgs haar;
  auto* c_haar = app.add_subcommand("haar", "Write a Haar-random unitary as JSON");
  c_haar->add_option("-n,--modes", haar.n)->check(CLI::Range(1, 4096));
  c_haar->add_option("--seed", haar.seed);
  c_haar->add_option("-o,--out", haar.out, "Output file (default stdout)");
  c_haar->callback([&] { action = [&] { return RunHaar(haar); }; });

  ChipArgs chip;
  auto* c_chip = app.add_subcommand("sample-chip", "Write a synthetic chip as JSON");
  c_chip->add_option("-n,--modes", chip.n)->check(CLI::Range(2, 4096));
  c_chip->add_option("--seed", chip.seed);
  c_chip->add_option("--mean", chip.mean, "Mean MZI reflectivity")->check(CLI::Range(0.0, 1.0));
  c_chip->add_option("--sd", chip.sd, "Reflectivity standard deviation")->check(CLI::NonNegativeNumber);
  c_chip->add_option("--beta-min", chip.beta_min)->check(CLI::PositiveNumber);
  c_chip->add_option("--beta-max", chip.beta_max)->check(CLI::PositiveNumber);
  c_chip->add_flag("--uniform", chip.uniform, "Every MZI at --mean, alpha 0, beta 1");
  c_chip->add_option("-o,--out", chip.out);
  c_chip->callback([&] { action = [&] { return RunSampleChip(chip); }; });

  CompileArgs comp;
  auto* c_comp = app.add_subcommand("compile", "Compile a unitary to a phase program");
  c_comp->add_option("unitary", comp.unitary)->required();
  c_comp->add_option("chip", comp.chip)->required();
  auto* tailored = c_comp->add_flag("--tailored", comp.tailored, "Compile for the chip's splitting ratios");
  c_comp->add_flag("--ideal", "Compile for balanced beam splitters (default)")->excludes(tailored);
  c_comp->add_option("-o,--out", comp.out);
  c_comp->callback([&] { action = [&] { return RunCompile(comp); }; });

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Output intensities of a program on a chip");
  c_sim->add_option("program", sim.program)->required();
  c_sim->add_option("chip", sim.chip)->required();
  c_sim->add_option("--port", sim.port, "Input port, 1-based");
  c_sim->callback([&] { action = [&] { return RunSimulate(sim); }; });

  AllocateArgs alloc;
  auto* c_alloc = app.add_subcommand("allocate", "Search input/output port permutations");
  c_alloc->add_option("unitary", alloc.unitary)->required();
  c_alloc->add_option("chip", alloc.chip)->required();
  c_alloc->add_option("--objective", alloc.objective, "power | distance | target:<V^2>");
  c_alloc->add_option("--strategy", alloc.strategy, "full | random | sweep:<k>");
  c_alloc->add_option("--threshold", alloc.threshold, "Stop once the objective is this low; exit 1 if never");
  c_alloc->add_option("--candidates", alloc.candidates, "Random strategy budget")->check(CLI::PositiveNumber);
  c_alloc->add_option("--seed", alloc.seed, "Random strategy seed");
  c_alloc->add_option("--max-modes", alloc.max_modes, "Largest n the full strategy accepts");
  c_alloc->add_flag("--per-side", alloc.per_side, "Sweep inputs and outputs separately");
  c_alloc->add_option("-o,--out", alloc.out);
  c_alloc->callback([&] { action = [&] { return RunAllocate(alloc); }; });

  CalibrateArgs cal;
  auto* c_cal = app.add_subcommand("calibrate", "Estimate splitting ratios of a simulated chip");
  c_cal->add_option("chip", cal.chip)->required();
  c_cal->add_option("--method", cal.method)->check(CLI::IsMember({"per-mzi", "global"}));
  c_cal->add_option("--guess", cal.guess, "Initial reflectivity estimate")->check(CLI::Range(0.0, 1.0));
  c_cal->add_option("--probe", cal.probe, "Probe reflectivity (default: --guess)")->check(CLI::Range(0.0, 1.0));
  c_cal->add_option("--noise", cal.noise, "Intensity noise sd")->check(CLI::NonNegativeNumber);
  c_cal->add_option("--seed", cal.seed, "Noise seed");
  c_cal->add_flag("--above-half", cal.above_half, "Per-MZI branch for reflectivities above 0.5");
  c_cal->add_option("-o,--out", cal.out);
  c_cal->callback([&] { action = [&] { return RunCalibrate(cal); }; });

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "Run a figure recipe and write CSV files");
  c_bench->add_option("figure", bench.figure, "fig2 | fig3 | fig4 | fig7 | fig8")->required();
  c_bench->add_option("--samples", bench.samples)->check(CLI::PositiveNumber);
  c_bench->add_option("--seed", bench.seed, "Haar sample stream");
  c_bench->add_option("--chip-seed", bench.chip_seed);
  c_bench->add_option("--target", bench.target, "fig2 target power (default: pilot median)");
  c_bench->add_option("--out", bench.out, "Output directory");
  c_bench->footer(kBenchColumns);
  c_bench->callback([&] { action = [&] { return RunBench(bench); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
