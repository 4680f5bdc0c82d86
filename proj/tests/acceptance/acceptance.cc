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

// Prints one PASS/FAIL line per acceptance criterion with the measured
// values. Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "harness/recipes.h"
#include "meshcomp/calibration.h"
#include "meshcomp/compiler.h"
#include "meshcomp/parallel.h"
#include "meshcomp/port_alloc.h"
#include "meshcomp/rng.h"
#include "meshcomp/simulator.h"

namespace {

using namespace meshcomp;

struct Outcome {
  bool pass;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double CircularGap(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

Outcome RoundTrip() {
  Timer t;
  std::vector<double> worst(11, 0.0);
  for (int n = 2; n <= 12; ++n) {
    std::vector<double> d(100);
    ParallelFor(100, [&](long s) {
      const auto u = HaarRandomUnitary(n, harness::SampleSeed(1000 + n, s));
      d[s] = FidelityDistance(u, Execute(DecomposeIdeal(u), ChipSpec::Ideal(n)));
    });
    worst[n - 2] = *std::max_element(d.begin(), d.end());
  }
  const double max_d = *std::max_element(worst.begin(), worst.end());
  const double secs = t.seconds();
  return {max_d < 1e-9 && secs < 30,
          Fmt("max distance %.3g over n=2..12 x 100, %.1f s", max_d, secs)};
}

Outcome TailoredMatchesIdeal() {
  constexpr int n = 8;
  const std::vector<double> balanced(n * (n - 1) / 2, kBalancedTheta);
  double worst = 0;
  for (long s = 0; s < 100; ++s) {
    const auto u = HaarRandomUnitary(n, harness::SampleSeed(2, s));
    const PhaseProgram a = DecomposeIdeal(u);
    const PhaseProgram b = Decompose(u, balanced);
    for (size_t k = 0; k < a.settings.size(); ++k) {
      worst = std::max({worst, std::abs(a.settings[k].phi_i - b.settings[k].phi_i),
                        std::abs(a.settings[k].phi_e - b.settings[k].phi_e)});
    }
    for (int m = 0; m < n; ++m) {
      worst = std::max(worst, std::abs(a.output_phases[m] - b.output_phases[m]));
    }
  }
  return {worst <= 1e-10, Fmt("max phase difference %.3g", worst)};
}

Outcome TailoredBeatsNaive() {
  Timer t;
  const auto r = harness::RunCompileSweep({{6}, {0.49}, 200, 3});
  const auto& c = r.cells.front();
  const double ratio = c.mean_naive / c.mean_tailored;
  const double secs = t.seconds();
  return {ratio >= 100 && secs < 60,
          Fmt("mean naive %.4g, tailored %.4g, ratio %.1f, %.1f s",
              c.mean_naive, c.mean_tailored, ratio, secs)};
}

Outcome NaiveErrorTrend() {
  const auto by_size = harness::RunCompileSweep({{4, 8, 12, 16}, {0.48}, 200, 4});
  const auto by_r =
      harness::RunCompileSweep({{6}, {0.50, 0.48, 0.46, 0.44}, 200, 4});
  bool ok = true;
  std::string sizes, refl;
  for (size_t k = 0; k < by_size.cells.size(); ++k) {
    sizes += Fmt(" %.4g", by_size.cells[k].mean_naive);
    if (k && by_size.cells[k].mean_naive < by_size.cells[k - 1].mean_naive) ok = false;
  }
  for (size_t k = 0; k < by_r.cells.size(); ++k) {
    refl += Fmt(" %.4g", by_r.cells[k].mean_naive);
    if (k && by_r.cells[k].mean_naive < by_r.cells[k - 1].mean_naive) ok = false;
  }
  return {ok, "n=4,8,12,16:" + sizes + "; r=.50,.48,.46,.44:" + refl};
}

Outcome PowerReduction() {
  Timer t;
  const auto r = harness::RunPowerSearch({});
  const double secs = t.seconds();
  return {r.unrestricted_reduction >= 0.30 && r.sweep_reduction >= 0.15 &&
              secs < 300,
          Fmt("unrestricted -%.1f%%, sweep(k=2) -%.1f%%, %.1f s",
              100 * r.unrestricted_reduction, 100 * r.sweep_reduction, secs)};
}

Outcome TargetPowerSpread() {
  Timer t;
  const auto r = harness::RunTargetPower({});
  const double secs = t.seconds();
  harness::TargetPowerOptions fixed;
  fixed.samples = 200;
  fixed.target = 165.0;
  const auto at165 = harness::RunTargetPower(fixed);
  return {r.sd_factor >= 10 && secs < 600,
          Fmt("target %.2f (pilot median): sd %.3g -> %.3g, factor %.1f, %.1f s"
              " [target 165, 200 samples: factor %.2f]",
              r.target, r.sd_default, r.sd_achieved, r.sd_factor, secs,
              at165.sd_factor)};
}

Outcome Pipeline(const ChipSpec& chip, double bound, double max_secs) {
  Timer t;
  const auto r = harness::RunPipeline(chip, {});
  const double secs = t.seconds();
  return {r.allocated_factor >= bound && secs < max_secs,
          Fmt("r*=%.5f; mean naive %.4g, tailored %.3g, allocated %.3g; "
              "factor %.3g, %.1f s",
              r.calibrated_reflectivity, r.mean_naive, r.mean_tailored,
              r.mean_allocated, r.allocated_factor, secs)};
}

Outcome GlobalCalibration() {
  harness::CalibrationCurveOptions opts;
  opts.grid_points = 0;
  const auto r = harness::RunCalibrationCurve(opts);
  const int evals = r.calibration.evaluations;
  return {r.reflectivity >= 0.465 && r.reflectivity <= 0.473 && evals <= 30,
          Fmt("r*=%.6f in %d evaluations", r.reflectivity, evals)};
}

Outcome PerMziExact() {
  double worst = 0;
  int chips = 0;
  for (int n : {4, 8}) {
    for (const ChipSpec& chip :
         {ChipSpec::Ideal(n), ChipSpec::Uniform(n, 0.47),
          SampleChip(n, {0.47, 0.01}, 10 + n), SampleChip(n, {0.45, 0.02}, 20 + n)}) {
      SimulatedChip device(chip);
      const auto r = CalibratePerMzi(device);
      const auto truth = chip.thetas();
      for (size_t k = 0; k < truth.size(); ++k) {
        worst = std::max(worst, std::abs((*r.per_mzi_theta)[k] - truth[k]));
      }
      ++chips;
    }
  }
  return {worst < 1e-9, Fmt("max theta error %.3g over %d chips", worst, chips)};
}

Outcome PermutationInvariance() {
  constexpr int n = 6;
  const ChipSpec ideal = ChipSpec::Ideal(n);
  double worst = 0;
  Rng rng(11);
  for (long s = 0; s < 50; ++s) {
    const auto u = HaarRandomUnitary(n, harness::SampleSeed(11, s));
    std::vector<int> pi(n), sigma(n);
    std::iota(pi.begin(), pi.end(), 0);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(pi.begin(), pi.end(), rng);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    const Permutation p(pi), q(sigma);
    const PhaseProgram base = DecomposeIdeal(u);
    const PhaseProgram moved = DecomposeIdeal(ApplyAllocation(u, p, q));
    for (int j = 0; j < n; ++j) {
      const auto want = IntensityResponse(base, ideal, j);
      const auto got = RestoreOutcomes(IntensityResponse(moved, ideal, p(j)), q);
      for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(want[i] - got[i]));
    }
  }
  return {worst <= 1e-12, Fmt("max intensity difference %.3g", worst)};
}

struct PhaseChange {
  int mzis = 0;
  int entries = 0;
};

PhaseChange CountChanges(const PhaseProgram& a, const PhaseProgram& b) {
  constexpr double kTol = 1e-9;
  PhaseChange c;
  for (size_t k = 0; k < a.settings.size(); ++k) {
    const int d = (CircularGap(a.settings[k].phi_i, b.settings[k].phi_i) > kTol) +
                  (CircularGap(a.settings[k].phi_e, b.settings[k].phi_e) > kTol);
    c.entries += d;
    c.mzis += d > 0;
  }
  for (size_t m = 0; m < a.output_phases.size(); ++m) {
    c.entries += CircularGap(a.output_phases[m], b.output_phases[m]) > kTol;
  }
  return c;
}

Outcome SwapClasses() {
  constexpr int n = 16;
  constexpr long kSamples = 50;
  const int total = n * (n - 1) + n;
  const Permutation trivial = Permutation::Transposition(n, 4);     // modes 5,6
  const Permutation nontrivial = Permutation::Transposition(n, 5);  // modes 6,7
  const Permutation id = Permutation::Identity(n);
  std::vector<PhaseChange> t(kSamples), nt(kSamples);
  ParallelFor(kSamples, [&](long s) {
    const auto u = HaarRandomUnitary(n, harness::SampleSeed(12, s));
    const PhaseProgram base = DecomposeIdeal(u);
    t[s] = CountChanges(base, DecomposeIdeal(ApplyAllocation(u, trivial, id)));
    nt[s] = CountChanges(base, DecomposeIdeal(ApplyAllocation(u, nontrivial, id)));
  });
  int max_trivial = 0, trivial_ok = 0, nontrivial_ok = 0, min_entries = total;
  for (long s = 0; s < kSamples; ++s) {
    max_trivial = std::max(max_trivial, t[s].mzis);
    trivial_ok += t[s].mzis <= 3;
    nontrivial_ok += nt[s].entries > 0.2 * total;
    min_entries = std::min(min_entries, nt[s].entries);
  }
  const bool pass = trivial_ok == kSamples && nontrivial_ok >= 0.9 * kSamples;
  return {pass, Fmt("trivial swap: max %d MZIs changed, <=3 on %d/%ld; "
                    "non-trivial swap: >20%% of %d phases on %d/%ld (min %d)",
                    max_trivial, trivial_ok, kSamples, total, nontrivial_ok,
                    kSamples, min_entries)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Criterion numbers to run (default all)")
      ->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria = {
      RoundTrip,
      TailoredMatchesIdeal,
      TailoredBeatsNaive,
      NaiveErrorTrend,
      PowerReduction,
      TargetPowerSpread,
      [] { return Pipeline(ChipSpec::Uniform(4, 0.47), 1e3, 600); },
      [] { return Pipeline(SampleChip(4, {0.47, 0.005}, 1), 5, 600); },
      GlobalCalibration,
      PerMziExact,
      PermutationInvariance,
      SwapClasses,
  };
  if (selected.empty()) {
    selected.resize(criteria.size());
    std::iota(selected.begin(), selected.end(), 1);
  }
  bool all = true;
  for (int k : selected) {
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL")
              << "  " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
