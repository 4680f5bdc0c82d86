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

// Port allocation: run the same experiment through a relabelled
// interferometer. With input permutation pi and output permutation sigma
// the chip is programmed with
//   U~(i, j) = U(sigma^-1(i), pi^-1(j)),
// light meant for user port j enters chip port pi(j), and chip detector i
// reports to user port sigma^-1(i). In matrix form U~ = Q U P^T with
// P = PermutationMatrix(pi), Q = PermutationMatrix(sigma).

#ifndef MESHCOMP_PORT_ALLOC_H_
#define MESHCOMP_PORT_ALLOC_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "meshcomp/linalg.h"
#include "meshcomp/mesh.h"
#include "meshcomp/power.h"

namespace meshcomp {

UnitaryMatrix ApplyAllocation(const UnitaryMatrix& u, const Permutation& p_in,
                              const Permutation& q_out);

struct ExperimentConfig {
  std::vector<double> squeezing;  // per user input port
  std::vector<long> outcomes;     // photon counts
};

// Chip-side squeezing: s~[j] = s[pi^-1(j)].
std::vector<double> PermuteInputs(const std::vector<double>& values,
                                  const Permutation& p_in);
// User-side outcomes from raw chip counts: m[j] = raw[sigma(j)].
template <typename T>
std::vector<T> RestoreOutcomes(const std::vector<T>& raw,
                               const Permutation& q_out) {
  if (static_cast<int>(raw.size()) != q_out.size()) {
    throw DimensionError("outcome vector does not match permutation size");
  }
  std::vector<T> out(raw.size());
  for (int j = 0; j < q_out.size(); ++j) out[j] = raw[q_out(j)];
  return out;
}
// Squeezing moved to the chip ports, outcomes (raw chip counts) returned in
// user order.
ExperimentConfig RelabelExperiment(const ExperimentConfig& cfg,
                                   const Permutation& p_in,
                                   const Permutation& q_out);

// Scalar figure of merit of a programmed (already permuted) unitary; lower
// is better. Deterministic.
class Objective {
 public:
  using Evaluator = std::function<double(const UnitaryMatrix&)>;

  // Total V^2 of the ideal-compiled program on `chip`.
  static Objective MinPower(ChipSpec chip, PowerOptions options = {});
  // |total V^2 - target|.
  static Objective TargetPower(ChipSpec chip, double target,
                               PowerOptions options = {});
  // Fidelity distance left after tailored compilation for the given MZI
  // thetas, as predicted by that same model.
  static Objective MinDistance(std::vector<double> thetas);
  static Objective Custom(std::string name, Evaluator evaluator);

  double operator()(const UnitaryMatrix& permuted) const {
    return evaluator_(permuted);
  }
  const std::string& name() const { return name_; }

 private:
  Objective(std::string name, Evaluator evaluator)
      : name_(std::move(name)), evaluator_(std::move(evaluator)) {}

  std::string name_;
  Evaluator evaluator_;
};

struct Allocation {
  Permutation p_in;
  Permutation q_out;
  UnitaryMatrix permuted;
  double objective = 0.0;
};

struct SearchResult {
  Allocation best;
  double baseline = 0.0;  // objective of the identity allocation
  long evaluations = 0;
  bool threshold_met = false;
};

// Nearest-neighbour transpositions (i, i+1) by 0-based top index i. An input
// swap is trivial when the first mesh layer has an MZI on (i, i+1), an output
// swap when the last layer does.
struct TranspositionClasses {
  std::vector<int> trivial_in;
  std::vector<int> nontrivial_in;
  std::vector<int> trivial_out;
  std::vector<int> nontrivial_out;
};
TranspositionClasses ClassifyTranspositions(int n);

inline constexpr int kDefaultUnrestrictedCap = 6;

// Exhaustive over all (n!)^2 pairs; ties go to the lexicographically smallest
// (pi, sigma). Throws std::invalid_argument if n > max_modes.
SearchResult UnrestrictedSearch(const UnitaryMatrix& u,
                                const Objective& objective,
                                int max_modes = kDefaultUnrestrictedCap);

struct RandomSearchBudget {
  long max_candidates = 1000;
  // Stop at the first candidate with objective <= threshold.
  double threshold = -std::numeric_limits<double>::infinity();
};

// Candidate 0 is the identity; the rest are uniform (pi, sigma) pairs from
// Fisher-Yates shuffles. Deterministic in `seed`.
SearchResult RandomizedSearch(const UnitaryMatrix& u,
                              const Objective& objective,
                              const RandomSearchBudget& budget,
                              std::uint64_t seed);

struct SweepOptions {
  int sweeps = 2;
  double threshold = -std::numeric_limits<double>::infinity();
  // Enumerate input and output subsets one side at a time (2^a + 2^b per
  // phase instead of 2^(a+b)). For large meshes.
  bool per_side = false;
};

// Alternates exhaustive searches over compositions of the non-trivial, then
// the trivial, transpositions, starting from the best allocation so far.
// Throws std::invalid_argument if sweeps < 1.
SearchResult SweepSearch(const UnitaryMatrix& u, const Objective& objective,
                         const SweepOptions& options = {});

// Upper bound on objective evaluations made by SweepSearch.
long SweepEvaluationBound(int n, const SweepOptions& options);

}  // namespace meshcomp

#endif  // MESHCOMP_PORT_ALLOC_H_
