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

#include "meshcomp/port_alloc.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "meshcomp/compiler.h"
#include "meshcomp/rng.h"

namespace meshcomp {

UnitaryMatrix ApplyAllocation(const UnitaryMatrix& u, const Permutation& p_in,
                              const Permutation& q_out) {
  return u.Relabeled(q_out, p_in);
}

std::vector<double> PermuteInputs(const std::vector<double>& values,
                                  const Permutation& p_in) {
  if (static_cast<int>(values.size()) != p_in.size()) {
    throw DimensionError("input vector does not match permutation size");
  }
  std::vector<double> out(values.size());
  for (int j = 0; j < p_in.size(); ++j) out[p_in(j)] = values[j];
  return out;
}

ExperimentConfig RelabelExperiment(const ExperimentConfig& cfg,
                                   const Permutation& p_in,
                                   const Permutation& q_out) {
  ExperimentConfig out;
  out.squeezing = PermuteInputs(cfg.squeezing, p_in);
  out.outcomes = RestoreOutcomes(cfg.outcomes, q_out);
  return out;
}

Objective Objective::MinPower(ChipSpec chip, PowerOptions options) {
  return Objective("min_power",
                   [chip = std::move(chip), options](const UnitaryMatrix& u) {
                     return ProgramPowerTotal(DecomposeIdeal(u), chip, options);
                   });
}

Objective Objective::TargetPower(ChipSpec chip, double target,
                                 PowerOptions options) {
  return Objective(
      "target_power",
      [chip = std::move(chip), target, options](const UnitaryMatrix& u) {
        return std::abs(ProgramPowerTotal(DecomposeIdeal(u), chip, options) -
                        target);
      });
}

Objective Objective::MinDistance(std::vector<double> thetas) {
  return Objective("min_distance",
                   [thetas = std::move(thetas)](const UnitaryMatrix& u) {
                     const PhaseProgram p = Decompose(u, thetas);
                     return FidelityDistance(u.matrix(),
                                             ReconstructMatrix(p, thetas));
                   });
}

Objective Objective::Custom(std::string name, Evaluator evaluator) {
  return Objective(std::move(name), std::move(evaluator));
}

TranspositionClasses ClassifyTranspositions(int n) {
  if (n < 2) throw DimensionError("transpositions need n >= 2");
  TranspositionClasses c;
  const int last_layer_parity = (n - 1) % 2;
  for (int i = 0; i + 1 < n; ++i) {
    (i % 2 == 0 ? c.trivial_in : c.nontrivial_in).push_back(i);
    (i % 2 == last_layer_parity ? c.trivial_out : c.nontrivial_out)
        .push_back(i);
  }
  return c;
}

namespace {

// Running minimum with the (objective, pi, sigma) tie-break.
class BestTracker {
 public:
  BestTracker(const UnitaryMatrix& u, const Objective& objective)
      : u_(u), objective_(objective) {}

  // Returns the objective of the candidate.
  double Offer(const Permutation& p_in, const Permutation& q_out) {
    UnitaryMatrix permuted = ApplyAllocation(u_, p_in, q_out);
    const double value = objective_(permuted);
    ++evaluations_;
    if (!best_ || Better(value, p_in, q_out)) {
      best_.emplace(Allocation{p_in, q_out, std::move(permuted), value});
    }
    return value;
  }

  const Allocation& best() const { return *best_; }
  long evaluations() const { return evaluations_; }

 private:
  bool Better(double value, const Permutation& p_in,
              const Permutation& q_out) const {
    if (value != best_->objective) return value < best_->objective;
    return std::tie(p_in, q_out) < std::tie(best_->p_in, best_->q_out);
  }

  const UnitaryMatrix& u_;
  const Objective& objective_;
  std::optional<Allocation> best_;
  long evaluations_ = 0;
};

// Composition of the transpositions whose bits are set in `mask`.
Permutation SwapSet(int n, const std::vector<int>& tops, unsigned long mask) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  for (size_t b = 0; b < tops.size(); ++b) {
    if (mask >> b & 1UL) std::swap(m[tops[b]], m[tops[b] + 1]);
  }
  return Permutation(std::move(m));
}

}  // namespace

SearchResult UnrestrictedSearch(const UnitaryMatrix& u,
                                const Objective& objective, int max_modes) {
  const int n = u.size();
  if (n > max_modes) {
    throw std::invalid_argument(
        "unrestricted search over (" + std::to_string(n) +
        "!)^2 allocations exceeds the cap of " + std::to_string(max_modes) +
        " modes; use sweep search instead");
  }
  BestTracker tracker(u, objective);
  SearchResult result{Allocation{Permutation::Identity(n),
                                 Permutation::Identity(n), u, 0.0}};
  std::vector<int> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  bool first = true;
  do {
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      const double v = tracker.Offer(Permutation(pi), Permutation(sigma));
      if (first) {
        result.baseline = v;
        first = false;
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  } while (std::next_permutation(pi.begin(), pi.end()));
  result.best = tracker.best();
  result.evaluations = tracker.evaluations();
  result.threshold_met = true;
  return result;
}

SearchResult RandomizedSearch(const UnitaryMatrix& u,
                              const Objective& objective,
                              const RandomSearchBudget& budget,
                              std::uint64_t seed) {
  if (budget.max_candidates < 1) {
    throw std::invalid_argument("random search needs max_candidates >= 1");
  }
  const int n = u.size();
  BestTracker tracker(u, objective);
  SearchResult result{Allocation{Permutation::Identity(n),
                                 Permutation::Identity(n), u, 0.0}};
  Rng rng(seed);
  std::vector<int> pi(n), sigma(n);
  for (long c = 0; c < budget.max_candidates; ++c) {
    std::iota(pi.begin(), pi.end(), 0);
    std::iota(sigma.begin(), sigma.end(), 0);
    if (c > 0) {
      std::shuffle(pi.begin(), pi.end(), rng);
      std::shuffle(sigma.begin(), sigma.end(), rng);
    }
    const double v = tracker.Offer(Permutation(pi), Permutation(sigma));
    if (c == 0) result.baseline = v;
    if (v <= budget.threshold) {
      result.best = Allocation{Permutation(pi), Permutation(sigma),
                               ApplyAllocation(u, Permutation(pi),
                                               Permutation(sigma)),
                               v};
      result.evaluations = tracker.evaluations();
      result.threshold_met = true;
      return result;
    }
  }
  result.best = tracker.best();
  result.evaluations = tracker.evaluations();
  result.threshold_met = result.best.objective <= budget.threshold;
  return result;
}

long SweepEvaluationBound(int n, const SweepOptions& options) {
  const TranspositionClasses c = ClassifyTranspositions(n);
  const auto phase = [&](size_t a, size_t b) -> long {
    return options.per_side ? (1L << a) + (1L << b) : (1L << (a + b));
  };
  return static_cast<long>(options.sweeps) *
             (phase(c.nontrivial_in.size(), c.nontrivial_out.size()) +
              phase(c.trivial_in.size(), c.trivial_out.size())) +
         1;
}

SearchResult SweepSearch(const UnitaryMatrix& u, const Objective& objective,
                         const SweepOptions& options) {
  if (options.sweeps < 1) {
    throw std::invalid_argument("sweep search needs at least one sweep");
  }
  const int n = u.size();
  if (n < 2) {
    const double v = objective(u);
    return SearchResult{Allocation{Permutation::Identity(n),
                                   Permutation::Identity(n), u, v},
                        v, 1, v <= options.threshold};
  }
  const TranspositionClasses classes = ClassifyTranspositions(n);
  BestTracker tracker(u, objective);
  SearchResult result{Allocation{Permutation::Identity(n),
                                 Permutation::Identity(n), u, 0.0}};
  result.baseline =
      tracker.Offer(Permutation::Identity(n), Permutation::Identity(n));

  // Exhaustive over subsets of (ins x outs) applied on top of the current
  // best; the empty subset is the current best itself and is skipped.
  const auto search_phase = [&](const std::vector<int>& ins,
                                const std::vector<int>& outs) {
    const Allocation start = tracker.best();
    const auto offer = [&](unsigned long in_mask, unsigned long out_mask) {
      if (in_mask == 0 && out_mask == 0) return;
      tracker.Offer(start.p_in.then(SwapSet(n, ins, in_mask)),
                    start.q_out.then(SwapSet(n, outs, out_mask)));
    };
    const unsigned long in_count = 1UL << ins.size();
    const unsigned long out_count = 1UL << outs.size();
    if (options.per_side) {
      for (unsigned long a = 0; a < in_count; ++a) offer(a, 0);
      for (unsigned long b = 0; b < out_count; ++b) offer(0, b);
    } else {
      for (unsigned long a = 0; a < in_count; ++a) {
        for (unsigned long b = 0; b < out_count; ++b) offer(a, b);
      }
    }
  };

  for (int sweep = 0; sweep < options.sweeps; ++sweep) {
    if (tracker.best().objective <= options.threshold) break;
    const double before = tracker.best().objective;
    search_phase(classes.nontrivial_in, classes.nontrivial_out);
    if (tracker.best().objective <= options.threshold) break;
    search_phase(classes.trivial_in, classes.trivial_out);
    if (!(tracker.best().objective < before)) break;
  }
  result.best = tracker.best();
  result.evaluations = tracker.evaluations();
  result.threshold_met = result.best.objective <= options.threshold;
  return result;
}

}  // namespace meshcomp
