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

// Derivative-free 1-D minimization (Brent: golden section plus successive
// parabolic interpolation) on a closed interval.

#ifndef MESHCOMP_BRENT_H_
#define MESHCOMP_BRENT_H_

#include <functional>
#include <utility>
#include <vector>

namespace meshcomp {

struct BrentOptions {
  double x_tolerance = 1e-8;  // absolute, in x
  int max_evaluations = 30;
};

struct BrentResult {
  double x = 0.0;
  double fx = 0.0;
  int evaluations = 0;
  bool converged = false;
  // Every (x, f(x)) in evaluation order.
  std::vector<std::pair<double, double>> trace;
};

// Minimizes f on [lo, hi] starting from x0 (lo < x0 < hi). Throws
// std::invalid_argument for a malformed bracket.
BrentResult BrentMinimize(const std::function<double(double)>& f, double lo,
                          double x0, double hi,
                          const BrentOptions& options = {});

}  // namespace meshcomp

#endif  // MESHCOMP_BRENT_H_
