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

#include "meshcomp/brent.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace meshcomp {

BrentResult BrentMinimize(const std::function<double(double)>& f, double lo,
                          double x0, double hi, const BrentOptions& options) {
  if (!(lo < x0 && x0 < hi)) {
    throw std::invalid_argument("Brent bracket needs lo < x0 < hi");
  }
  if (options.max_evaluations < 1 || !(options.x_tolerance > 0.0)) {
    throw std::invalid_argument("Brent needs a positive budget and tolerance");
  }
  constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt 5) / 2
  const double eps = std::sqrt(std::numeric_limits<double>::epsilon());

  BrentResult r;
  const auto eval = [&](double x) {
    const double v = f(x);
    ++r.evaluations;
    r.trace.emplace_back(x, v);
    return v;
  };

  double a = lo, b = hi;
  double x = x0, w = x0, v = x0;
  double fx = eval(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  while (r.evaluations < options.max_evaluations) {
    const double m = 0.5 * (a + b);
    const double tol = eps * std::abs(x) + options.x_tolerance / 3.0;
    const double tol2 = 2.0 * tol;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) {
      r.converged = true;
      break;
    }
    bool golden = true;
    if (std::abs(e) > tol) {
      // parabola through x, w, v
      double p = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      p = (x - v) * q - (x - w) * p;
      q = 2.0 * (q - (x - w) * (fx - fv));
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = x < m ? tol : -tol;
        golden = false;
      }
    }
    if (golden) {
      e = (x < m ? b : a) - x;
      d = kGolden * e;
    }
    const double u = std::abs(d) >= tol ? x + d : x + (d > 0 ? tol : -tol);
    const double fu = eval(u);
    if (fu <= fx) {
      (u < x ? b : a) = x;
      v = w, fv = fw;
      w = x, fw = fx;
      x = u, fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w, fv = fw;
        w = u, fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u, fv = fu;
      }
    }
  }
  r.x = x;
  r.fx = fx;
  return r;
}

}  // namespace meshcomp
