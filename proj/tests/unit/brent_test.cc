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

#include <gtest/gtest.h>

#include "meshcomp/brent.h"

namespace meshcomp {
namespace {

TEST(BrentTest, Quadratic) {
  const BrentResult r = BrentMinimize(
      [](double x) { return (x - 0.3) * (x - 0.3) + 2.0; }, 0.0, 0.9, 1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x, 0.3, 1e-8);
  EXPECT_NEAR(r.fx, 2.0, 1e-15);
  EXPECT_LE(r.evaluations, 10);
  EXPECT_EQ(r.trace.size(), static_cast<size_t>(r.evaluations));
  EXPECT_EQ(r.trace.front().first, 0.9);
}

TEST(BrentTest, NonSmoothAndSkewed) {
  const BrentResult r =
      BrentMinimize([](double x) { return std::abs(x - 1.7) + 0.1 * x; }, 0.0,
                    0.5, 3.0, {1e-6, 100});
  EXPECT_NEAR(r.x, 1.7, 1e-5);
}

TEST(BrentTest, MinimumAtEdgeStaysInside) {
  const BrentResult r =
      BrentMinimize([](double x) { return x; }, 0.0, 0.5, 1.0, {1e-6, 60});
  EXPECT_GE(r.x, 0.0);
  EXPECT_LT(r.x, 1e-5);
}

TEST(BrentTest, BudgetIsRespected) {
  const BrentResult r =
      BrentMinimize([](double x) { return std::cos(40 * x) + x * x; }, -2.0,
                    1.0, 2.0, {1e-12, 7});
  EXPECT_EQ(r.evaluations, 7);
  EXPECT_FALSE(r.converged);
}

TEST(BrentTest, BadBracket) {
  EXPECT_THROW(BrentMinimize([](double x) { return x; }, 1.0, 0.5, 2.0),
               std::invalid_argument);
}

}  // namespace
}  // namespace meshcomp
