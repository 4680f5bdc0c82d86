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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "meshcomp/compiler.h"
#include "meshcomp/rng.h"

namespace meshcomp {
namespace {

std::vector<double> Uniform(int n, double reflectivity) {
  return std::vector<double>(n * (n - 1) / 2,
                             ThetaFromReflectivity(reflectivity));
}

double AngleGap(double a, double b) {
  return std::abs(std::remainder(a - b, kTwoPi));
}

// Ideal column of the nulling table, written independently of the
// general-theta formulas.
TEST(NullingPhasesTest, BalancedLeftMatchesIdealColumn) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    const Complex partner(g(rng), g(rng)), target(g(rng), g(rng));
    const NullingPhases p = LeftNullingPhases(partner, target, kBalancedTheta);
    EXPECT_NEAR(p.phi_i, 2.0 * std::atan(std::abs(partner / target)), 1e-12);
    EXPECT_LT(AngleGap(p.phi_e, -std::arg(partner / target)), 1e-12);
    EXPECT_FALSE(p.clamped);
  }
}

TEST(NullingPhasesTest, BalancedRightMatchesIdealColumn) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    const Complex target(g(rng), g(rng)), partner(g(rng), g(rng));
    const NullingPhases p = RightNullingPhases(target, partner, kBalancedTheta);
    EXPECT_NEAR(p.phi_i, 2.0 * std::atan(std::abs(partner / target)), 1e-12);
    EXPECT_LT(AngleGap(p.phi_e, -std::arg(partner / target) + kPi), 1e-12);
  }
}

TEST(NullingPhasesTest, EqualMagnitudesGiveHalfPhase) {
  ComplexMatrix u = ComplexMatrix::Identity(2, 2);
  u(0, 0) = Complex(0.6, 0.1);
  u(1, 0) = Complex(-0.1, 0.6);
  const NullingPhases p = NullWithZ(u, 0, 1, kBalancedTheta);
  EXPECT_NEAR(p.phi_i, kPi / 2.0, 1e-12);
  EXPECT_LT(std::abs(u(1, 0)), 1e-12);
}

TEST(NullingPhasesTest, ImperfectStepsNullExactly) {
  std::mt19937_64 rng(3);
  for (double r : {0.3, 0.45, 0.55, 0.7}) {
    const double theta = ThetaFromReflectivity(r);
    for (int t = 0; t < 50; ++t) {
      ComplexMatrix u = HaarRandomUnitary(4, rng()).matrix();
      ComplexMatrix v = u;
      const NullingPhases a = NullWithZ(u, 1, 3, theta);
      const NullingPhases b = NullWithZinv(v, 0, 2, theta);
      if (!a.clamped) EXPECT_LT(std::abs(u(3, 1)), 1e-12);
      if (!b.clamped) EXPECT_LT(std::abs(v(2, 0)), 1e-12);
      EXPECT_LT(UnitarityDefect(u), 1e-12);
      EXPECT_LT(UnitarityDefect(v), 1e-12);
    }
  }
}

TEST(NullingPhasesTest, ClampedStepLeavesAnalyticMinimum) {
  // Reflectivity 0.3: the MZI cannot go below cos^2(2 theta) = 0.16.
  const double theta = ThetaFromReflectivity(0.3);
  const Complex partner(0.1, 0.0), target(0.9, 0.2);
  const NullingPhases p = LeftNullingPhases(partner, target, theta);
  EXPECT_TRUE(p.clamped);
  EXPECT_EQ(p.phi_i, 0.0);
  // phi_i = 0 fixes |Z| so the residual is set by magnitudes alone.
  ComplexMatrix u(2, 1);
  u << partner, target;
  const double norm = u.norm();
  const ComplexMatrix w = MziMatrix(p.phi_i, p.phi_e, theta) * u;
  const double c = std::abs(std::cos(2 * theta)), s = std::sin(2 * theta);
  const double best = std::abs(c * std::abs(target) - s * std::abs(partner));
  EXPECT_NEAR(std::abs(w(1, 0)), best, 1e-12);
  EXPECT_NEAR(w.norm(), norm, 1e-12);
}

TEST(NullingPhasesTest, ZeroRatioClamps) {
  const NullingPhases p =
      RightNullingPhases(Complex(0.8, 0.0), Complex(0.0, 0.0), 0.6);
  EXPECT_EQ(p.phi_i, 0.0);
  EXPECT_TRUE(p.clamped);
}

TEST(NullingPhasesTest, DegenerateInputs) {
  const NullingPhases both = LeftNullingPhases(0.0, 0.0, 0.7);
  EXPECT_EQ(both.phi_i, kPi);
  EXPECT_EQ(both.phi_e, 0.0);
  const NullingPhases zero_target = LeftNullingPhases(Complex(0.3, 0.4), 0.0, 0.7);
  EXPECT_NEAR(zero_target.phi_i, kPi, 1e-12);
}

TEST(MigrateThroughDiagonalTest, Identity) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> a(0.0, kTwoPi);
  for (int t = 0; t < 500; ++t) {
    const double theta = 0.05 + 1.45 * (a(rng) / kTwoPi);
    const double pi_ = a(rng), pe = a(rng);
    const Complex d0 = std::polar(1.0, a(rng)), d1 = std::polar(1.0, a(rng));
    const MigratedPhases m = MigrateThroughDiagonal(pi_, pe, d0, d1);
    const Matrix2c lhs = MziMatrix(pi_, pe, theta).adjoint() *
                         Eigen::Vector2cd(d0, d1).asDiagonal();
    const Matrix2c rhs = Eigen::Vector2cd(m.d_top, m.d_bottom).asDiagonal() *
                         MziMatrix(m.phi_i, m.phi_e, theta);
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
  }
}

TEST(NullingPlanTest, UsesEveryMziOnce) {
  for (int n = 1; n <= 16; ++n) {
    const auto& plan = NullingPlan(n);
    ASSERT_EQ(plan.size(), static_cast<size_t>(n * (n - 1) / 2));
    std::vector<int> seen(plan.size(), 0);
    for (const NullingStep& s : plan) ++seen[s.mzi];
    for (int c : seen) EXPECT_EQ(c, 1);
  }
}

TEST(DecomposeTest, SingleMziRoundTrip) {
  const UnitaryMatrix u(ComplexMatrix(MziMatrix(1.2, 0.7)));
  const PhaseProgram p = DecomposeIdeal(u);
  ASSERT_EQ(p.settings.size(), 1u);
  const std::vector<double> t{kBalancedTheta};
  EXPECT_LT(FidelityDistance(u.matrix(), ReconstructMatrix(p, t)), 1e-10);
  EXPECT_LT((u.matrix() - ReconstructMatrix(p, t)).norm(), 1e-10);
}

TEST(DecomposeTest, IdealRoundTripIsExact) {
  for (int n = 1; n <= 12; ++n) {
    const std::vector<double> t = Uniform(n, 0.5);
    for (int s = 0; s < 20; ++s) {
      const UnitaryMatrix u = HaarRandomUnitary(n, DeriveSeed(n, s));
      const PhaseProgram p = DecomposeIdeal(u);
      EXPECT_LT((u.matrix() - ReconstructMatrix(p, t)).norm(), 1e-9) << n;
    }
  }
}

TEST(DecomposeTest, PhasesAreCanonical) {
  const UnitaryMatrix u = HaarRandomUnitary(7, 5);
  for (double r : {0.5, 0.42}) {
    const PhaseProgram p = Decompose(u, Uniform(7, r));
    EXPECT_NO_THROW(p.Validate());
    for (const MziSetting& s : p.settings) {
      EXPECT_GE(s.phi_i, 0.0);
      EXPECT_LE(s.phi_i, kTwoPi);
      EXPECT_GE(s.phi_e, 0.0);
      EXPECT_LT(s.phi_e, kTwoPi);
    }
    for (double g : p.output_phases) {
      EXPECT_GE(g, 0.0);
      EXPECT_LT(g, kTwoPi);
    }
  }
}

TEST(DecomposeTest, TailoredAtBalancedEqualsIdeal) {
  for (int s = 0; s < 20; ++s) {
    const UnitaryMatrix u = HaarRandomUnitary(8, DeriveSeed(80, s));
    const PhaseProgram a = DecomposeIdeal(u);
    const PhaseProgram b = Decompose(u, Uniform(8, 0.5));
    for (size_t k = 0; k < a.settings.size(); ++k) {
      EXPECT_NEAR(a.settings[k].phi_i, b.settings[k].phi_i, 1e-10);
      EXPECT_NEAR(a.settings[k].phi_e, b.settings[k].phi_e, 1e-10);
    }
  }
}

TEST(DecomposeTest, TailoredSelfConsistency) {
  int feasible = 0;
  double naive = 0.0, tailored = 0.0;
  for (double r : {0.3, 0.4, 0.47, 0.6, 0.7}) {
    const std::vector<double> t = Uniform(5, r);
    for (int s = 0; s < 40; ++s) {
      const UnitaryMatrix u = HaarRandomUnitary(5, DeriveSeed(5, s));
      CompileStats stats;
      const PhaseProgram p = Decompose(u, t, &stats);
      const ComplexMatrix realized = ReconstructMatrix(p, t);
      if (stats.clamped_steps == 0) {
        ++feasible;
        EXPECT_LT((u.matrix() - realized).norm(), 1e-9);
      }
      tailored += FidelityDistance(u.matrix(), realized);
      naive += FidelityDistance(u.matrix(), ReconstructMatrix(DecomposeIdeal(u), t));
    }
  }
  EXPECT_GT(feasible, 0);
  EXPECT_LT(tailored, naive);
}

TEST(DecomposeTest, NaiveErrorGrowsWithDefect) {
  const UnitaryMatrix u = HaarRandomUnitary(6, 6);
  const PhaseProgram p = DecomposeIdeal(u);
  double last = -1.0;
  for (double r : {0.5, 0.49, 0.47, 0.44}) {
    const double d = FidelityDistance(u.matrix(), ReconstructMatrix(p, Uniform(6, r)));
    EXPECT_GT(d, last);
    last = d;
  }
}

TEST(DecomposeTest, Errors) {
  EXPECT_THROW(Decompose(HaarRandomUnitary(3, 1), std::vector<double>(2, 0.7)),
               DimensionError);
  PhaseProgram p = UniformProgram(3, 0.0, 0.0);
  p.settings[1].mzi = 2;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
}

TEST(ReconstructTest, OneModeIsOutputPhase) {
  PhaseProgram p;
  p.n_modes = 1;
  p.output_phases = {0.9};
  const ComplexMatrix m = ReconstructMatrix(p, {});
  EXPECT_LT(std::abs(m(0, 0) - std::polar(1.0, 0.9)), 1e-15);
}

TEST(WrapPhaseTest, Range) {
  EXPECT_EQ(WrapPhase(0.0), 0.0);
  EXPECT_NEAR(WrapPhase(-0.5), kTwoPi - 0.5, 1e-15);
  EXPECT_NEAR(WrapPhase(7.0), 7.0 - kTwoPi, 1e-15);
  EXPECT_LT(WrapPhase(-1e-18), kTwoPi);
}

}  // namespace
}  // namespace meshcomp
