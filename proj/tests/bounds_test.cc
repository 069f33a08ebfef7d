// Copyright 2026 The pmlhist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pmlhist/bounds.h"

#include <gtest/gtest.h>

#include <cmath>
#include <variant>
#include <vector>

#include "testing/status_matchers.h"

namespace pmlhist {
namespace {

NoiseScale B(double b) { return *NoiseScale::Create(b); }
AlphaFloor A(double alpha, int k = 2) { return *AlphaFloor::Create(alpha, k); }
PrivacyLevel Eps(double eps) { return *PrivacyLevel::Create(eps); }

double Tight(double b, double alpha) {
  return EpsPmlTight(B(b), A(alpha)).value();
}

std::vector<double> LogGrid(double lo, double hi, int points) {
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) {
    grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) /
                                              (points - 1)));
  }
  return grid;
}

TEST(DomainTypesTest, NoiseScaleRejectsNonPositiveAndNonFinite) {
  EXPECT_STATUS_CODE(NoiseScale::Create(0), absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(NoiseScale::Create(-1),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(NoiseScale::Create(INFINITY),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(NoiseScale::Create(NAN),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_OK(NoiseScale::Create(1e-300));
}

TEST(DomainTypesTest, AlphaFloorEnforcesRange) {
  EXPECT_OK(AlphaFloor::Create(0.1, 10));
  EXPECT_OK(AlphaFloor::Create(1.0 / 3.0, 3));
  EXPECT_STATUS_CODE(AlphaFloor::Create(0.2, 10),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(AlphaFloor::Create(0.4, 3),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(AlphaFloor::Create(0, 2),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(AlphaFloor::Create(0.1, 1),
                     absl::StatusCode::kInvalidArgument);
}

TEST(DomainTypesTest, PrivacyLevelIsNonNegative) {
  EXPECT_OK(PrivacyLevel::Create(0));
  EXPECT_STATUS_CODE(PrivacyLevel::Create(-0.1),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(PrivacyLevel::Create(INFINITY),
                     absl::StatusCode::kInvalidArgument);
}

TEST(EpsDpTest, IsTwoOverB) {
  EXPECT_EQ(EpsDp(B(2)).value(), 1.0);
  EXPECT_EQ(EpsDp(B(4)).value(), 0.5);
  double previous = INFINITY;
  for (double b : LogGrid(1, 1e8, 50)) {
    const double eps = EpsDp(B(b)).value();
    EXPECT_LT(eps, previous);
    previous = eps;
  }
  EXPECT_LT(previous, 1e-7);
}

// Reference values evaluated with 40-digit arithmetic.
TEST(EpsPmlTightTest, MatchesHighPrecisionReference) {
  EXPECT_NEAR(Tight(2, 0.05), 0.91757788712098887893, 1e-15);
  EXPECT_NEAR(Tight(2, 0.5), 0.37988549304172247537, 1e-15);
  EXPECT_NEAR(Tight(1, 0.5), 0.56621916951697281297, 1e-15);
  EXPECT_NEAR(Tight(0.5, 0.25), 1.3328039114139571106, 1e-14);
  EXPECT_NEAR(Tight(1000, 0.05), 0.001899904942977353432, 1e-18);
  EXPECT_NEAR(Tight(0.05, 0.05), 2.9957322735539909127, 1e-14);
}

TEST(EpsPmlTightTest, SmallAlphaKeepsPrecision) {
  EXPECT_NEAR(Tight(2, 1e-6), 0.99999828171964778548, 1e-15);
  EXPECT_NEAR(Tight(1e4, 1e-6), 0.0001999997999799986866, 1e-19);
}

TEST(EpsPmlTightTest, RecoversDpAsAlphaVanishes) {
  EXPECT_NEAR(Tight(2, 1e-8), 1.0, 1e-6);
  EXPECT_NEAR(Tight(2, 1e-12), 1.0, 1e-10);
}

TEST(EpsPmlSimplifiedTest, Fixtures) {
  EXPECT_NEAR(EpsPmlSimplified(B(2), A(0.05)).value(), 0.95125, 1e-15);
  EXPECT_NEAR(EpsPmlSimplified(B(2), A(1e-12)).value(), 1.0, 1e-11);
  const double tight = Tight(2, 0.05);
  const double simplified = EpsPmlSimplified(B(2), A(0.05)).value();
  EXPECT_LT(tight, simplified);
  EXPECT_LE(simplified, EpsDp(B(2)).value());
}

TEST(EpsPmlCompositionTest, Fixtures) {
  EXPECT_NEAR(EpsPmlComposition(B(2), A(0.05, 10)).value(), 4.2778125, 1e-15);
  EXPECT_NEAR(EpsPmlComposition(B(2), A(1e-12, 2)).value(), 0.5, 1e-11);
  EXPECT_NEAR(EpsPmlComposition(B(2), A(0.05, 10)).value() / Tight(2, 0.05),
              4.662070174143093, 1e-12);
}

TEST(PmlCapTest, IsMinusLogAlpha) {
  EXPECT_NEAR(PmlCap(A(0.05)).value(), 2.9957322735539909934, 1e-15);
  EXPECT_NEAR(PmlCap(A(0.5)).value(), std::log(2.0), 1e-16);
  // Tiny b: the bound equals the cap to double precision.
  const double near_zero = Tight(1e-6, 0.05);
  EXPECT_LE(near_zero, PmlCap(A(0.05)).value());
  EXPECT_NEAR(near_zero, PmlCap(A(0.05)).value(), 1e-3);
}

TEST(PmlCapTest, BoundsTightOverLogGrid) {
  for (double alpha : {0.01, 0.05, 0.1, 0.25, 0.5}) {
    const double cap = PmlCap(A(alpha)).value();
    for (double b : LogGrid(1e-4, 1e4, 81)) {
      const double tight = Tight(b, alpha);
      EXPECT_LE(tight, cap) << "b=" << b << " alpha=" << alpha;
      // Below b ~ 0.05 the gap (1/alpha - 1) e^{-2/b} drops under one ulp.
      if (b >= 0.1) EXPECT_LT(tight, cap) << "b=" << b << " alpha=" << alpha;
    }
  }
}

TEST(BoundPropertiesTest, OrderingAndSandwich) {
  for (double b : LogGrid(1e-2, 1e3, 40)) {
    for (double alpha : LogGrid(1e-4, 0.5, 25)) {
      const double dp = EpsDp(B(b)).value();
      const double tight = Tight(b, alpha);
      const double simplified = EpsPmlSimplified(B(b), A(alpha)).value();
      EXPECT_GT(tight, 0);
      EXPECT_LT(tight, dp) << "b=" << b << " alpha=" << alpha;
      EXPECT_LE(tight, simplified) << "b=" << b << " alpha=" << alpha;
      if (b >= alpha) EXPECT_LE(simplified, dp);
      EXPECT_GT(EpsPmlComposition(B(b), A(alpha)).value(), 0);
    }
  }
}

TEST(BoundPropertiesTest, StrictlyDecreasingInAlphaAndB) {
  for (double b : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    double previous = INFINITY;
    for (double alpha = 0.01; alpha <= 0.5 + 1e-12; alpha += 0.01) {
      const double tight = Tight(b, alpha);
      EXPECT_LT(tight, previous) << "b=" << b << " alpha=" << alpha;
      previous = tight;
    }
  }
  for (double alpha : {0.01, 0.05, 0.1, 0.25, 0.5}) {
    double previous = INFINITY;
    for (double b : LogGrid(0.05, 1e4, 100)) {
      const double tight = Tight(b, alpha);
      EXPECT_LT(tight, previous) << "b=" << b << " alpha=" << alpha;
      previous = tight;
    }
  }
}

TEST(BoundPropertiesTest, SlopeInUMatchesFiniteDifference) {
  for (double alpha : {0.01, 0.1, 0.5}) {
    for (double u : {0.01, 0.3, 1.0, 2.5, 8.0}) {
      const double h = 1e-6;
      const double numeric =
          (PmlTightInU(u + h, alpha) - PmlTightInU(u - h, alpha)) / (2 * h);
      const double analytic =
          (1 - alpha) / (1 - alpha + alpha * std::exp(u));
      EXPECT_NEAR(numeric, analytic, 1e-7) << "u=" << u;
      EXPECT_GT(analytic, 0);
    }
  }
}

TEST(BoundPropertiesTest, BranchesAgreeAtSwitchPoint) {
  // Both closed forms must agree where the evaluator switches between them.
  for (double alpha : {1e-6, 0.05, 0.5}) {
    const double below = PmlTightInU(std::nextafter(1.0, 0.0), alpha);
    const double at = PmlTightInU(1.0, alpha);
    EXPECT_NEAR(below, at, 1e-15);
  }
}

TEST(CalibrateDpTest, IsTwoOverEpsilon) {
  ASSERT_OK_AND_ASSIGN(NoiseScale b1, CalibrateDp(Eps(1)));
  EXPECT_EQ(b1.value(), 2.0);
  ASSERT_OK_AND_ASSIGN(NoiseScale b2, CalibrateDp(Eps(0.5)));
  EXPECT_EQ(b2.value(), 4.0);
  ASSERT_OK_AND_ASSIGN(NoiseScale b3, CalibrateDp(Eps(0.1)));
  EXPECT_NEAR(b3.value(), 20.0, 1e-12);
  EXPECT_STATUS_CODE(CalibrateDp(Eps(0)), absl::StatusCode::kInvalidArgument);
}

TEST(CalibratePmlTest, ReferenceScale) {
  ASSERT_OK_AND_ASSIGN(PmlCalibration c, CalibratePml(Eps(0.5), A(0.05)));
  ASSERT_TRUE(std::holds_alternative<CalibrationResult>(c));
  const auto& result = std::get<CalibrationResult>(c);
  EXPECT_NEAR(result.scale.value(), 3.7401373403034941097, 1e-8);
  EXPECT_NEAR(result.achieved.value(), 0.5, 1e-10);
  EXPECT_DOUBLE_EQ(result.residual, result.achieved.value() - 0.5);
  EXPECT_LE(result.iterations, kMaxCalibrationIterations);
  EXPECT_NEAR(Tight(result.scale.value(), 0.05), 0.5, 1e-10);

  ASSERT_OK_AND_ASSIGN(PmlCalibration c2, CalibratePml(Eps(1.0), A(0.25)));
  EXPECT_NEAR(std::get<CalibrationResult>(c2).scale.value(),
              1.080841082171790467, 1e-8);
}

TEST(CalibratePmlTest, DegeneratesToDpAsAlphaVanishes) {
  ASSERT_OK_AND_ASSIGN(PmlCalibration c, CalibratePml(Eps(0.5), A(1e-10)));
  EXPECT_NEAR(std::get<CalibrationResult>(c).scale.value(), 4.0, 1e-6);
}

TEST(CalibratePmlTest, NoNoiseNeededAtOrAboveCap) {
  ASSERT_OK_AND_ASSIGN(PmlCalibration c, CalibratePml(Eps(3.0), A(0.05)));
  ASSERT_TRUE(std::holds_alternative<NoNoiseNeeded>(c));
  EXPECT_NEAR(std::get<NoNoiseNeeded>(c).cap.value(), 2.995732273553991,
              1e-15);
  ASSERT_OK_AND_ASSIGN(PmlCalibration at_cap,
                       CalibratePml(PmlCap(A(0.05)), A(0.05)));
  EXPECT_TRUE(std::holds_alternative<NoNoiseNeeded>(at_cap));
}

TEST(CalibratePmlTest, RejectsBadArguments) {
  EXPECT_STATUS_CODE(CalibratePml(Eps(0), A(0.05)),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(CalibratePml(Eps(0.5), A(0.05), 0),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(CalibratePml(Eps(0.5), A(0.05), -1e-3),
                     absl::StatusCode::kInvalidArgument);
}

TEST(CalibratePmlTest, SubUlpToleranceNeverReturnsAWrongScale) {
  // A 1e-30 tolerance is only met where the bound hits the target exactly;
  // otherwise the iteration budget runs out and the call fails.
  int failures = 0;
  for (double eps = 0.1; eps < 2.9; eps += 0.1) {
    auto c = CalibratePml(Eps(eps), A(0.05), 1e-30);
    if (c.ok()) {
      EXPECT_EQ(std::get<CalibrationResult>(*c).residual, 0.0);
    } else {
      EXPECT_EQ(c.status().code(), absl::StatusCode::kInternal);
      ++failures;
    }
  }
  EXPECT_GT(failures, 0);
}

TEST(CalibratePmlTest, RoundTripAndDominanceOverGrid) {
  for (double alpha : {0.01, 0.05, 0.1, 0.25, 0.5}) {
    const double cap = PmlCap(A(alpha)).value();
    for (double eps = 0.05; eps <= 0.9 * cap; eps += 0.05) {
      ASSERT_OK_AND_ASSIGN(PmlCalibration c, CalibratePml(Eps(eps), A(alpha)));
      ASSERT_TRUE(std::holds_alternative<CalibrationResult>(c));
      const auto& result = std::get<CalibrationResult>(c);
      EXPECT_NEAR(Tight(result.scale.value(), alpha), eps, 1e-9)
          << "eps=" << eps << " alpha=" << alpha;
      EXPECT_LE(std::fabs(result.residual), kDefaultCalibrationTolerance);
      EXPECT_LT(result.scale.value(), CalibrateDp(Eps(eps))->value());
    }
  }
}

}  // namespace
}  // namespace pmlhist
