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

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace pmlhist {
namespace {

// Doubling u past this point cannot change the bound in double precision:
// exp(-u) has underflowed and the bound equals -log(alpha).
constexpr double kMaxBracketU = 4096.0;

// Slack on alpha * k <= 1 so that alpha = 1/k computed in floating point
// (e.g. the minimum of a uniform distribution) is accepted.
constexpr double kAlphaRoundingSlack = 1e-12;

// Bound values are finite and nonnegative by construction.
PrivacyLevel Level(double epsilon) { return *PrivacyLevel::Create(epsilon); }

}  // namespace

absl::StatusOr<NoiseScale> NoiseScale::Create(double b) {
  if (!std::isfinite(b) || b <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("noise scale b must be finite and > 0, got ", b));
  }
  return NoiseScale(b);
}

absl::StatusOr<AlphaFloor> AlphaFloor::Create(double alpha, int k) {
  if (k < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("number of bins k must be >= 2, got ", k));
  }
  if (!std::isfinite(alpha) || alpha <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must be > 0, got ", alpha));
  }
  if (alpha * k > 1.0 + kAlphaRoundingSlack) {
    return absl::InvalidArgumentError(absl::StrCat(
        "alpha must be <= 1/k, got alpha=", alpha, " with k=", k));
  }
  return AlphaFloor(alpha, k);
}

absl::StatusOr<PrivacyLevel> PrivacyLevel::Create(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("privacy level must be finite and >= 0, got ", epsilon));
  }
  return PrivacyLevel(epsilon);
}

double PmlTightInU(double u, double alpha) {
  if (u < 1.0) {
    // u - log(1 + alpha (e^u - 1)); both terms small, no cancellation in the
    // log argument even for tiny alpha.
    return u - std::log1p(alpha * std::expm1(u));
  }
  // Equivalent form -log(alpha + (1 - alpha) e^{-u}) that stays finite when
  // e^u would overflow.
  return -std::log(alpha + (1.0 - alpha) * std::exp(-u));
}

PrivacyLevel EpsDp(NoiseScale b) { return Level(2.0 / b.value()); }

PrivacyLevel EpsPmlTight(NoiseScale b, const AlphaFloor& alpha) {
  return Level(PmlTightInU(2.0 / b.value(), alpha.alpha()));
}

PrivacyLevel EpsPmlSimplified(NoiseScale b, const AlphaFloor& alpha) {
  const double a = alpha.alpha();
  const double bv = b.value();
  return Level(2.0 * (1.0 - a) / bv + 2.0 * a * a / (bv * bv));
}

PrivacyLevel EpsPmlComposition(NoiseScale b, const AlphaFloor& alpha) {
  const double a = alpha.alpha();
  const double bv = b.value();
  return Level((alpha.k() - 1) *
                      ((1.0 - a) / bv + a * a / (2.0 * bv * bv)));
}

PrivacyLevel PmlCap(const AlphaFloor& alpha) {
  return Level(-std::log(alpha.alpha()));
}

absl::StatusOr<NoiseScale> CalibrateDp(PrivacyLevel target) {
  if (target.value() <= 0) {
    return absl::InvalidArgumentError("target privacy level must be > 0");
  }
  return NoiseScale::Create(2.0 / target.value());
}

absl::StatusOr<PmlCalibration> CalibratePml(PrivacyLevel target,
                                            const AlphaFloor& alpha,
                                            double tol) {
  const double eps = target.value();
  if (eps <= 0) {
    return absl::InvalidArgumentError("target privacy level must be > 0");
  }
  if (!std::isfinite(tol) || tol <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("calibration tolerance must be > 0, got ", tol));
  }
  const PrivacyLevel cap = PmlCap(alpha);
  if (eps >= cap.value()) return NoNoiseNeeded{cap};

  const double a = alpha.alpha();
  auto f = [a](double u) { return PmlTightInU(u, a); };

  // f(u) < u, so f(eps) < eps and eps is a valid lower end.
  double lo = eps;
  double hi = 1.0;
  while (f(hi) < eps) {
    hi *= 2.0;
    if (hi > kMaxBracketU) {
      return absl::InternalError(absl::StrCat(
          "could not bracket target ", eps, " below cap ", cap.value()));
    }
  }

  for (int iteration = 1; iteration <= kMaxCalibrationIterations;
       ++iteration) {
    const double mid = 0.5 * (lo + hi);
    const double value = f(mid);
    if (std::fabs(value - eps) <= tol) {
      auto scale = NoiseScale::Create(2.0 / mid);
      if (!scale.ok()) return scale.status();
      return CalibrationResult{.scale = *scale,
                               .achieved = Level(value),
                               .iterations = iteration,
                               .residual = value - eps};
    }
    if (value < eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return absl::InternalError(absl::StrCat(
      "bisection did not reach tolerance ", tol, " within ",
      kMaxCalibrationIterations, " iterations"));
}

}  // namespace pmlhist
