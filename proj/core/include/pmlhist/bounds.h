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

// Closed-form privacy bounds for the Laplace histogram mechanism and their
// inversion into a noise scale.
//
// All leakage values are in nats. A histogram has l1-sensitivity 2, so the
// pure-DP level of Laplace noise with scale b is 2/b. When every record lands
// in every one of the k classes with probability at least alpha, the
// pointwise maximal leakage (PML) of each record is bounded by
//
//   2/b - log(1 - alpha + alpha * exp(2/b)),
//
// which is tight and strictly below 2/b. The functions here evaluate that
// bound, two looser relatives, and invert it by bisection.

#ifndef PMLHIST_BOUNDS_H_
#define PMLHIST_BOUNDS_H_

#include <variant>

#include "absl/status/statusor.h"

namespace pmlhist {

// Laplace scale parameter b. Noise variance is 2b^2.
class NoiseScale {
 public:
  // Fails with InvalidArgument unless b is finite and strictly positive.
  static absl::StatusOr<NoiseScale> Create(double b);

  double value() const { return b_; }

  friend bool operator==(NoiseScale, NoiseScale) = default;

 private:
  explicit NoiseScale(double b) : b_(b) {}
  double b_;
};

// Lower bound alpha on every class probability of a k-bin histogram.
// Valid when k >= 2 and 0 < alpha <= 1/k.
class AlphaFloor {
 public:
  static absl::StatusOr<AlphaFloor> Create(double alpha, int k);

  double alpha() const { return alpha_; }
  int k() const { return k_; }

 private:
  AlphaFloor(double alpha, int k) : alpha_(alpha), k_(k) {}
  double alpha_;
  int k_;
};

// A leakage level in nats; finite and nonnegative.
class PrivacyLevel {
 public:
  static absl::StatusOr<PrivacyLevel> Create(double epsilon);

  double value() const { return epsilon_; }

  friend bool operator==(PrivacyLevel, PrivacyLevel) = default;

 private:
  explicit PrivacyLevel(double epsilon) : epsilon_(epsilon) {}
  double epsilon_;
};

inline constexpr double kDefaultCalibrationTolerance = 1e-10;
inline constexpr int kMaxCalibrationIterations = 200;

struct CalibrationResult {
  NoiseScale scale;
  PrivacyLevel achieved;
  int iterations;
  // achieved - target.
  double residual;
};

// Returned instead of a scale when the target is at or above PmlCap: every
// finite noise scale already satisfies it, so no scale attains it.
struct NoNoiseNeeded {
  PrivacyLevel cap;
};

using PmlCalibration = std::variant<CalibrationResult, NoNoiseNeeded>;

// 2/b.
PrivacyLevel EpsDp(NoiseScale b);

// The tight per-record PML bound. Always in (0, EpsDp(b)) for finite b.
PrivacyLevel EpsPmlTight(NoiseScale b, const AlphaFloor& alpha);

// 2(1 - alpha)/b + 2 alpha^2/b^2. Upper bounds EpsPmlTight.
PrivacyLevel EpsPmlSimplified(NoiseScale b, const AlphaFloor& alpha);

// Bound obtained by composing k - 1 independent count releases:
// (k - 1) * ((1 - alpha)/b + alpha^2/(2 b^2)). Grows linearly with k.
PrivacyLevel EpsPmlComposition(NoiseScale b, const AlphaFloor& alpha);

// -log(alpha), the supremum of EpsPmlTight over b > 0 (approached as b -> 0).
PrivacyLevel PmlCap(const AlphaFloor& alpha);

// The tight bound as a function of u = 2/b. Strictly increasing in u with
// slope (1 - alpha)/(1 - alpha + alpha e^u). Exposed for calibration and
// benchmarks; callers normally use EpsPmlTight.
double PmlTightInU(double u, double alpha);

// b = 2/target. Fails with InvalidArgument when target is zero.
absl::StatusOr<NoiseScale> CalibrateDp(PrivacyLevel target);

// Finds b' with |EpsPmlTight(b', alpha) - target| <= tol by bisection in
// u = 2/b. Fails with InvalidArgument for target == 0 or tol <= 0, and with
// Internal if the iteration budget runs out before reaching tol.
absl::StatusOr<PmlCalibration> CalibratePml(
    PrivacyLevel target, const AlphaFloor& alpha,
    double tol = kDefaultCalibrationTolerance);

}  // namespace pmlhist

#endif  // PMLHIST_BOUNDS_H_
