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

// Exact pointwise maximal leakage of one record through the Laplace
// histogram mechanism, for small databases with i.i.d. records.
//
// For an outcome y the leakage about record D1 is
//
//   log max_c M(y | D1 in class c) / M(y),   M(y) = sum_c p_c M(y | c).
//
// M(y | c) averages the product of Laplace densities over the class counts
// m of the other n - 1 records, which are multinomial(n - 1, p). The oracle
// enumerates every such count vector, so it is exact but only feasible while
// binomial(n + k - 2, k - 1) stays within an EnumerationBudget.

#ifndef PMLHIST_ORACLE_H_
#define PMLHIST_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "pmlhist/bounds.h"
#include "pmlhist/mechanism.h"
#include "pmlhist/random_stream.h"

namespace pmlhist {

// Per-record class probabilities p with every p_j >= alpha.
class ClassDistribution {
 public:
  // Uses alpha = min_j p_j.
  static absl::StatusOr<ClassDistribution> Create(std::vector<double> probs);
  // Fails with InvalidArgument if some p_j < alpha, the lengths disagree with
  // alpha.k(), or p does not sum to 1 within 1e-12.
  static absl::StatusOr<ClassDistribution> Create(std::vector<double> probs,
                                                  const AlphaFloor& alpha);

  const std::vector<double>& probs() const { return probs_; }
  const AlphaFloor& alpha() const { return alpha_; }
  int k() const { return static_cast<int>(probs_.size()); }
  double MinProbability() const;

 private:
  ClassDistribution(std::vector<double> probs, AlphaFloor alpha)
      : probs_(std::move(probs)), alpha_(alpha) {}

  std::vector<double> probs_;
  AlphaFloor alpha_;
};

struct EnumerationBudget {
  int64_t max_terms = 2'000'000;
};

struct LeakageReport {
  NoisyHistogram outcome;
  // M(y | class c), scaled so the largest entry is 1. The common factor
  // (1/2b)^k and the scaling cancel in the leakage.
  std::vector<double> per_class_likelihood;
  // sum_c p_c * per_class_likelihood[c], on the same scale.
  double marginal = 0;
  // Leakage in nats.
  double pml = 0;
  // 1-based class attaining the maximum likelihood.
  int argmax_class = 0;
};

// Number of count vectors of `total` records over `parts` classes,
// binomial(total + parts - 1, parts - 1), as a double.
double CountCompositions(int64_t total, int parts);

// Builds a report from per-class log-likelihoods known up to a common
// additive constant.
LeakageReport LeakageFromClassLikelihoods(
    NoisyHistogram outcome, std::span<const double> log_likelihoods,
    std::span<const double> probs);

// Exact leakage of record D1 at outcome y for an n-record database whose
// records are i.i.d. with class distribution p.
//
// Fails with ResourceExhausted before doing any work when the number of
// count vectors exceeds budget.max_terms, and with InvalidArgument when y
// has the wrong length or n < 1.
absl::StatusOr<LeakageReport> ExactPml(
    const NoisyHistogram& y, const ClassDistribution& p, int64_t n,
    NoiseScale b, const EnumerationBudget& budget = {});

// The outcome y = (n, 0, ..., 0). Every other record's class counts then
// satisfy y_1 - m_1 >= 1 and y_t - m_t <= 0, which makes the leakage equal
// the tight bound when p_1 is the minimum class probability.
absl::StatusOr<NoisyHistogram> TightnessWitness(int64_t n, int k);

struct BoundViolation {
  NoisyHistogram outcome;
  double pml = 0;
};

struct BoundVerification {
  // EpsPmlTight(b, p.alpha()).
  double bound = 0;
  int64_t outcomes_evaluated = 0;
  double max_leakage = 0;
  NoisyHistogram max_leakage_outcome;
  // Smallest bound - pml over all evaluated outcomes, and over only the
  // outcomes produced by running the mechanism.
  double min_gap = 0;
  double min_sampled_gap = 0;
  double witness_leakage = 0;
  double witness_gap = 0;
  std::vector<BoundViolation> violations;

  bool passed() const { return violations.empty(); }
};

// Leakage above the bound by more than this counts as a violation.
inline constexpr double kBoundViolationSlack = 1e-12;

// Checks ExactPml <= EpsPmlTight(b, p.alpha()) on `trials` outcomes of the
// mechanism run on datasets drawn from p (trial t uses stream.Child(t)),
// plus an adversarial set: the tightness witness, every single-class corner
// (n e_c) and its negation, all-zero, all-n, and half-integer offsets around
// integer count vectors.
absl::StatusOr<BoundVerification> VerifyBound(
    const ClassDistribution& p, int64_t n, NoiseScale b, int64_t trials,
    const RandomStream& stream, const EnumerationBudget& budget = {});

}  // namespace pmlhist

#endif  // PMLHIST_ORACLE_H_
