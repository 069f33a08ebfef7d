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

#include "pmlhist/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace pmlhist {
namespace {

constexpr double kProbabilitySumTolerance = 1e-12;

// Largest lattice of integer count vectors used as adversarial centres in
// VerifyBound. Larger lattices fall back to the corners only.
constexpr double kMaxLatticePoints = 64;

// Advances m to the next count vector with the same total in lexicographic
// order. Returns false after the last one, (total, 0, ..., 0).
bool NextComposition(std::vector<int64_t>& m) {
  const size_t k = m.size();
  int64_t suffix = 0;
  for (size_t i = k - 1; i >= 1; --i) {
    suffix += m[i];
    if (suffix > 0) {
      ++m[i - 1];
      std::fill(m.begin() + i, m.end(), 0);
      m[k - 1] = suffix - 1;
      return true;
    }
  }
  return false;
}

template <typename Fn>
void ForEachComposition(int64_t total, int parts, Fn&& fn) {
  std::vector<int64_t> m(parts, 0);
  m[parts - 1] = total;
  do {
    fn(m);
  } while (NextComposition(m));
}

// Running log-sum-exp with a max shift.
class LogSumExp {
 public:
  void Add(double log_term) {
    if (log_term > max_) {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    } else {
      sum_ += std::exp(log_term - max_);
    }
  }
  double Value() const { return max_ + std::log(sum_); }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0;
};

absl::Status CheckOutcome(const NoisyHistogram& y, int k) {
  if (static_cast<int>(y.values.size()) != k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "outcome has ", y.values.size(), " bins, expected ", k));
  }
  for (double v : y.values) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("outcome values must be finite");
    }
  }
  return absl::OkStatus();
}

absl::Status CheckBudget(int64_t n, int k, const EnumerationBudget& budget) {
  const double terms = CountCompositions(n - 1, k);
  if (terms > static_cast<double>(budget.max_terms)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "exact leakage needs ", terms, " count vectors for n=", n, ", k=", k,
        ", over the enumeration budget of ", budget.max_terms));
  }
  return absl::OkStatus();
}

NoisyHistogram Offset(const std::vector<int64_t>& counts, double all,
                      int bin, double single) {
  NoisyHistogram y;
  y.values.reserve(counts.size());
  for (size_t j = 0; j < counts.size(); ++j) {
    y.values.push_back(static_cast<double>(counts[j]) + all +
                       (static_cast<int>(j) == bin ? single : 0.0));
  }
  return y;
}

std::vector<NoisyHistogram> AdversarialOutcomes(int64_t n, int k) {
  std::vector<NoisyHistogram> out;
  const double nd = static_cast<double>(n);
  for (int c = 0; c < k; ++c) {
    NoisyHistogram corner{std::vector<double>(k, 0.0)};
    corner.values[c] = nd;
    out.push_back(corner);
    for (double& v : corner.values) v = -v;
    out.push_back(std::move(corner));
  }
  out.push_back({std::vector<double>(k, 0.0)});
  out.push_back({std::vector<double>(k, nd)});

  auto add_around = [&](const std::vector<int64_t>& m) {
    out.push_back(Offset(m, 0.5, -1, 0));
    out.push_back(Offset(m, -0.5, -1, 0));
    for (int j = 0; j < k; ++j) {
      out.push_back(Offset(m, 0, j, 0.5));
      out.push_back(Offset(m, 0, j, -0.5));
    }
  };
  if (CountCompositions(n, k) <= kMaxLatticePoints) {
    ForEachComposition(n, k, [&](const std::vector<int64_t>& m) {
      out.push_back(Offset(m, 0, -1, 0));
      add_around(m);
    });
  } else {
    for (int c = 0; c < k; ++c) {
      std::vector<int64_t> m(k, 0);
      m[c] = n;
      add_around(m);
    }
  }
  return out;
}

}  // namespace

absl::StatusOr<ClassDistribution> ClassDistribution::Create(
    std::vector<double> probs) {
  if (probs.empty()) {
    return absl::InvalidArgumentError("class distribution is empty");
  }
  const double min_p = *std::min_element(probs.begin(), probs.end());
  auto alpha = AlphaFloor::Create(min_p, static_cast<int>(probs.size()));
  if (!alpha.ok()) return alpha.status();
  return Create(std::move(probs), *alpha);
}

absl::StatusOr<ClassDistribution> ClassDistribution::Create(
    std::vector<double> probs, const AlphaFloor& alpha) {
  if (static_cast<int>(probs.size()) != alpha.k()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "class distribution has ", probs.size(), " entries, expected k=",
        alpha.k()));
  }
  double sum = 0;
  for (size_t j = 0; j < probs.size(); ++j) {
    if (!std::isfinite(probs[j]) || probs[j] < alpha.alpha()) {
      return absl::InvalidArgumentError(
          absl::StrCat("class ", j + 1, " has probability ", probs[j],
                       " below the floor alpha=", alpha.alpha()));
    }
    sum += probs[j];
  }
  if (std::fabs(sum - 1.0) > kProbabilitySumTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("class probabilities sum to ", sum, ", expected 1"));
  }
  return ClassDistribution(std::move(probs), alpha);
}

double ClassDistribution::MinProbability() const {
  return *std::min_element(probs_.begin(), probs_.end());
}

double CountCompositions(int64_t total, int parts) {
  // binomial(total + parts - 1, parts - 1) = prod_{i=1}^{parts-1}
  // (total + i) / i; each partial product is itself a binomial coefficient.
  double count = 1;
  for (int i = 1; i < parts; ++i) {
    count = count * static_cast<double>(total + i) / i;
  }
  return std::round(count);
}

LeakageReport LeakageFromClassLikelihoods(
    NoisyHistogram outcome, std::span<const double> log_likelihoods,
    std::span<const double> probs) {
  LeakageReport report;
  report.outcome = std::move(outcome);
  const auto max_it =
      std::max_element(log_likelihoods.begin(), log_likelihoods.end());
  const double shift = *max_it;
  report.argmax_class =
      1 + static_cast<int>(std::distance(log_likelihoods.begin(), max_it));
  report.per_class_likelihood.reserve(log_likelihoods.size());
  for (size_t c = 0; c < log_likelihoods.size(); ++c) {
    const double likelihood = std::exp(log_likelihoods[c] - shift);
    report.per_class_likelihood.push_back(likelihood);
    report.marginal += probs[c] * likelihood;
  }
  // The maximum scaled likelihood is exactly 1.
  report.pml = -std::log(report.marginal);
  return report;
}

absl::StatusOr<LeakageReport> ExactPml(const NoisyHistogram& y,
                                       const ClassDistribution& p, int64_t n,
                                       NoiseScale b,
                                       const EnumerationBudget& budget) {
  const int k = p.k();
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("database size n must be >= 1, got ", n));
  }
  if (auto s = CheckOutcome(y, k); !s.ok()) return s;
  if (auto s = CheckBudget(n, k, budget); !s.ok()) return s;

  const double inv_b = 1.0 / b.value();
  std::vector<double> log_p(k);
  for (int j = 0; j < k; ++j) log_p[j] = std::log(p.probs()[j]);
  std::vector<double> log_factorial(n);
  for (int64_t i = 0; i < n; ++i) {
    log_factorial[i] = std::lgamma(static_cast<double>(i) + 1.0);
  }
  const double log_norm = log_factorial[n - 1];

  std::vector<LogSumExp> per_class(k);
  std::vector<double> residual(k);
  ForEachComposition(n - 1, k, [&](const std::vector<int64_t>& m) {
    // Multinomial(n - 1, p) weight of m times the density with D1 absent.
    double base = log_norm;
    for (int j = 0; j < k; ++j) {
      residual[j] = y.values[j] - static_cast<double>(m[j]);
      base += static_cast<double>(m[j]) * log_p[j] - log_factorial[m[j]] -
              std::fabs(residual[j]) * inv_b;
    }
    // Placing D1 in class c moves bin c from residual r to r - 1.
    for (int c = 0; c < k; ++c) {
      per_class[c].Add(base + (std::fabs(residual[c]) -
                               std::fabs(residual[c] - 1.0)) *
                                  inv_b);
    }
  });

  std::vector<double> log_likelihoods(k);
  for (int c = 0; c < k; ++c) log_likelihoods[c] = per_class[c].Value();
  return LeakageFromClassLikelihoods(y, log_likelihoods, p.probs());
}

absl::StatusOr<NoisyHistogram> TightnessWitness(int64_t n, int k) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("database size n must be >= 1, got ", n));
  }
  if (k < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("number of bins k must be >= 2, got ", k));
  }
  NoisyHistogram y{std::vector<double>(k, 0.0)};
  y.values[0] = static_cast<double>(n);
  return y;
}

absl::StatusOr<BoundVerification> VerifyBound(
    const ClassDistribution& p, int64_t n, NoiseScale b, int64_t trials,
    const RandomStream& stream, const EnumerationBudget& budget) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("database size n must be >= 1, got ", n));
  }
  if (trials < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("trials must be >= 0, got ", trials));
  }
  if (auto s = CheckBudget(n, p.k(), budget); !s.ok()) return s;

  BoundVerification result;
  result.bound = EpsPmlTight(b, p.alpha()).value();
  result.min_gap = std::numeric_limits<double>::infinity();
  result.min_sampled_gap = std::numeric_limits<double>::infinity();
  result.max_leakage = -std::numeric_limits<double>::infinity();

  auto evaluate = [&](const NoisyHistogram& y,
                      bool sampled) -> absl::StatusOr<double> {
    auto report = ExactPml(y, p, n, b, budget);
    if (!report.ok()) return report.status();
    const double gap = result.bound - report->pml;
    ++result.outcomes_evaluated;
    result.min_gap = std::min(result.min_gap, gap);
    if (sampled) result.min_sampled_gap = std::min(result.min_sampled_gap, gap);
    if (report->pml > result.max_leakage) {
      result.max_leakage = report->pml;
      result.max_leakage_outcome = y;
    }
    if (report->pml > result.bound + kBoundViolationSlack) {
      result.violations.push_back({y, report->pml});
    }
    return report->pml;
  };

  auto witness = TightnessWitness(n, p.k());
  if (!witness.ok()) return witness.status();
  auto witness_pml = evaluate(*witness, false);
  if (!witness_pml.ok()) return witness_pml.status();
  result.witness_leakage = *witness_pml;
  result.witness_gap = result.bound - *witness_pml;

  for (const NoisyHistogram& y : AdversarialOutcomes(n, p.k())) {
    if (auto s = evaluate(y, false); !s.ok()) return s.status();
  }

  for (int64_t t = 0; t < trials; ++t) {
    RandomStream trial = stream.Child(static_cast<uint64_t>(t));
    auto dataset = GenerateCategoricalDataset(n, p.probs(), trial);
    if (!dataset.ok()) return dataset.status();
    PrivatizedHistogram out = Privatize(ComputeHistogram(*dataset), b, trial);
    if (auto s = evaluate(out.noisy, true); !s.ok()) return s.status();
  }
  return result;
}

}  // namespace pmlhist
