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

#include "pmlhist/mechanism.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace pmlhist {
namespace {

constexpr double kDistributionSumTolerance = 1e-9;

absl::Status CheckDistribution(std::span<const double> p,
                               const char* name) {
  double sum = 0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat(name, " has an invalid entry ", v));
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kDistributionSumTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " sums to ", sum, ", expected 1"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Dataset> Dataset::Create(std::vector<int> labels, int k) {
  if (k < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("number of classes k must be >= 2, got ", k));
  }
  if (labels.empty()) {
    return absl::InvalidArgumentError("dataset must have at least one record");
  }
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 1 || labels[i] > k) {
      return absl::InvalidArgumentError(
          absl::StrCat("record ", i + 1, " has label ", labels[i],
                       " outside [1, ", k, "]"));
    }
  }
  return Dataset(std::move(labels), k);
}

absl::StatusOr<Histogram> Histogram::FromCounts(std::vector<int64_t> counts) {
  if (counts.size() < 2) {
    return absl::InvalidArgumentError("histogram needs at least two bins");
  }
  int64_t n = 0;
  for (int64_t c : counts) {
    if (c < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("histogram count must be >= 0, got ", c));
    }
    n += c;
  }
  return Histogram(std::move(counts), n);
}

Histogram ComputeHistogram(const Dataset& dataset) {
  std::vector<int64_t> counts(dataset.k(), 0);
  for (int label : dataset.labels()) ++counts[label - 1];
  return Histogram(std::move(counts), dataset.n());
}

double LaplaceFromUniform(double u, NoiseScale b) {
  if (u == 0) return 0.0;
  const double magnitude = -b.value() * std::log1p(-2.0 * std::fabs(u));
  return u < 0 ? -magnitude : magnitude;
}

double SampleLaplace(RandomStream& stream, NoiseScale b) {
  return LaplaceFromUniform(stream.NextOpenUniform() - 0.5, b);
}

SanitizedHistogram Sanitize(const NoisyHistogram& noisy) {
  SanitizedHistogram out;
  out.counts.reserve(noisy.values.size());
  for (double y : noisy.values) {
    out.counts.push_back(static_cast<int64_t>(std::round(std::max(0.0, y))));
  }
  return out;
}

PrivatizedHistogram Privatize(const Histogram& histogram, NoiseScale b,
                              RandomStream& stream) {
  NoisyHistogram noisy;
  noisy.values.reserve(histogram.k());
  for (int64_t c : histogram.counts()) {
    noisy.values.push_back(static_cast<double>(c) + SampleLaplace(stream, b));
  }
  SanitizedHistogram sanitized = Sanitize(noisy);
  return {std::move(noisy), std::move(sanitized)};
}

absl::StatusOr<PrivatizedHistogram> PrivatizeWithNoise(
    const Histogram& histogram, std::span<const double> noise) {
  if (noise.size() != histogram.counts().size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("noise has ", noise.size(), " entries, histogram has ",
                     histogram.k(), " bins"));
  }
  NoisyHistogram noisy;
  noisy.values.reserve(noise.size());
  for (size_t j = 0; j < noise.size(); ++j) {
    if (!std::isfinite(noise[j])) {
      return absl::InvalidArgumentError("noise values must be finite");
    }
    noisy.values.push_back(static_cast<double>(histogram.counts()[j]) +
                           noise[j]);
  }
  SanitizedHistogram sanitized = Sanitize(noisy);
  return PrivatizedHistogram{std::move(noisy), std::move(sanitized)};
}

std::optional<std::vector<double>> Normalize(std::span<const int64_t> counts) {
  const int64_t total = std::accumulate(counts.begin(), counts.end(),
                                        int64_t{0});
  if (total == 0) return std::nullopt;
  std::vector<double> p;
  p.reserve(counts.size());
  for (int64_t c : counts) {
    p.push_back(static_cast<double>(c) / static_cast<double>(total));
  }
  return p;
}

absl::StatusOr<double> TotalVariationDistance(std::span<const double> p,
                                              std::span<const double> q) {
  if (p.size() != q.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "distribution lengths differ: ", p.size(), " vs ", q.size()));
  }
  if (auto s = CheckDistribution(p, "first distribution"); !s.ok()) return s;
  if (auto s = CheckDistribution(q, "second distribution"); !s.ok()) return s;
  double l1 = 0;
  for (size_t j = 0; j < p.size(); ++j) l1 += std::fabs(p[j] - q[j]);
  return std::min(1.0, 0.5 * l1);
}

absl::StatusOr<Dataset> GenerateUniformDataset(int64_t n, int k,
                                               RandomStream& stream) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("dataset size n must be >= 1, got ", n));
  }
  if (k < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("number of classes k must be >= 2, got ", k));
  }
  std::vector<int> labels(n);
  for (int& label : labels) {
    label = 1 + static_cast<int>(stream.NextBelow(static_cast<uint64_t>(k)));
  }
  return Dataset::Create(std::move(labels), k);
}

absl::StatusOr<Dataset> GenerateCategoricalDataset(
    int64_t n, std::span<const double> probs, RandomStream& stream) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("dataset size n must be >= 1, got ", n));
  }
  if (probs.size() < 2) {
    return absl::InvalidArgumentError("need at least two class probabilities");
  }
  if (auto s = CheckDistribution(probs, "class distribution"); !s.ok()) {
    return s;
  }
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  std::vector<int> labels(n);
  for (int& label : labels) {
    const double u = stream.NextOpenUniform() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end() - 1, u);
    label = 1 + static_cast<int>(it - cdf.begin());
  }
  return Dataset::Create(std::move(labels), static_cast<int>(probs.size()));
}

}  // namespace pmlhist
