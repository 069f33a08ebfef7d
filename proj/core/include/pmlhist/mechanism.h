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

// The Laplace histogram mechanism: counting, noising, sanitizing (clip at
// zero then round), and the total variation distance used to score utility.

#ifndef PMLHIST_MECHANISM_H_
#define PMLHIST_MECHANISM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "pmlhist/bounds.h"
#include "pmlhist/random_stream.h"

namespace pmlhist {

// Pre-classified records. Labels are 1-based class indices in [1, k].
class Dataset {
 public:
  static absl::StatusOr<Dataset> Create(std::vector<int> labels, int k);

  const std::vector<int>& labels() const { return labels_; }
  int k() const { return k_; }
  int64_t n() const { return static_cast<int64_t>(labels_.size()); }

 private:
  Dataset(std::vector<int> labels, int k)
      : labels_(std::move(labels)), k_(k) {}

  std::vector<int> labels_;
  int k_;
};

// Exact per-class counts. counts[j] is the count of class j + 1.
class Histogram {
 public:
  static absl::StatusOr<Histogram> FromCounts(std::vector<int64_t> counts);

  const std::vector<int64_t>& counts() const { return counts_; }
  int k() const { return static_cast<int>(counts_.size()); }
  int64_t n() const { return n_; }

 private:
  friend Histogram ComputeHistogram(const Dataset& dataset);

  Histogram(std::vector<int64_t> counts, int64_t n)
      : counts_(std::move(counts)), n_(n) {}

  std::vector<int64_t> counts_;
  int64_t n_;
};

// Raw mechanism output y^k = counts + noise, before post-processing.
struct NoisyHistogram {
  std::vector<double> values;
};

// Noisy counts clipped at zero and rounded. The total is unconstrained.
struct SanitizedHistogram {
  std::vector<int64_t> counts;
};

struct PrivatizedHistogram {
  NoisyHistogram noisy;
  SanitizedHistogram sanitized;
};

Histogram ComputeHistogram(const Dataset& dataset);

// Inverse-CDF Laplace transform of a uniform u in (-1/2, 1/2):
// -b * sign(u) * log(1 - 2|u|). Maps u = 0 to 0.
double LaplaceFromUniform(double u, NoiseScale b);

// One zero-mean Laplace(b) draw; consumes exactly one uniform from `stream`.
double SampleLaplace(RandomStream& stream, NoiseScale b);

// Draws k Laplace values (one per bin, in bin order) from `stream`, adds
// them to the counts and sanitizes.
PrivatizedHistogram Privatize(const Histogram& histogram, NoiseScale b,
                              RandomStream& stream);

// Same pipeline with caller-supplied noise. Fails with InvalidArgument when
// the noise length differs from k or a value is not finite.
absl::StatusOr<PrivatizedHistogram> PrivatizeWithNoise(
    const Histogram& histogram, std::span<const double> noise);

// max(0, y) rounded half away from zero, per bin.
SanitizedHistogram Sanitize(const NoisyHistogram& noisy);

// counts / sum(counts), or nullopt when every count is zero.
std::optional<std::vector<double>> Normalize(std::span<const int64_t> counts);

// Half the l1 distance. Fails with InvalidArgument on a length mismatch or
// when either input does not sum to 1 within 1e-9.
absl::StatusOr<double> TotalVariationDistance(std::span<const double> p,
                                              std::span<const double> q);

// n i.i.d. labels uniform on [1, k].
absl::StatusOr<Dataset> GenerateUniformDataset(int64_t n, int k,
                                               RandomStream& stream);

// n i.i.d. labels with P(label = j + 1) = probs[j]. probs must be a
// probability vector of length >= 2.
absl::StatusOr<Dataset> GenerateCategoricalDataset(
    int64_t n, std::span<const double> probs, RandomStream& stream);

}  // namespace pmlhist

#endif  // PMLHIST_MECHANISM_H_
