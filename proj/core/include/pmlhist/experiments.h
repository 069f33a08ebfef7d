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

// Monte Carlo comparison of DP-calibrated and PML-calibrated Laplace
// histograms by the total variation distance between the sanitized release
// and the dataset's empirical distribution.
//
// Random numbers are addressed, not consumed in sequence. Repetition r of a
// cell with k bins draws its dataset from Child(k).Child(r).Child(0) and its
// noise uniforms from Child(k).Child(r).Child(1) of the root seed. Cells that
// differ only in epsilon, alpha or mechanism therefore see the same datasets
// and the same uniforms (common random numbers), and results do not depend
// on thread count or scheduling.

#ifndef PMLHIST_EXPERIMENTS_H_
#define PMLHIST_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace pmlhist {

enum class Mechanism { kDp, kPml };

// "dp" or "pml".
absl::string_view MechanismName(Mechanism mechanism);
absl::StatusOr<Mechanism> ParseMechanism(absl::string_view name);

struct ExperimentConfig {
  int64_t n = 1000;
  int reps = 10000;
  uint64_t seed = 0;
  std::vector<double> epsilon_grid;
  std::vector<int> k_grid;
  std::vector<double> alpha_grid;
  std::vector<Mechanism> mechanisms = {Mechanism::kDp, Mechanism::kPml};
  // Worker threads; 0 means std::thread::hardware_concurrency().
  int threads = 0;
  // Reuse the repetition-0 dataset for every repetition.
  bool fixed_dataset = false;
};

// epsilon in {0.1, 0.2, 0.5, 1, 2}, k in {5, 10}, alpha in {0.05, 0.1}.
ExperimentConfig DefaultEpsilonSweepConfig();
// alpha = 0.05, k in {2, 5, 10, 20}, epsilon in {0.2, 0.5}.
ExperimentConfig DefaultKSweepConfig();

// Fails with InvalidArgument on empty grids, reps < 1, n < 1, epsilon <= 0,
// or any (alpha, k) pair with alpha > 1/k.
absl::Status ValidateConfig(const ExperimentConfig& config);

struct Cell {
  double epsilon = 0;
  int k = 0;
  double alpha = 0;
  Mechanism mechanism = Mechanism::kDp;
};

struct CellResult {
  double epsilon = 0;
  int k = 0;
  double alpha = 0;
  Mechanism mechanism = Mechanism::kDp;
  // Calibrated Laplace scale. Empty for a PML cell whose epsilon is at or
  // above the leakage cap -log(alpha); such cells run without noise.
  std::optional<double> noise_scale;
  double mean_tvd = 0;
  // Sample standard deviation / sqrt(reps).
  double stderr_tvd = 0;
  // Repetitions whose sanitized histogram was all zeros (scored as TVD 1).
  int64_t degenerate_count = 0;
  int reps = 0;
  uint64_t seed = 0;

  friend bool operator==(const CellResult&, const CellResult&) = default;
};

// Per-repetition TVDs, in repetition order. Exposed for paired comparisons.
absl::StatusOr<std::vector<double>> RunCellRepetitions(
    const ExperimentConfig& config, const Cell& cell,
    int64_t* degenerate_count = nullptr);

absl::StatusOr<CellResult> RunCell(const ExperimentConfig& config,
                                   const Cell& cell);

// One result per (epsilon, k, alpha, mechanism) in the cross product of the
// config grids, sorted by that tuple.
absl::StatusOr<std::vector<CellResult>> SweepEpsilon(
    const ExperimentConfig& config);

// Same cross product with a single fixed alpha. Fails with InvalidArgument
// unless alpha_grid has exactly one value and every k satisfies
// alpha <= 1/k.
absl::StatusOr<std::vector<CellResult>> SweepK(const ExperimentConfig& config);

}  // namespace pmlhist

#endif  // PMLHIST_EXPERIMENTS_H_
