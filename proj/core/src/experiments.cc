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

#include "pmlhist/experiments.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "parallel.h"
#include "pmlhist/bounds.h"
#include "pmlhist/mechanism.h"
#include "pmlhist/random_stream.h"

namespace pmlhist {
namespace {

constexpr uint64_t kDatasetStream = 0;
constexpr uint64_t kNoiseStream = 1;

absl::Status ValidateCell(const Cell& cell) {
  if (!std::isfinite(cell.epsilon) || cell.epsilon <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be > 0, got ", cell.epsilon));
  }
  return AlphaFloor::Create(cell.alpha, cell.k).status();
}

// Calibrated scale, or nullopt when a PML cell needs no noise.
absl::StatusOr<std::optional<NoiseScale>> ScaleForCell(const Cell& cell) {
  auto target = PrivacyLevel::Create(cell.epsilon);
  if (!target.ok()) return target.status();
  if (cell.mechanism == Mechanism::kDp) {
    auto scale = CalibrateDp(*target);
    if (!scale.ok()) return scale.status();
    return std::optional<NoiseScale>(*scale);
  }
  auto alpha = AlphaFloor::Create(cell.alpha, cell.k);
  if (!alpha.ok()) return alpha.status();
  auto calibration = CalibratePml(*target, *alpha);
  if (!calibration.ok()) return calibration.status();
  if (const auto* result = std::get_if<CalibrationResult>(&*calibration)) {
    return std::optional<NoiseScale>(result->scale);
  }
  return std::optional<NoiseScale>();
}

auto SortKey(const CellResult& r) {
  return std::make_tuple(r.epsilon, r.k, r.alpha, r.mechanism);
}

absl::StatusOr<std::vector<CellResult>> RunCrossProduct(
    const ExperimentConfig& config) {
  std::vector<Cell> cells;
  for (double epsilon : config.epsilon_grid) {
    for (int k : config.k_grid) {
      for (double alpha : config.alpha_grid) {
        for (Mechanism mechanism : config.mechanisms) {
          cells.push_back({epsilon, k, alpha, mechanism});
        }
      }
    }
  }
  std::vector<CellResult> results;
  results.reserve(cells.size());
  for (const Cell& cell : cells) {
    auto result = RunCell(config, cell);
    if (!result.ok()) return result.status();
    results.push_back(*std::move(result));
  }
  std::stable_sort(results.begin(), results.end(),
                   [](const CellResult& a, const CellResult& b) {
                     return SortKey(a) < SortKey(b);
                   });
  return results;
}

}  // namespace

absl::string_view MechanismName(Mechanism mechanism) {
  return mechanism == Mechanism::kDp ? "dp" : "pml";
}

absl::StatusOr<Mechanism> ParseMechanism(absl::string_view name) {
  if (name == "dp") return Mechanism::kDp;
  if (name == "pml") return Mechanism::kPml;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mechanism '", name, "', expected dp or pml"));
}

ExperimentConfig DefaultEpsilonSweepConfig() {
  ExperimentConfig config;
  config.epsilon_grid = {0.1, 0.2, 0.5, 1.0, 2.0};
  config.k_grid = {5, 10};
  config.alpha_grid = {0.05, 0.1};
  return config;
}

ExperimentConfig DefaultKSweepConfig() {
  ExperimentConfig config;
  config.epsilon_grid = {0.2, 0.5};
  config.k_grid = {2, 5, 10, 20};
  config.alpha_grid = {0.05};
  return config;
}

absl::Status ValidateConfig(const ExperimentConfig& config) {
  if (config.n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("n must be >= 1, got ", config.n));
  }
  if (config.reps < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("reps must be >= 1, got ", config.reps));
  }
  if (config.epsilon_grid.empty() || config.k_grid.empty() ||
      config.alpha_grid.empty() || config.mechanisms.empty()) {
    return absl::InvalidArgumentError(
        "epsilon, k, alpha and mechanism grids must be nonempty");
  }
  for (double epsilon : config.epsilon_grid) {
    for (int k : config.k_grid) {
      for (double alpha : config.alpha_grid) {
        if (auto s = ValidateCell({epsilon, k, alpha, Mechanism::kDp});
            !s.ok()) {
          return s;
        }
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> RunCellRepetitions(
    const ExperimentConfig& config, const Cell& cell,
    int64_t* degenerate_count) {
  if (auto s = ValidateCell(cell); !s.ok()) return s;
  if (config.n < 1 || config.reps < 1) {
    return absl::InvalidArgumentError("n and reps must be >= 1");
  }
  auto scale = ScaleForCell(cell);
  if (!scale.ok()) return scale.status();

  const int k = cell.k;
  std::vector<double> tvd(config.reps);
  std::vector<char> degenerate(config.reps, 0);
  internal::ParallelFor(config.reps, config.threads, [&](int64_t rep) {
    const uint64_t r = static_cast<uint64_t>(rep);
    const uint64_t kk = static_cast<uint64_t>(k);
    RandomStream data_stream = RandomStream::At(
        config.seed, {kk, config.fixed_dataset ? 0 : r, kDatasetStream});
    RandomStream noise_stream =
        RandomStream::At(config.seed, {kk, r, kNoiseStream});

    // Arguments were validated above, so generation cannot fail.
    const Dataset dataset =
        *GenerateUniformDataset(config.n, k, data_stream);
    const Histogram histogram = ComputeHistogram(dataset);
    const std::vector<double> empirical = *Normalize(histogram.counts());

    std::vector<double> noise(k, 0.0);
    for (double& v : noise) {
      // Draw even when no noise is needed so the stream layout is fixed.
      const double u = noise_stream.NextOpenUniform() - 0.5;
      if (scale->has_value()) v = LaplaceFromUniform(u, **scale);
    }
    const PrivatizedHistogram out = *PrivatizeWithNoise(histogram, noise);
    const auto released = Normalize(out.sanitized.counts);
    if (!released.has_value()) {
      degenerate[rep] = 1;
      tvd[rep] = 1.0;
    } else {
      tvd[rep] = *TotalVariationDistance(*released, empirical);
    }
  });

  if (degenerate_count != nullptr) {
    *degenerate_count = std::count(degenerate.begin(), degenerate.end(), 1);
  }
  return tvd;
}

absl::StatusOr<CellResult> RunCell(const ExperimentConfig& config,
                                   const Cell& cell) {
  auto scale = ScaleForCell(cell);
  if (!scale.ok()) return scale.status();
  int64_t degenerate = 0;
  auto tvd = RunCellRepetitions(config, cell, &degenerate);
  if (!tvd.ok()) return tvd.status();

  // Sequential reduction in repetition order keeps the result bit-stable.
  double sum = 0;
  for (double v : *tvd) sum += v;
  const double reps = static_cast<double>(tvd->size());
  const double mean = sum / reps;
  double squares = 0;
  for (double v : *tvd) squares += (v - mean) * (v - mean);
  const double stderr_tvd =
      tvd->size() > 1 ? std::sqrt(squares / (reps - 1.0) / reps) : 0.0;

  CellResult result;
  result.epsilon = cell.epsilon;
  result.k = cell.k;
  result.alpha = cell.alpha;
  result.mechanism = cell.mechanism;
  if (scale->has_value()) result.noise_scale = (*scale)->value();
  result.mean_tvd = mean;
  result.stderr_tvd = stderr_tvd;
  result.degenerate_count = degenerate;
  result.reps = config.reps;
  result.seed = config.seed;
  return result;
}

absl::StatusOr<std::vector<CellResult>> SweepEpsilon(
    const ExperimentConfig& config) {
  if (auto s = ValidateConfig(config); !s.ok()) return s;
  return RunCrossProduct(config);
}

absl::StatusOr<std::vector<CellResult>> SweepK(
    const ExperimentConfig& config) {
  if (config.alpha_grid.size() != 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "k sweep needs exactly one alpha, got ", config.alpha_grid.size()));
  }
  if (auto s = ValidateConfig(config); !s.ok()) return s;
  return RunCrossProduct(config);
}

}  // namespace pmlhist
