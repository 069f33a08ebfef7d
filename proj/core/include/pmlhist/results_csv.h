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

// Sweep results as CSV:
//
//   epsilon,k,alpha,mechanism,noise_scale,mean_tvd,stderr_tvd,degenerate_count,reps,seed
//
// One row per cell, LF line endings, reals with 17 significant digits so
// that parsing recovers the exact doubles. noise_scale is `none` for PML
// cells that needed no noise.

#ifndef PMLHIST_RESULTS_CSV_H_
#define PMLHIST_RESULTS_CSV_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pmlhist/experiments.h"

namespace pmlhist {

inline constexpr absl::string_view kResultsCsvHeader =
    "epsilon,k,alpha,mechanism,noise_scale,mean_tvd,stderr_tvd,"
    "degenerate_count,reps,seed";

// Rows are sorted by (epsilon, k, alpha, mechanism).
std::string FormatResultsCsv(std::span<const CellResult> results);

absl::StatusOr<std::vector<CellResult>> ParseResultsCsv(absl::string_view text);

// Writes through a temporary file in the same directory and renames it into
// place, so `path` never holds a partial file. Fails with InvalidArgument on
// empty results and Unavailable on I/O errors.
absl::Status WriteResultsCsv(std::span<const CellResult> results,
                             const std::string& path);

}  // namespace pmlhist

#endif  // PMLHIST_RESULTS_CSV_H_
