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

#ifndef PMLHIST_DATASET_IO_H_
#define PMLHIST_DATASET_IO_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pmlhist/mechanism.h"

namespace pmlhist {

// Parses a labelled dataset. Two layouts are accepted:
//
//   Plain text: one 1-based class label per line, optionally preceded by a
//   `k=<int>` header line. Without the header, k is the largest label.
//
//   CSV: a header row naming a `label` column, then one row per record.
//
// Blank lines are ignored and CRLF line endings are accepted. Malformed
// lines and out-of-range labels fail with InvalidArgument naming the line.
absl::StatusOr<Dataset> ParseDataset(absl::string_view text);

// Reads and parses `path`. Fails with NotFound if the file cannot be opened.
absl::StatusOr<Dataset> ReadDatasetFile(const std::string& path);

}  // namespace pmlhist

#endif  // PMLHIST_DATASET_IO_H_
