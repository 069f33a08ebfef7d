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

#include "pmlhist/dataset_io.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace pmlhist {
namespace {

absl::Status LineError(size_t line_number, absl::string_view message) {
  return absl::InvalidArgumentError(
      absl::StrCat("line ", line_number, ": ", message));
}

}  // namespace

absl::StatusOr<Dataset> ParseDataset(absl::string_view text) {
  std::optional<int> declared_k;
  // Index of the `label` column when the input is CSV.
  std::optional<size_t> label_column;
  size_t column_count = 1;
  bool seen_first = false;
  std::vector<int> labels;

  size_t line_number = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_number;
    const absl::string_view line = absl::StripAsciiWhitespace(raw);
    if (line.empty()) continue;

    if (!seen_first) {
      seen_first = true;
      if (absl::StartsWith(line, "k=")) {
        int k;
        if (!absl::SimpleAtoi(line.substr(2), &k)) {
          return LineError(line_number, "malformed header, expected k=<int>");
        }
        declared_k = k;
        continue;
      }
      int probe;
      if (!absl::SimpleAtoi(line, &probe)) {
        std::vector<absl::string_view> names = absl::StrSplit(line, ',');
        for (size_t c = 0; c < names.size(); ++c) {
          if (absl::StripAsciiWhitespace(names[c]) == "label") label_column = c;
        }
        if (!label_column.has_value()) {
          return LineError(line_number,
                           "expected a label, a k=<int> header, or a CSV "
                           "header with a `label` column");
        }
        column_count = names.size();
        continue;
      }
    }

    absl::string_view field = line;
    if (label_column.has_value()) {
      std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
      if (fields.size() != column_count) {
        return LineError(line_number,
                         absl::StrCat("expected ", column_count,
                                      " columns, got ", fields.size()));
      }
      field = absl::StripAsciiWhitespace(fields[*label_column]);
    }
    int label;
    if (!absl::SimpleAtoi(field, &label)) {
      return LineError(line_number,
                       absl::StrCat("label '", field, "' is not an integer"));
    }
    if (label < 1 || (declared_k.has_value() && label > *declared_k)) {
      return LineError(
          line_number,
          absl::StrCat("label ", label, " outside [1, ",
                       declared_k.has_value() ? absl::StrCat(*declared_k)
                                              : std::string("k"),
                       "]"));
    }
    labels.push_back(label);
  }

  if (labels.empty()) {
    return absl::InvalidArgumentError("dataset contains no records");
  }
  const int k =
      declared_k.value_or(*std::max_element(labels.begin(), labels.end()));
  if (k < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dataset needs k >= 2 classes, got k=", k,
        "; add a k=<int> header if some classes are unobserved"));
  }
  return Dataset::Create(std::move(labels), k);
}

absl::StatusOr<Dataset> ReadDatasetFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open ", path));
  }
  std::ostringstream contents;
  contents << in.rdbuf();
  if (in.bad()) {
    return absl::DataLossError(absl::StrCat("error reading ", path));
  }
  auto dataset = ParseDataset(contents.str());
  if (!dataset.ok()) {
    return absl::Status(dataset.status().code(),
                        absl::StrCat(path, ": ", dataset.status().message()));
  }
  return dataset;
}

}  // namespace pmlhist
