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

#include "pmlhist/results_csv.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>
#include <tuple>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"

namespace pmlhist {
namespace {

constexpr size_t kColumns = 10;

std::string Real(double v) { return absl::StrFormat("%.17g", v); }

absl::Status RowError(size_t line, absl::string_view message) {
  return absl::InvalidArgumentError(
      absl::StrCat("results line ", line, ": ", message));
}

}  // namespace

std::string FormatResultsCsv(std::span<const CellResult> results) {
  std::vector<const CellResult*> rows;
  rows.reserve(results.size());
  for (const CellResult& r : results) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const CellResult* a, const CellResult* b) {
                     return std::tie(a->epsilon, a->k, a->alpha,
                                     a->mechanism) <
                            std::tie(b->epsilon, b->k, b->alpha,
                                     b->mechanism);
                   });

  std::string out = absl::StrCat(kResultsCsvHeader, "\n");
  for (const CellResult* r : rows) {
    absl::StrAppend(
        &out, Real(r->epsilon), ",", r->k, ",", Real(r->alpha), ",",
        MechanismName(r->mechanism), ",",
        r->noise_scale.has_value() ? Real(*r->noise_scale) : "none", ",",
        Real(r->mean_tvd), ",", Real(r->stderr_tvd), ",", r->degenerate_count,
        ",", r->reps, ",", r->seed, "\n");
  }
  return out;
}

absl::StatusOr<std::vector<CellResult>> ParseResultsCsv(
    absl::string_view text) {
  std::vector<absl::string_view> lines = absl::StrSplit(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != kResultsCsvHeader) {
    return absl::InvalidArgumentError("results CSV header mismatch");
  }
  std::vector<CellResult> results;
  for (size_t i = 1; i < lines.size(); ++i) {
    const size_t line = i + 1;
    std::vector<absl::string_view> f = absl::StrSplit(lines[i], ',');
    if (f.size() != kColumns) {
      return RowError(line, absl::StrCat("expected ", kColumns,
                                         " fields, got ", f.size()));
    }
    CellResult r;
    auto mechanism = ParseMechanism(f[3]);
    if (!mechanism.ok()) return RowError(line, mechanism.status().message());
    r.mechanism = *mechanism;
    double scale;
    if (f[4] == "none") {
      r.noise_scale.reset();
    } else if (absl::SimpleAtod(f[4], &scale)) {
      r.noise_scale = scale;
    } else {
      return RowError(line, "bad noise_scale");
    }
    if (!absl::SimpleAtod(f[0], &r.epsilon) ||
        !absl::SimpleAtoi(f[1], &r.k) || !absl::SimpleAtod(f[2], &r.alpha) ||
        !absl::SimpleAtod(f[5], &r.mean_tvd) ||
        !absl::SimpleAtod(f[6], &r.stderr_tvd) ||
        !absl::SimpleAtoi(f[7], &r.degenerate_count) ||
        !absl::SimpleAtoi(f[8], &r.reps) || !absl::SimpleAtoi(f[9], &r.seed)) {
      return RowError(line, "malformed numeric field");
    }
    results.push_back(r);
  }
  return results;
}

absl::Status WriteResultsCsv(std::span<const CellResult> results,
                             const std::string& path) {
  if (results.empty()) {
    return absl::InvalidArgumentError("no results to write");
  }
  const std::string tmp = path + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      return absl::UnavailableError(absl::StrCat("cannot open ", tmp));
    }
    out << FormatResultsCsv(results);
    out.flush();
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      return absl::UnavailableError(absl::StrCat("error writing ", tmp));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    return absl::UnavailableError(
        absl::StrCat("cannot move results into ", path, ": ", ec.message()));
  }
  return absl::OkStatus();
}

}  // namespace pmlhist
