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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "testing/status_matchers.h"

namespace pmlhist {
namespace {

TEST(ParseDatasetTest, PlainLabelsInferK) {
  ASSERT_OK_AND_ASSIGN(Dataset d, ParseDataset("1\n2\n1\n3\n"));
  EXPECT_EQ(d.k(), 3);
  EXPECT_EQ(d.labels(), (std::vector<int>{1, 2, 1, 3}));
}

TEST(ParseDatasetTest, HeaderDeclaresUnobservedClasses) {
  ASSERT_OK_AND_ASSIGN(Dataset d, ParseDataset("k=5\n1\n2\n"));
  EXPECT_EQ(d.k(), 5);
  EXPECT_EQ(ComputeHistogram(d).counts(),
            (std::vector<int64_t>{1, 1, 0, 0, 0}));
}

TEST(ParseDatasetTest, CsvWithLabelColumn) {
  ASSERT_OK_AND_ASSIGN(Dataset single, ParseDataset("label\n2\n1\n2\n"));
  EXPECT_EQ(single.labels(), (std::vector<int>{2, 1, 2}));
  ASSERT_OK_AND_ASSIGN(Dataset multi,
                       ParseDataset("id,label\r\na,1\r\nb,3\r\n\r\n"));
  EXPECT_EQ(multi.labels(), (std::vector<int>{1, 3}));
  EXPECT_EQ(multi.k(), 3);
}

TEST(ParseDatasetTest, ToleratesBlankLinesAndWhitespace) {
  ASSERT_OK_AND_ASSIGN(Dataset d, ParseDataset("\n 1 \n\n2\r\n"));
  EXPECT_EQ(d.labels(), (std::vector<int>{1, 2}));
}

TEST(ParseDatasetTest, Errors) {
  EXPECT_STATUS_CODE(ParseDataset(""), absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(ParseDataset("\n\n"), absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(ParseDataset("k=3\n1\n4\n"),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(ParseDataset("1\n0\n"),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(ParseDataset("1\nx\n"),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(ParseDataset("1\n1\n"),
                     absl::StatusCode::kInvalidArgument);  // k would be 1
  EXPECT_STATUS_CODE(ParseDataset("k=abc\n1\n"),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(ParseDataset("name\nfoo\n"),
                     absl::StatusCode::kInvalidArgument);
  EXPECT_STATUS_CODE(ParseDataset("id,label\na\n"),
                     absl::StatusCode::kInvalidArgument);
}

TEST(ParseDatasetTest, ErrorNamesLine) {
  auto result = ParseDataset("k=3\n1\n2\n9\n");
  ASSERT_FALSE(result.ok());
  EXPECT_NE(result.status().message().find("line 4"),
            absl::string_view::npos);
}

TEST(ReadDatasetFileTest, ReadsFileAndReportsMissing) {
  const auto path =
      std::filesystem::temp_directory_path() / "pmlhist_dataset_io_test.txt";
  {
    std::ofstream out(path);
    out << "1\n2\n1\n3\n";
  }
  ASSERT_OK_AND_ASSIGN(Dataset d, ReadDatasetFile(path.string()));
  EXPECT_EQ(d.n(), 4);
  std::filesystem::remove(path);
  EXPECT_STATUS_CODE(ReadDatasetFile(path.string()),
                     absl::StatusCode::kNotFound);
}

}  // namespace
}  // namespace pmlhist
