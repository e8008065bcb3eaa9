// Copyright 2026 The hgbt Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "hgbt/data.h"
#include "unit/helpers.h"

using hgbt::ContractError;
using hgbt::CsvOptions;
using hgbt::DataMatrix;
using hgbt::Entry;
using hgbt::IndexBase;
using hgbt::IoError;
using hgbt::ParseError;
using hgbt::SyntheticKind;
using hgbt::test::TempFile;

TEST_SUITE("data_io") {
  TEST_CASE("csv with label column and empty cell") {
    TempFile f("1,2,0\n4,,1", ".csv");
    DataMatrix m = hgbt::LoadCsv(f.Path(), CsvOptions{2, false});
    CHECK(m.NumRows() == 2);
    CHECK(m.NumFeatures() == 2);
    REQUIRE(m.Row(0).size() == 2);
    CHECK(m.Row(0)[0] == Entry{0, 1.0f});
    CHECK(m.Row(0)[1] == Entry{1, 2.0f});
    REQUIRE(m.Row(1).size() == 1);
    CHECK(m.Row(1)[0] == Entry{0, 4.0f});
    CHECK(m.NumMissing() == 1);
    CHECK(m.Labels()[0] == 0.0);
    CHECK(m.Labels()[1] == 1.0);
  }

  TEST_CASE("csv nan tokens are missing and label column in the middle") {
    TempFile f("1.5,7,NaN\n nan , 3 ,2\n", ".csv");
    DataMatrix m = hgbt::LoadCsv(f.Path(), CsvOptions{1, false});
    CHECK(m.NumFeatures() == 2);
    CHECK(m.Labels()[0] == 7.0);
    CHECK(m.Labels()[1] == 3.0);
    REQUIRE(m.Row(0).size() == 1);
    CHECK(m.Row(0)[0] == Entry{0, 1.5f});
    REQUIRE(m.Row(1).size() == 1);
    CHECK(m.Row(1)[0] == Entry{1, 2.0f});
    CHECK(m.NumMissing() == 2);
  }

  TEST_CASE("csv empty file") {
    TempFile f("", ".csv");
    try {
      hgbt::LoadCsv(f.Path(), CsvOptions{});
      FAIL("expected ParseError");
    } catch (ParseError const& e) {
      CHECK(std::string(e.what()).find("no rows") != std::string::npos);
    }
  }

  TEST_CASE("csv header skipped") {
    TempFile f("a,b,y\n1,2,0\n3,4,1\n", ".csv");
    DataMatrix m = hgbt::LoadCsv(f.Path(), CsvOptions{2, true});
    CHECK(m.NumRows() == 2);
    DataMatrix no_header = hgbt::LoadCsv(TempFile("1,2,0\n3,4,1\n", ".csv").Path(), CsvOptions{2, false});
    CHECK(m == no_header);
  }

  TEST_CASE("csv column count mismatch names the line") {
    TempFile f("1,2,0\n4,5\n", ".csv");
    try {
      hgbt::LoadCsv(f.Path(), CsvOptions{2, false});
      FAIL("expected ParseError");
    } catch (ParseError const& e) {
      CHECK(e.Line() == 2);
      CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
  }

  TEST_CASE("csv non-numeric cell") {
    TempFile f("1,abc,0\n", ".csv");
    try {
      hgbt::LoadCsv(f.Path(), CsvOptions{2, false});
      FAIL("expected ParseError");
    } catch (ParseError const& e) {
      CHECK(e.Line() == 1);
      CHECK(e.Column() == 3);
    }
  }

  TEST_CASE("csv missing label is an error") {
    TempFile f("1,2,\n", ".csv");
    CHECK_THROWS_AS(hgbt::LoadCsv(f.Path(), CsvOptions{2, false}), ParseError);
  }

  TEST_CASE("unreadable file") {
    CHECK_THROWS_AS(hgbt::LoadCsv("/nonexistent/hgbt.csv", CsvOptions{}), IoError);
    CHECK_THROWS_AS(hgbt::LoadLibsvm("/nonexistent/hgbt.svm"), IoError);
  }

  TEST_CASE("libsvm one-based") {
    TempFile f("1 1:0.5 3:2.0\n", ".svm");
    DataMatrix m = hgbt::LoadLibsvm(f.Path());
    CHECK(m.NumRows() == 1);
    CHECK(m.NumFeatures() == 3);
    CHECK(m.Labels()[0] == 1.0);
    REQUIRE(m.Row(0).size() == 2);
    CHECK(m.Row(0)[0] == Entry{0, 0.5f});
    CHECK(m.Row(0)[1] == Entry{2, 2.0f});
  }

  TEST_CASE("libsvm zero-based") {
    TempFile f("1 0:0.5 2:2.0\n", ".svm");
    DataMatrix m = hgbt::LoadLibsvm(f.Path(), IndexBase::kZero);
    CHECK(m.NumFeatures() == 3);
    CHECK(m.Row(0)[0] == Entry{0, 0.5f});
  }

  TEST_CASE("libsvm label without features") {
    TempFile f("0\n", ".svm");
    DataMatrix m = hgbt::LoadLibsvm(f.Path());
    CHECK(m.NumRows() == 1);
    CHECK(m.Labels()[0] == 0.0);
    CHECK(m.Row(0).empty());
  }

  TEST_CASE("libsvm non-numeric value") {
    TempFile f("1 2:x\n", ".svm");
    try {
      hgbt::LoadLibsvm(f.Path());
      FAIL("expected ParseError");
    } catch (ParseError const& e) {
      CHECK(e.Line() == 1);
      CHECK(e.Column() == 5);
      CHECK(std::string(e.what()).find(":1:") != std::string::npos);
    }
  }

  TEST_CASE("libsvm index below base and duplicates") {
    CHECK_THROWS_AS(hgbt::LoadLibsvm(TempFile("1 0:1\n", ".svm").Path()), ParseError);
    CHECK_THROWS_AS(hgbt::LoadLibsvm(TempFile("1 1:1 1:2\n", ".svm").Path()), ParseError);
    CHECK_THROWS_AS(hgbt::LoadLibsvm(TempFile("1 1:inf\n", ".svm").Path()), ParseError);
  }

  TEST_CASE("libsvm nan value is missing") {
    DataMatrix m = hgbt::LoadLibsvm(TempFile("1 1:nan 2:3 # comment\n", ".svm").Path());
    REQUIRE(m.Row(0).size() == 1);
    CHECK(m.Row(0)[0] == Entry{1, 3.0f});
  }

  TEST_CASE("libsvm round trip preserves triples, labels and missing count") {
    DataMatrix src = hgbt::test::RandomMatrix(200, 7, 11, 0.3);
    // Labels with many significant digits must survive text formatting.
    std::vector<double> labels(src.NumRows());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = std::sqrt(2.0) * static_cast<double>(i) / 7.0;
    src.SetLabels(labels);
    for (auto base : {IndexBase::kOne, IndexBase::kZero}) {
      TempFile f(".svm");
      hgbt::SaveLibsvm(src, f.Path(), base);
      DataMatrix back = hgbt::LoadLibsvm(f.Path(), base);
      back.SetNumFeatures(src.NumFeatures());
      CHECK(back == src);
      CHECK(back.NumMissing() == src.NumMissing());
    }
  }

  TEST_CASE("missing values are never materialized as zero") {
    std::vector<float> dense{1.0f, std::numeric_limits<float>::quiet_NaN(), 0.0f, 2.0f};
    std::vector<double> labels{0.0, 1.0};
    DataMatrix m = DataMatrix::FromDense(dense, 2, 2, labels);
    CHECK(m.NumMissing() == 1);
    REQUIRE(m.Row(0).size() == 1);
    REQUIRE(m.Row(1).size() == 2);
    CHECK(m.Row(1)[0] == Entry{0, 0.0f});
  }

  TEST_CASE("row contract violations") {
    DataMatrix m;
    CHECK_THROWS_AS(m.PushRow({{0, 1.0f}, {0, 2.0f}}, 0.0), ContractError);
    CHECK_THROWS_AS(m.PushRow({{0, std::numeric_limits<float>::infinity()}}, 0.0), ContractError);
    CHECK_THROWS_AS(m.PushRow({{0, 1.0f}}, std::numeric_limits<double>::quiet_NaN()), ContractError);
    m.PushRow({{3, 1.0f}, {1, 2.0f}}, 1.0);
    CHECK(m.NumFeatures() == 4);
    CHECK(m.Row(0)[0].index == 1);
    CHECK_THROWS_AS(m.SetNumFeatures(2), ContractError);
  }

  TEST_CASE("synthetic generator is deterministic") {
    auto a = hgbt::MakeSynthetic(SyntheticKind::kRegression, 100, 10, 7);
    auto b = hgbt::MakeSynthetic(SyntheticKind::kRegression, 100, 10, 7);
    CHECK(a == b);
    auto c = hgbt::MakeSynthetic(SyntheticKind::kRegression, 100, 10, 8);
    CHECK_FALSE(a == c);
  }

  TEST_CASE("synthetic classification labels are binary") {
    auto m = hgbt::MakeSynthetic(SyntheticKind::kClassification, 1000, 5, 1);
    std::size_t ones = 0;
    for (double y : m.Labels()) {
      CHECK((y == 0.0 || y == 1.0));
      ones += y == 1.0;
    }
    CHECK(ones > 0);
    CHECK(ones < 1000);
  }

  TEST_CASE("synthetic minimal size") {
    auto m = hgbt::MakeSynthetic(SyntheticKind::kRegression, 1, 1, 0);
    CHECK(m.NumRows() == 1);
    CHECK(m.NumFeatures() == 1);
    CHECK(std::isfinite(m.Labels()[0]));
    CHECK_THROWS_AS(hgbt::MakeSynthetic(SyntheticKind::kRegression, 0, 1, 0), ContractError);
  }
}
