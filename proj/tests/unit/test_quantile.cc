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

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "hgbt/compressed.h"
#include "hgbt/quantile.h"
#include "hgbt/threading.h"
#include "unit/helpers.h"

using hgbt::BinOf;
using hgbt::CutMatrix;
using hgbt::DataMatrix;

namespace {

DataMatrix Column(std::vector<float> const& values) {
  DataMatrix m;
  for (float v : values) m.PushRow({{0, v}}, 0.0);
  return m;
}

std::vector<float> CutsOf(std::vector<float> const& values, std::uint32_t max_bins) {
  CutMatrix cuts = hgbt::BuildCuts(Column(values), max_bins);
  auto c = cuts.FeatureCuts(0);
  return {c.begin(), c.end()};
}

}  // namespace

TEST_SUITE("quantizer") {
  TEST_CASE("distinct count within budget is lossless") {
    CHECK(CutsOf({4, 2, 3, 1}, 4) == std::vector<float>{1, 2, 3, 4});
    CHECK(CutsOf({5, 5, 5}, 8) == std::vector<float>{5});
  }

  TEST_CASE("rank rule on 1..8 with two bins") {
    std::vector<float> values{1, 2, 3, 4, 5, 6, 7, 8};
    auto cuts = CutsOf(values, 2);
    REQUIRE(cuts.size() == 2);
    // Brute force: population of each interval (cuts[b-1], cuts[b]].
    std::vector<int> population(cuts.size(), 0);
    for (float v : values) {
      for (std::size_t b = 0; b < cuts.size(); ++b) {
        if (v <= cuts[b] && (b == 0 || v > cuts[b - 1])) ++population[b];
      }
    }
    CHECK(population == std::vector<int>{4, 4});
    CHECK(cuts.back() == 8.0f);
  }

  TEST_CASE("rank rule matches an independent computation") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      std::uniform_int_distribution<int> len(1, 300);
      std::uniform_int_distribution<int> val(0, 60);
      std::vector<float> values(static_cast<std::size_t>(len(rng)));
      for (auto& v : values) v = static_cast<float>(val(rng)) * 0.25f;
      std::uint32_t k = 2 + static_cast<std::uint32_t>(trial % 16);
      std::vector<float> sorted = values;
      std::sort(sorted.begin(), sorted.end());
      std::set<float> distinct(sorted.begin(), sorted.end());
      std::vector<float> expected;
      if (distinct.size() <= k) {
        expected.assign(distinct.begin(), distinct.end());
      } else {
        std::size_t n = sorted.size();
        for (std::size_t j = 0; j < k; ++j) {
          float c = sorted[(j + 1) * n / k - 1];
          if (expected.empty() || expected.back() != c) expected.push_back(c);
        }
      }
      CHECK(CutsOf(values, k) == expected);
    }
  }

  TEST_CASE("cut matrix invariants") {
    DataMatrix m = hgbt::test::RandomMatrix(500, 6, 5, 0.2);
    m.SetNumFeatures(7);  // feature 6 has no present values
    hgbt::ThreadPool pool(3);
    CutMatrix cuts = hgbt::BuildCuts(m, 16, &pool);
    CHECK(cuts == hgbt::BuildCuts(m, 16));
    CHECK(cuts.NumFeatures() == 7);
    CHECK(cuts.Ptrs()[0] == 0);
    for (std::size_t f = 0; f < 7; ++f) {
      auto c = cuts.FeatureCuts(f);
      CHECK(cuts.Ptrs()[f + 1] - cuts.Ptrs()[f] == c.size());
      CHECK(std::adjacent_find(c.begin(), c.end(), std::greater_equal<float>()) == c.end());
      CHECK(c.size() <= 16);
      if (f == 6) {
        CHECK(c.empty());
        continue;
      }
      CHECK(c.size() >= 1);
      float max_v = -1e30f;
      for (std::size_t i = 0; i < m.NumRows(); ++i) {
        for (auto const& e : m.Row(i)) {
          if (e.index == f) max_v = std::max(max_v, e.fvalue);
        }
      }
      CHECK(c.back() >= max_v);
    }
    CHECK(cuts.TotalBins() == cuts.Ptrs().back());
  }

  TEST_CASE("build_cuts rejects tiny budgets") {
    CHECK_THROWS_AS(hgbt::BuildCuts(Column({1, 2}), 1), hgbt::ContractError);
  }

  TEST_CASE("bin_of examples") {
    std::vector<float> cuts{1, 2, 3, 4};
    CHECK(BinOf(2.0f, cuts) == 1u);
    CHECK(BinOf(2.5f, cuts) == 2u);
    CHECK(BinOf(99.0f, cuts) == 3u);
    CHECK(BinOf(-5.0f, cuts) == 0u);
    CHECK(BinOf(1.0f, cuts) == 0u);
    CHECK_FALSE(BinOf(1.0f, std::vector<float>{}).has_value());
  }

  TEST_CASE("bin_of monotone and bracketing") {
    std::mt19937 rng(9);
    std::normal_distribution<float> normal(0.0f, 2.0f);
    std::vector<float> cuts;
    for (int i = 0; i < 30; ++i) cuts.push_back(normal(rng));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<float> probes;
    for (int i = 0; i < 2000; ++i) probes.push_back(std::min(normal(rng), cuts.back()));
    std::sort(probes.begin(), probes.end());
    std::uint32_t prev = 0;
    for (float v : probes) {
      std::uint32_t b = *BinOf(v, cuts);
      CHECK(b >= prev);
      prev = b;
      CHECK(v <= cuts[b]);
      if (b > 0) CHECK(cuts[b - 1] < v);
    }
  }

  TEST_CASE("quantize single value and missing sentinel") {
    auto cuts = std::make_shared<CutMatrix const>(std::vector<std::vector<float>>{{1, 2, 3}, {5}}, 255);
    DataMatrix m;
    m.PushRow({{0, 2.0f}}, 0.0);
    m.SetNumFeatures(2);
    auto q = hgbt::Quantize(m, cuts);
    CHECK(q.Symbol(0, 0) == 1);
    CHECK(q.Symbol(0, 1) == 255);
    CHECK(q.IsMissing(q.Symbol(0, 1)));
    CHECK(q.Sentinel() == 255);
    CHECK(q.Buffer().Bits() == 8);
  }

  TEST_CASE("quantize brackets every present value") {
    DataMatrix m = hgbt::test::RandomMatrix(100, 5, 21, 0.1);
    auto cuts = std::make_shared<CutMatrix const>(hgbt::BuildCuts(m, 8));
    auto q = hgbt::Quantize(m, cuts);
    CHECK(q.NumRows() == 100);
    CHECK(q.Sentinel() == 8);
    CHECK(q.Buffer().Bits() == 4);
    for (std::size_t i = 0; i < m.NumRows(); ++i) {
      std::vector<bool> seen(5, false);
      for (auto const& e : m.Row(i)) {
        seen[e.index] = true;
        auto c = cuts->FeatureCuts(e.index);
        std::uint32_t s = q.Symbol(i, e.index);
        REQUIRE(s < c.size());
        CHECK(s == *BinOf(e.fvalue, c));
        CHECK(e.fvalue <= c[s]);
        if (s > 0) CHECK(c[s - 1] < e.fvalue);
      }
      for (std::size_t f = 0; f < 5; ++f) {
        if (!seen[f]) CHECK(q.Symbol(i, f) == q.Sentinel());
      }
    }
    CHECK(hgbt::Quantize(m, cuts).Buffer() == q.Buffer());
  }

  TEST_CASE("high max_bins is injective per feature") {
    DataMatrix m = hgbt::test::RandomMatrix(150, 3, 4, 0.0, 20);
    auto cuts = std::make_shared<CutMatrix const>(hgbt::BuildCuts(m, 255));
    auto q = hgbt::Quantize(m, cuts);
    for (std::size_t f = 0; f < 3; ++f) {
      std::map<std::uint32_t, float> inverse;
      for (std::size_t i = 0; i < m.NumRows(); ++i) {
        for (auto const& e : m.Row(i)) {
          if (e.index != f) continue;
          auto [it, inserted] = inverse.emplace(q.Symbol(i, f), e.fvalue);
          if (!inserted) CHECK(it->second == e.fvalue);
        }
      }
    }
  }

  TEST_CASE("quantize rejects mismatched feature counts") {
    DataMatrix m = hgbt::test::RandomMatrix(10, 3, 1);
    auto cuts = std::make_shared<CutMatrix const>(std::vector<std::vector<float>>{{1}}, 255);
    CHECK_THROWS_AS(hgbt::Quantize(m, cuts), hgbt::ContractError);
  }
}
