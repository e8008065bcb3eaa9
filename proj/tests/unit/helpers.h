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

#ifndef HGBT_TESTS_UNIT_HELPERS_H_
#define HGBT_TESTS_UNIT_HELPERS_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <unistd.h>
#include <string>
#include <vector>

#include "hgbt/data.h"

namespace hgbt::test {

/*! \brief temporary file removed on scope exit */
class TempFile {
 public:
  explicit TempFile(std::string const& suffix = ".txt") {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("hgbt_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + suffix))
                .string();
  }
  TempFile(std::string const& contents, std::string const& suffix) : TempFile(suffix) {
    Write(contents);
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(TempFile const&) = delete;
  TempFile& operator=(TempFile const&) = delete;

  void Write(std::string const& contents) const {
    std::ofstream fo(path_, std::ios::binary);
    fo << contents;
  }
  std::string Read() const {
    std::ifstream fi(path_, std::ios::binary);
    return {std::istreambuf_iterator<char>(fi), std::istreambuf_iterator<char>()};
  }
  std::string const& Path() const { return path_; }

 private:
  std::string path_;
};

/*!
 * \brief random matrix; values drawn from a grid of `levels` values (ties on purpose)
 *  or continuous when levels == 0; each cell missing with probability missing_rate
 */
inline DataMatrix RandomMatrix(std::size_t n_rows, std::size_t n_features, std::uint64_t seed,
                               double missing_rate = 0.0, int levels = 0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  DataMatrix out;
  std::vector<Entry> row;
  for (std::size_t i = 0; i < n_rows; ++i) {
    row.clear();
    for (std::size_t f = 0; f < n_features; ++f) {
      if (unif(rng) < missing_rate) continue;
      float v = levels > 0 ? static_cast<float>(static_cast<int>(unif(rng) * levels))
                           : static_cast<float>(normal(rng));
      row.push_back({static_cast<bst_feature_t>(f), v});
    }
    out.PushRow(row, normal(rng));
  }
  out.SetNumFeatures(n_features);
  return out;
}

/*!
 * \brief XOR of two binary features with cell (0, 1) listed twice.
 *  The duplicate breaks the symmetry that gives a perfectly balanced XOR zero gain at the root.
 */
inline DataMatrix XorFixture() {
  DataMatrix out;
  int const cells[5][2] = {{0, 0}, {0, 1}, {0, 1}, {1, 0}, {1, 1}};
  for (auto const& c : cells) {
    out.PushRow({{0, static_cast<float>(c[0])}, {1, static_cast<float>(c[1])}}, c[0] ^ c[1]);
  }
  return out;
}

inline std::string XorCsv() { return "0,0,0\n0,1,1\n0,1,1\n1,0,1\n1,1,0\n"; }

inline std::vector<GradientPair> RandomGradients(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  std::vector<GradientPair> out(n);
  for (auto& gp : out) gp = {normal(rng), unif(rng)};
  return out;
}

}  // namespace hgbt::test

#endif  // HGBT_TESTS_UNIT_HELPERS_H_
