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

/*!
 * \file data.h
 * \brief in-memory labelled dataset and its text loaders
 */
#ifndef HGBT_DATA_H_
#define HGBT_DATA_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hgbt/base.h"

namespace hgbt {

/*! \brief one present feature value of a row */
struct Entry {
  bst_feature_t index;
  float fvalue;
  friend bool operator==(Entry const&, Entry const&) = default;
};

/*!
 * \brief row-major sparse matrix with one real label per row.
 *
 * A feature that has no Entry in a row is missing. Missing is never the same
 * as zero. Entries of a row are kept sorted by feature index.
 */
class DataMatrix {
 public:
  DataMatrix() = default;

  /*!
   * \brief append a row. NaN values are dropped (missing). Throws ContractError on
   *  a duplicate feature index, an infinite value or a non-finite label.
   */
  void PushRow(std::vector<Entry> row, double label);

  /*! \brief dense row-major constructor, NaN marks missing */
  static DataMatrix FromDense(std::span<float const> values, std::size_t n_rows,
                              std::size_t n_features, std::span<double const> labels);

  std::size_t NumRows() const { return labels_.size(); }
  std::size_t NumFeatures() const { return n_features_; }
  std::size_t NumEntries() const { return entries_.size(); }
  /*! \brief number of (row, feature) cells without a value */
  std::size_t NumMissing() const { return NumRows() * NumFeatures() - NumEntries(); }

  /*! \brief widen the feature space; cannot shrink below the largest index seen */
  void SetNumFeatures(std::size_t n);

  std::span<Entry const> Row(std::size_t i) const {
    return {entries_.data() + row_ptr_[i], entries_.data() + row_ptr_[i + 1]};
  }
  std::span<double const> Labels() const { return labels_; }
  void SetLabels(std::vector<double> labels);

  friend bool operator==(DataMatrix const&, DataMatrix const&) = default;

 private:
  std::vector<std::size_t> row_ptr_{0};
  std::vector<Entry> entries_;
  std::vector<double> labels_;
  std::size_t n_features_{0};
};

struct CsvOptions {
  std::size_t label_column{0};
  bool header{false};
};

/*! \brief comma separated text; empty cells and "nan" tokens are missing */
DataMatrix LoadCsv(std::string const& path, CsvOptions const& opts);

enum class IndexBase { kZero = 0, kOne = 1 };

/*! \brief "label idx:val idx:val ..." per line */
DataMatrix LoadLibsvm(std::string const& path, IndexBase base = IndexBase::kOne);
void SaveLibsvm(DataMatrix const& data, std::string const& path, IndexBase base = IndexBase::kOne);

enum class SyntheticKind { kRegression, kClassification };

/*!
 * \brief deterministic synthetic dataset.
 *
 * Every feature is drawn uniformly from [-1, 1) with a 64-bit Mersenne Twister
 * seeded by `seed` (raw 53-bit draws, no std distribution, so the stream is the
 * same on every platform). The first m = min(n_features, 5) features are
 * informative with weights w_k = (-1)^k (1 + k/2). Let s = sum_k w_k x_k.
 *
 *  - regression:     y = s + e, with e uniform in [-0.1, 0.1)
 *  - classification: y = 1 if s > 0 else 0
 *
 * Draw order is row by row, features first, then the noise term.
 */
DataMatrix MakeSynthetic(SyntheticKind kind, std::size_t n_rows, std::size_t n_features,
                         std::uint64_t seed);

}  // namespace hgbt

#endif  // HGBT_DATA_H_
