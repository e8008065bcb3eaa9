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
 * \file quantile.h
 * \brief per-feature quantile cut points and value -> bin mapping
 */
#ifndef HGBT_QUANTILE_H_
#define HGBT_QUANTILE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hgbt/base.h"
#include "hgbt/compressed.h"
#include "hgbt/data.h"

namespace hgbt {

class ThreadPool;

constexpr std::uint32_t kDefaultMaxBins = 255;

/*!
 * \brief cut values of every feature, flattened.
 *
 * Bin i of feature f holds values v with cuts[f][i-1] < v <= cuts[f][i].
 * The global index of local bin i is Ptrs()[f] + i.
 */
class CutMatrix {
 public:
  CutMatrix() = default;
  /*! \brief validates strict monotonicity and the per-feature bin cap */
  CutMatrix(std::vector<std::vector<float>> const& per_feature, std::uint32_t max_bins);

  std::size_t NumFeatures() const { return ptrs_.size() - 1; }
  std::uint32_t MaxBins() const { return max_bins_; }
  std::size_t TotalBins() const { return ptrs_.back(); }
  std::span<std::uint32_t const> Ptrs() const { return ptrs_; }
  std::span<float const> Values() const { return values_; }
  std::span<float const> FeatureCuts(std::size_t f) const {
    return {values_.data() + ptrs_[f], values_.data() + ptrs_[f + 1]};
  }

  friend bool operator==(CutMatrix const&, CutMatrix const&) = default;

 private:
  std::vector<float> values_;
  std::vector<std::uint32_t> ptrs_{0};
  std::uint32_t max_bins_{kDefaultMaxBins};
};

/*!
 * \brief exact quantile cuts.
 *
 * For each feature the present values are sorted. When there are at most
 * max_bins distinct values every distinct value is a cut. Otherwise cut j
 * (0 <= j < max_bins) is the sorted value at position floor((j+1)*n/max_bins)-1,
 * and duplicates are removed. The last cut is always the feature maximum.
 * Features with no present value get no cuts.
 */
CutMatrix BuildCuts(DataMatrix const& data, std::uint32_t max_bins = kDefaultMaxBins,
                    ThreadPool* pool = nullptr);

/*! \brief smallest i with value <= cuts[i], clamped to the last bin; nullopt for empty cuts */
std::optional<bst_bin_t> BinOf(float value, std::span<float const> cuts);

/*! \brief map every cell to its local bin, missing cells to the sentinel (= max_bins) */
QuantizedMatrix Quantize(DataMatrix const& data, std::shared_ptr<CutMatrix const> cuts);

}  // namespace hgbt

#endif  // HGBT_QUANTILE_H_
