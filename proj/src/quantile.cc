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

#include "hgbt/quantile.h"

#include <algorithm>
#include <cmath>

#include "hgbt/threading.h"

namespace hgbt {

CutMatrix::CutMatrix(std::vector<std::vector<float>> const& per_feature, std::uint32_t max_bins)
    : max_bins_{max_bins} {
  if (max_bins < 2) throw ContractError("max_bins must be at least 2");
  for (std::size_t f = 0; f < per_feature.size(); ++f) {
    auto const& cuts = per_feature[f];
    if (cuts.size() > max_bins) {
      throw ContractError("feature " + std::to_string(f) + " has more cuts than max_bins");
    }
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (!std::isfinite(cuts[i]) || (i > 0 && !(cuts[i - 1] < cuts[i]))) {
        throw ContractError("cuts of feature " + std::to_string(f) +
                            " must be finite and strictly increasing");
      }
    }
    values_.insert(values_.end(), cuts.begin(), cuts.end());
    ptrs_.push_back(static_cast<std::uint32_t>(values_.size()));
  }
}

namespace {

std::vector<float> FeatureCutsFromSorted(std::vector<float> const& sorted, std::uint32_t max_bins) {
  std::vector<float> cuts;
  if (sorted.empty()) return cuts;
  std::vector<float> distinct;
  std::unique_copy(sorted.begin(), sorted.end(), std::back_inserter(distinct));
  if (distinct.size() <= max_bins) return distinct;

  std::size_t const n = sorted.size();
  cuts.reserve(max_bins);
  for (std::size_t j = 0; j < max_bins; ++j) {
    std::size_t pos = (j + 1) * n / max_bins - 1;
    float v = sorted[pos];
    if (cuts.empty() || cuts.back() < v) cuts.push_back(v);
  }
  return cuts;
}

}  // namespace

CutMatrix BuildCuts(DataMatrix const& data, std::uint32_t max_bins, ThreadPool* pool) {
  if (max_bins < 2) throw ContractError("max_bins must be at least 2");
  std::size_t const n_features = data.NumFeatures();

  // gather present values column-wise
  std::vector<std::size_t> counts(n_features, 0);
  for (std::size_t i = 0; i < data.NumRows(); ++i) {
    for (auto const& e : data.Row(i)) ++counts[e.index];
  }
  std::vector<std::vector<float>> columns(n_features);
  for (std::size_t f = 0; f < n_features; ++f) columns[f].reserve(counts[f]);
  for (std::size_t i = 0; i < data.NumRows(); ++i) {
    for (auto const& e : data.Row(i)) columns[e.index].push_back(e.fvalue);
  }

  std::vector<std::vector<float>> cuts(n_features);
  auto per_feature = [&](std::size_t f) {
    std::sort(columns[f].begin(), columns[f].end());
    cuts[f] = FeatureCutsFromSorted(columns[f], max_bins);
    std::vector<float>().swap(columns[f]);
  };
  if (pool != nullptr) {
    pool->ParallelFor(n_features, per_feature);
  } else {
    for (std::size_t f = 0; f < n_features; ++f) per_feature(f);
  }
  return CutMatrix(cuts, max_bins);
}

std::optional<bst_bin_t> BinOf(float value, std::span<float const> cuts) {
  if (cuts.empty()) return std::nullopt;
  auto it = std::lower_bound(cuts.begin(), cuts.end(), value);
  if (it == cuts.end()) return static_cast<bst_bin_t>(cuts.size() - 1);
  return static_cast<bst_bin_t>(it - cuts.begin());
}

QuantizedMatrix Quantize(DataMatrix const& data, std::shared_ptr<CutMatrix const> cuts) {
  if (!cuts) throw ContractError("quantize requires a cut matrix");
  if (cuts->NumFeatures() != data.NumFeatures()) {
    throw ContractError("data has " + std::to_string(data.NumFeatures()) +
                        " features but cuts were built for " +
                        std::to_string(cuts->NumFeatures()));
  }
  std::size_t const n_features = data.NumFeatures();
  std::uint32_t const sentinel = cuts->MaxBins();
  PackedBuffer buffer(data.NumRows() * n_features, SymbolBits(sentinel));
  for (std::size_t i = 0; i < data.NumRows(); ++i) {
    auto row = data.Row(i);
    auto it = row.begin();
    for (std::size_t f = 0; f < n_features; ++f) {
      std::uint32_t symbol = sentinel;
      if (it != row.end() && it->index == f) {
        if (auto bin = BinOf(it->fvalue, cuts->FeatureCuts(f))) symbol = *bin;
        ++it;
      }
      buffer.Set(i * n_features + f, symbol);
    }
  }
  std::size_t const n_rows = data.NumRows();
  return QuantizedMatrix(std::move(buffer), n_rows, n_features, sentinel, std::move(cuts));
}

}  // namespace hgbt
