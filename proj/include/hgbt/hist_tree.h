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
 * \file hist_tree.h
 * \brief data-parallel histogram tree construction.
 *
 * Rows are split into contiguous shards, one per logical worker. For every
 * node that is expanded, each worker moves its rows into the two children and
 * builds partial gradient histograms for them; the partials are summed into a
 * single histogram and each child's best split is found by scanning it.
 */
#ifndef HGBT_HIST_TREE_H_
#define HGBT_HIST_TREE_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hgbt/base.h"
#include "hgbt/compressed.h"
#include "hgbt/gradient_sum.h"
#include "hgbt/param.h"
#include "hgbt/quantile.h"
#include "hgbt/tree_model.h"

namespace hgbt {

class ThreadPool;

/*! \brief gradient sums per global bin */
class Histogram {
 public:
  Histogram() = default;
  explicit Histogram(std::size_t n_bins) : bins_(n_bins) {}

  std::size_t Size() const { return bins_.size(); }
  GradientSum& operator[](std::size_t i) { return bins_[i]; }
  GradientSum const& operator[](std::size_t i) const { return bins_[i]; }
  std::span<GradientSum const> Bins() const { return bins_; }
  void Clear() { std::fill(bins_.begin(), bins_.end(), GradientSum{}); }

  friend bool operator==(Histogram const&, Histogram const&) = default;

 private:
  std::vector<GradientSum> bins_;
};

/*! \brief best split found for a node; feature < 0 means the node stays a leaf */
struct SplitInfo {
  std::int32_t feature{-1};
  bst_bin_t bin{0};
  float threshold{0.0f};
  double gain{0.0};
  bool default_left{false};
  GradientSum left_sum;
  GradientSum right_sum;

  bool IsValid() const { return feature >= 0; }
  /*!
   * \brief replace *this with `candidate` if it is better: larger gain, then lower
   *  feature, then lower bin, then missing-goes-right.
   */
  bool Update(SplitInfo const& candidate);
};

struct ExpandEntry {
  bst_node_t nid{0};
  std::uint32_t depth{0};
  GradientSum totals;
  SplitInfo split;
  /*! \brief insertion order; FIFO tie-break inside the priority queue */
  std::uint64_t timestamp{0};
};

/*! \brief rows owned by one logical worker and their current tree node */
class WorkerShard {
 public:
  WorkerShard(std::size_t begin, std::size_t end);

  std::size_t Begin() const { return begin_; }
  std::size_t End() const { return end_; }
  std::size_t Size() const { return end_ - begin_; }

  /*! \brief node of each local row (index = global row - Begin()) */
  std::span<bst_node_t const> Positions() const { return positions_; }
  /*! \brief global row ids currently in node nid */
  std::span<std::size_t const> NodeRows(bst_node_t nid) const;

  /*! \brief send every row back to the root */
  void Reset();
  /*! \brief move rows of `nid` into left/right; go_left(global_row) decides */
  template <typename Pred>
  void Partition(bst_node_t nid, bst_node_t left, bst_node_t right, Pred&& go_left);

 private:
  struct Range {
    std::size_t begin{0};
    std::size_t end{0};
  };
  void EnsureNode(bst_node_t nid);

  std::size_t begin_;
  std::size_t end_;
  std::vector<std::size_t> rows_;
  std::vector<std::size_t> scratch_;
  std::vector<Range> ranges_;
  std::vector<bst_node_t> positions_;
};

/*! \brief p workers over contiguous, nearly equal row shards */
class WorkerSet {
 public:
  WorkerSet(std::size_t n_rows, std::size_t n_workers);

  std::size_t NumWorkers() const { return shards_.size(); }
  std::size_t NumRows() const { return n_rows_; }
  WorkerShard& Shard(std::size_t w) { return shards_[w]; }
  WorkerShard const& Shard(std::size_t w) const { return shards_[w]; }
  void Reset();
  /*! \brief leaf of every global row, concatenated over shards */
  std::vector<bst_node_t> GlobalPositions() const;

 private:
  std::size_t n_rows_;
  std::vector<WorkerShard> shards_;
};

/*! \brief wall-clock seconds spent in each phase of tree construction */
struct TreeStageTimes {
  double histogram{0.0};
  double evaluate{0.0};
};

/*! \brief node totals summed per worker then reduced; root histogram and best split attached */
ExpandEntry InitRoot(WorkerSet& workers, QuantizedMatrix const& qmat,
                     std::span<GradientSum const> gpair, TrainParams const& param,
                     ThreadPool* pool = nullptr);

/*! \brief apply entry's split to the shard: symbol <= bin goes left, missing follows default */
void RepartitionInstances(ExpandEntry const& entry, bst_node_t left, bst_node_t right,
                          QuantizedMatrix const& qmat, WorkerShard& shard);

/*! \brief histogram of node nid over one shard; missing cells are not deposited */
void BuildPartialHistogram(bst_node_t nid, WorkerShard const& shard, QuantizedMatrix const& qmat,
                           std::span<GradientSum const> gpair, Histogram* out);

/*! \brief element-wise sum in ascending worker order; throws ContractError on size mismatch */
Histogram AllReduceHistograms(std::span<Histogram const> partials);

/*!
 * \brief best split of a node by prefix scan over each feature's bins.
 *
 * gain = 1/2 [G_L^2/(H_L+lambda) + G_R^2/(H_R+lambda) - G^2/(H+lambda)] - gamma.
 * The missing mass (node totals minus the feature's histogram sum) is tried on the
 * right (forward scan) and, when non-zero, on the left (backward scan). Both children
 * need hessian >= min_child_weight. Returns an invalid split when no gain is positive.
 */
SplitInfo EvaluateSplit(Histogram const& hist, GradientSum const& totals, CutMatrix const& cuts,
                        TrainParams const& param);

/*! \brief -G / (H + lambda) scaled by the learning rate */
double LeafWeight(GradientSum const& sum, TrainParams const& param);

/*! \brief entries in the order they were popped and applied */
struct GrowTrace {
  std::vector<ExpandEntry> expanded;
};

/*! \brief grow one tree; on return the WorkerSet holds each row's final leaf */
RegTree GrowTree(WorkerSet& workers, QuantizedMatrix const& qmat,
                 std::span<GradientSum const> gpair, TrainParams const& param,
                 ThreadPool* pool = nullptr, TreeStageTimes* times = nullptr,
                 GrowTrace* trace = nullptr);

/*! \brief round every gradient pair onto the exact accumulation grid */
std::vector<GradientSum> ToGradientSums(std::span<GradientPair const> gpair,
                                        ThreadPool* pool = nullptr);

template <typename Pred>
void WorkerShard::Partition(bst_node_t nid, bst_node_t left, bst_node_t right, Pred&& go_left) {
  EnsureNode(std::max(left, right));
  Range const r = ranges_[nid];
  // stable partition through scratch so rows keep ascending order inside each child
  std::size_t n_left = 0;
  std::size_t n_right = 0;
  for (std::size_t k = r.begin; k < r.end; ++k) {
    std::size_t const row = rows_[k];
    if (go_left(row)) {
      rows_[r.begin + n_left++] = row;
      positions_[row - begin_] = left;
    } else {
      scratch_[n_right++] = row;
      positions_[row - begin_] = right;
    }
  }
  std::copy_n(scratch_.begin(), n_right, rows_.begin() + r.begin + n_left);
  ranges_[left] = {r.begin, r.begin + n_left};
  ranges_[right] = {r.begin + n_left, r.end};
}

}  // namespace hgbt

#endif  // HGBT_HIST_TREE_H_
