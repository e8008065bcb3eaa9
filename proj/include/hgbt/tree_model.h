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
 * \file tree_model.h
 * \brief regression tree, tree ensemble and the predictor
 */
#ifndef HGBT_TREE_MODEL_H_
#define HGBT_TREE_MODEL_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgbt/base.h"
#include "hgbt/data.h"
#include "hgbt/param.h"
#include "hgbt/quantile.h"

namespace hgbt {

class ThreadPool;

/*! \brief dense view of one row: NaN for missing */
class FeatureVector {
 public:
  explicit FeatureVector(std::size_t n_features)
      : values_(n_features, std::numeric_limits<float>::quiet_NaN()) {}

  /*! \brief load a sparse row; indices beyond the vector size are ignored (missing) */
  void Fill(std::span<Entry const> row) {
    for (auto const& e : row) {
      if (e.index < values_.size()) values_[e.index] = e.fvalue;
    }
  }
  void Drop(std::span<Entry const> row) {
    for (auto const& e : row) {
      if (e.index < values_.size()) values_[e.index] = std::numeric_limits<float>::quiet_NaN();
    }
  }
  std::size_t Size() const { return values_.size(); }
  bool IsMissing(std::size_t f) const { return f >= values_.size() || std::isnan(values_[f]); }
  float Value(std::size_t f) const { return values_[f]; }

 private:
  std::vector<float> values_;
};

class RegTree {
 public:
  struct Node {
    bst_node_t left{-1};
    bst_node_t right{-1};
    bst_feature_t feature{0};
    float threshold{0.0f};
    bool default_left{false};
    /*! \brief leaf output already scaled by the learning rate; unused on split nodes */
    double weight{0.0};

    bool IsLeaf() const { return left == -1; }
    friend bool operator==(Node const&, Node const&) = default;
  };

  /*! \brief a single root leaf of weight 0 */
  RegTree() : nodes_(1) {}

  /*!
   * \brief turn leaf nid into a split node and append two leaf children.
   * \return id of the left child; the right child is left + 1
   */
  bst_node_t ExpandNode(bst_node_t nid, bst_feature_t feature, float threshold, bool default_left,
                        double left_weight, double right_weight);
  void SetLeaf(bst_node_t nid, double weight);

  Node const& operator[](bst_node_t nid) const { return nodes_[static_cast<std::size_t>(nid)]; }
  std::span<Node const> Nodes() const { return nodes_; }
  std::size_t NumNodes() const { return nodes_.size(); }
  std::size_t NumLeaves() const;
  std::uint32_t MaxDepth() const;

  /*! \brief leaf reached by the row: go left iff value <= threshold, missing follows default */
  bst_node_t GetLeafIndex(FeatureVector const& feat) const {
    bst_node_t nid = 0;
    while (!nodes_[nid].IsLeaf()) {
      Node const& n = nodes_[nid];
      bool go_left = feat.IsMissing(n.feature) ? n.default_left : feat.Value(n.feature) <= n.threshold;
      nid = go_left ? n.left : n.right;
    }
    return nid;
  }

  /*! \brief construct from raw nodes; throws SchemaError on dangling or cyclic links */
  static RegTree FromNodes(std::vector<Node> nodes);

  friend bool operator==(RegTree const&, RegTree const&) = default;

 private:
  std::vector<Node> nodes_;
};

/*! \brief an additive tree ensemble */
struct Model {
  static constexpr int kFormatVersion = 1;

  std::vector<RegTree> trees;
  double base_margin{0.0};
  std::string objective{"reg:squarederror"};
  CutMatrix cuts;
  TrainParams params;
  std::uint32_t max_bins{kDefaultMaxBins};
  std::uint32_t n_rounds{0};

  std::size_t NumFeatures() const { return cuts.NumFeatures(); }
  friend bool operator==(Model const&, Model const&) = default;
};

/*! \brief base_margin plus the leaf weights of every tree, added in tree order */
double PredictRow(Model const& model, FeatureVector const& feat,
                  std::optional<std::size_t> tree_limit = std::nullopt);

/*! \brief margins for every row; tree_limit keeps only the first k trees */
std::vector<double> Predict(Model const& model, DataMatrix const& data,
                            std::optional<std::size_t> tree_limit = std::nullopt,
                            ThreadPool* pool = nullptr);

/*! \brief leaf index of every (row, tree) pair, row-major [row * n_trees + tree] */
std::vector<bst_node_t> PredictLeaf(Model const& model, DataMatrix const& data,
                                    ThreadPool* pool = nullptr);

}  // namespace hgbt

#endif  // HGBT_TREE_MODEL_H_
