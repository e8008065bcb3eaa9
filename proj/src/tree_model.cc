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

#include "hgbt/tree_model.h"

#include <algorithm>

#include "hgbt/threading.h"

namespace hgbt {

GrowPolicy ParseGrowPolicy(std::string_view name) {
  if (name == "depthwise") return GrowPolicy::kDepthWise;
  if (name == "lossguide") return GrowPolicy::kLossGuide;
  throw ValidationError("unknown grow policy '" + std::string(name) +
                        "' (expected depthwise or lossguide)");
}

std::string_view GrowPolicyName(GrowPolicy policy) {
  return policy == GrowPolicy::kDepthWise ? "depthwise" : "lossguide";
}

void TrainParams::Validate() const {
  auto fail = [](std::string const& msg) { throw ValidationError(msg); };
  if (!(std::isfinite(learning_rate) && learning_rate > 0.0)) fail("learning_rate must be > 0");
  if (!(std::isfinite(reg_lambda) && reg_lambda >= 0.0)) fail("reg_lambda must be >= 0");
  if (!(std::isfinite(gamma) && gamma >= 0.0)) fail("gamma must be >= 0");
  if (!(std::isfinite(min_child_weight) && min_child_weight >= 0.0)) {
    fail("min_child_weight must be >= 0");
  }
  if (max_depth > 62) fail("max_depth must be <= 62");
}

bst_node_t RegTree::ExpandNode(bst_node_t nid, bst_feature_t feature, float threshold,
                               bool default_left, double left_weight, double right_weight) {
  if (nid < 0 || static_cast<std::size_t>(nid) >= nodes_.size() || !nodes_[nid].IsLeaf()) {
    throw ContractError("can only expand an existing leaf");
  }
  auto const left = static_cast<bst_node_t>(nodes_.size());
  Node& n = nodes_[nid];
  n.left = left;
  n.right = left + 1;
  n.feature = feature;
  n.threshold = threshold;
  n.default_left = default_left;
  n.weight = 0.0;
  Node leaf;
  leaf.weight = left_weight;
  nodes_.push_back(leaf);
  leaf.weight = right_weight;
  nodes_.push_back(leaf);
  return left;
}

void RegTree::SetLeaf(bst_node_t nid, double weight) {
  if (nid < 0 || static_cast<std::size_t>(nid) >= nodes_.size() || !nodes_[nid].IsLeaf()) {
    throw ContractError("SetLeaf on a non-leaf node");
  }
  nodes_[nid].weight = weight;
}

std::size_t RegTree::NumLeaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](Node const& n) { return n.IsLeaf(); }));
}

std::uint32_t RegTree::MaxDepth() const {
  std::vector<std::uint32_t> depth(nodes_.size(), 0);
  std::uint32_t out = 0;
  // children always have larger ids than their parent
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    out = std::max(out, depth[i]);
    if (!nodes_[i].IsLeaf()) {
      depth[nodes_[i].left] = depth[i] + 1;
      depth[nodes_[i].right] = depth[i] + 1;
    }
  }
  return out;
}

RegTree RegTree::FromNodes(std::vector<Node> nodes) {
  if (nodes.empty()) throw SchemaError("a tree needs at least one node");
  std::vector<bool> has_parent(nodes.size(), false);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto const& n = nodes[i];
    if (n.IsLeaf()) {
      if (n.right != -1) throw SchemaError("leaf node " + std::to_string(i) + " has a right child");
      if (!std::isfinite(n.weight)) throw SchemaError("leaf weight must be finite");
      continue;
    }
    for (bst_node_t c : {n.left, n.right}) {
      if (c <= static_cast<bst_node_t>(i) || static_cast<std::size_t>(c) >= nodes.size()) {
        throw SchemaError("node " + std::to_string(i) + " has invalid child " + std::to_string(c));
      }
      if (has_parent[c]) throw SchemaError("node " + std::to_string(c) + " has two parents");
      has_parent[c] = true;
    }
    if (n.left == n.right) throw SchemaError("split node with identical children");
    if (!std::isfinite(n.threshold)) throw SchemaError("split threshold must be finite");
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!has_parent[i]) throw SchemaError("node " + std::to_string(i) + " is unreachable");
  }
  RegTree tree;
  tree.nodes_ = std::move(nodes);
  return tree;
}

double PredictRow(Model const& model, FeatureVector const& feat,
                  std::optional<std::size_t> tree_limit) {
  std::size_t const n_trees = std::min(model.trees.size(), tree_limit.value_or(model.trees.size()));
  double margin = model.base_margin;
  for (std::size_t t = 0; t < n_trees; ++t) {
    auto const& tree = model.trees[t];
    margin += tree[tree.GetLeafIndex(feat)].weight;
  }
  return margin;
}

namespace {

constexpr std::size_t kPredictGrain = 256;

template <typename Fn>
void ForEachRowBlock(std::size_t n, ThreadPool* pool, Fn&& fn) {
  if (pool == nullptr) {
    fn(0, n);
  } else {
    pool->ParallelForBlocked(n, kPredictGrain, fn);
  }
}

}  // namespace

std::vector<double> Predict(Model const& model, DataMatrix const& data,
                            std::optional<std::size_t> tree_limit, ThreadPool* pool) {
  std::vector<double> out(data.NumRows());
  ForEachRowBlock(data.NumRows(), pool, [&](std::size_t begin, std::size_t end) {
    FeatureVector feat(model.NumFeatures());
    for (std::size_t i = begin; i < end; ++i) {
      auto row = data.Row(i);
      feat.Fill(row);
      out[i] = PredictRow(model, feat, tree_limit);
      feat.Drop(row);
    }
  });
  return out;
}

std::vector<bst_node_t> PredictLeaf(Model const& model, DataMatrix const& data, ThreadPool* pool) {
  std::size_t const n_trees = model.trees.size();
  std::vector<bst_node_t> out(data.NumRows() * n_trees);
  ForEachRowBlock(data.NumRows(), pool, [&](std::size_t begin, std::size_t end) {
    FeatureVector feat(model.NumFeatures());
    for (std::size_t i = begin; i < end; ++i) {
      auto row = data.Row(i);
      feat.Fill(row);
      for (std::size_t t = 0; t < n_trees; ++t) {
        out[i * n_trees + t] = model.trees[t].GetLeafIndex(feat);
      }
      feat.Drop(row);
    }
  });
  return out;
}

}  // namespace hgbt
