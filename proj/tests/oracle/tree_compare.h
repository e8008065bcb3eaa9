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

#ifndef HGBT_TESTS_ORACLE_TREE_COMPARE_H_
#define HGBT_TESTS_ORACLE_TREE_COMPARE_H_

#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "hgbt/tree_model.h"
#include "oracle/exact_greedy.h"

namespace hgbt::test {

/*! \brief empty string when equal, otherwise a description of the first difference */
inline std::string CompareWithOracle(RegTree const& tree, bst_node_t nid,
                                     oracle::Node const& ref, double tol,
                                     std::map<bst_node_t, double> const* gains = nullptr,
                                     std::string path = "root") {
  auto const& n = tree[nid];
  std::ostringstream os;
  if (n.IsLeaf() != ref.leaf) {
    os << path << ": leaf mismatch (tree " << n.IsLeaf() << ", oracle " << ref.leaf << ")";
    if (!ref.leaf) os << " oracle split f" << ref.feature << "<=" << ref.threshold << " gain " << ref.gain;
    if (!n.IsLeaf()) os << " tree split f" << n.feature << "<=" << n.threshold;
    return os.str();
  }
  if (n.IsLeaf()) {
    if (std::fabs(n.weight - ref.weight) > tol * std::max(1.0, std::fabs(ref.weight))) {
      os << path << ": weight " << n.weight << " vs " << ref.weight;
      return os.str();
    }
    return {};
  }
  if (static_cast<int>(n.feature) != ref.feature || n.threshold != ref.threshold ||
      n.default_left != ref.default_left) {
    os << path << ": split f" << n.feature << "<=" << n.threshold << " dl=" << n.default_left
       << " vs oracle f" << ref.feature << "<=" << ref.threshold << " dl=" << ref.default_left;
    return os.str();
  }
  if (gains != nullptr) {
    auto it = gains->find(nid);
    if (it == gains->end() || std::fabs(it->second - ref.gain) > tol) {
      os << path << ": gain " << (it == gains->end() ? NAN : it->second) << " vs " << ref.gain;
      return os.str();
    }
  }
  auto left = CompareWithOracle(tree, n.left, *ref.left, tol, gains, path + "L");
  if (!left.empty()) return left;
  return CompareWithOracle(tree, n.right, *ref.right, tol, gains, path + "R");
}

}  // namespace hgbt::test

#endif  // HGBT_TESTS_ORACLE_TREE_COMPARE_H_
