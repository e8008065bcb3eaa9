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

#ifndef HGBT_PARAM_H_
#define HGBT_PARAM_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace hgbt {

enum class GrowPolicy { kDepthWise, kLossGuide };

GrowPolicy ParseGrowPolicy(std::string_view name);
std::string_view GrowPolicyName(GrowPolicy policy);

/*! \brief tree construction parameters */
struct TrainParams {
  /*! \brief a node at this depth is never split; 0 grows a single leaf */
  std::uint32_t max_depth{6};
  /*! \brief leaf budget for lossguide growth, 0 = unlimited */
  std::uint32_t max_leaves{0};
  double learning_rate{0.3};
  double reg_lambda{1.0};
  double gamma{0.0};
  double min_child_weight{1.0};
  GrowPolicy grow_policy{GrowPolicy::kDepthWise};

  /*! \brief throws ValidationError on out-of-range values */
  void Validate() const;

  friend bool operator==(TrainParams const&, TrainParams const&) = default;
};

}  // namespace hgbt

#endif  // HGBT_PARAM_H_
