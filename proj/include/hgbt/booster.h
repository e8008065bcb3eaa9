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
 * \file booster.h
 * \brief the boosting loop and model serialization
 */
#ifndef HGBT_BOOSTER_H_
#define HGBT_BOOSTER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgbt/data.h"
#include "hgbt/hist_tree.h"
#include "hgbt/param.h"
#include "hgbt/tree_model.h"

namespace hgbt {

struct BoosterConfig {
  TrainParams tree;
  std::uint32_t n_rounds{10};
  std::string objective{"reg:squarederror"};
  /*! \brief empty selects the objective's default metric */
  std::string metric;
  std::uint32_t max_bins{kDefaultMaxBins};
  /*! \brief logical workers (row shards) */
  std::uint32_t n_workers{1};
  /*! \brief OS threads; 0 = min(n_workers, hardware threads) */
  std::uint32_t n_threads{0};
  std::uint64_t seed{0};
  /*! \brief rounds between metric records; the last round is always recorded */
  std::uint32_t eval_period{1};

  void Validate() const;
};

struct StageTimes {
  double quantize{0.0};
  double histogram{0.0};
  double evaluate{0.0};
  double predict{0.0};
  double gradient{0.0};
  double Total() const { return quantize + histogram + evaluate + predict + gradient; }
};

struct EvalRecord {
  std::uint32_t round;
  double train;
  std::optional<double> valid;
};

struct TrainReport {
  std::string metric;
  std::vector<EvalRecord> evals;
  StageTimes times;
  double wall_seconds{0.0};
};

struct TrainResult {
  Model model;
  TrainReport report;
};

/*!
 * \brief called after every round with the 1-based round number, the cached training
 *  margins and the workers holding each training row's leaf in the newest tree
 */
using RoundCallback =
    std::function<void(std::uint32_t round, std::span<double const> margins, WorkerSet const&)>;

/*!
 * \brief train a boosted ensemble.
 *
 * Each round computes gradients from the cached training margins, grows one tree
 * and adds the new leaf weights to the cache. Validation margins go through the
 * full predictor at every reporting point.
 */
TrainResult Train(BoosterConfig const& config, DataMatrix const& dtrain,
                  DataMatrix const* dvalid = nullptr, RoundCallback const& on_round = {});

/*! \brief margins[i] += weight of leaf positions[i] */
void UpdateMargins(std::span<double> margins, RegTree const& tree,
                   std::span<bst_node_t const> positions);

/*! \brief versioned JSON text; doubles are written with round-trip precision */
std::string SerializeModel(Model const& model);
/*! \brief throws SchemaError on malformed text, wrong version or invalid trees */
Model ParseModel(std::string const& text);

void SaveModel(Model const& model, std::string const& path);
Model LoadModel(std::string const& path);

}  // namespace hgbt

#endif  // HGBT_BOOSTER_H_
