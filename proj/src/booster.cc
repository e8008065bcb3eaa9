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

#include "hgbt/booster.h"

#include <algorithm>
#include <chrono>
#include <memory>

#include "hgbt/objective.h"
#include "hgbt/quantile.h"
#include "hgbt/threading.h"

namespace hgbt {

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void BoosterConfig::Validate() const {
  tree.Validate();
  if (n_rounds < 1) throw ValidationError("n_rounds must be at least 1");
  if (n_workers < 1) throw ValidationError("worker count must be at least 1");
  if (max_bins < 2) throw ValidationError("max_bins must be at least 2");
  if (max_bins >= (1u << 31)) throw ValidationError("max_bins too large");
  if (eval_period < 1) throw ValidationError("eval_period must be at least 1");
  Objective::Create(objective);
  if (!metric.empty()) ParseMetric(metric);
}

void UpdateMargins(std::span<double> margins, RegTree const& tree,
                   std::span<bst_node_t const> positions) {
  if (margins.size() != positions.size()) {
    throw ContractError("margins and positions must have the same length");
  }
  auto const nodes = tree.Nodes();
  for (std::size_t i = 0; i < margins.size(); ++i) {
    margins[i] += nodes[static_cast<std::size_t>(positions[i])].weight;
  }
}

TrainResult Train(BoosterConfig const& config, DataMatrix const& dtrain, DataMatrix const* dvalid,
                  RoundCallback const& on_round) {
  auto const wall_start = Clock::now();
  config.Validate();
  if (dtrain.NumRows() == 0) throw ValidationError("training data has no rows");
  auto const objective = Objective::Create(config.objective);
  objective->ValidateLabels(dtrain.Labels());
  Metric const metric =
      ParseMetric(config.metric.empty() ? objective->DefaultMetric() : config.metric);
  if (metric != Metric::kRmse) {
    // accuracy / logloss need binary labels on every evaluated set
    EvalMetric(std::vector<double>(dtrain.NumRows(), 0.0), dtrain.Labels(), metric);
  }
  if (dvalid != nullptr) {
    if (dvalid->NumRows() == 0) throw ValidationError("validation data has no rows");
    objective->ValidateLabels(dvalid->Labels());
  }

  std::size_t const n_threads =
      config.n_threads != 0 ? config.n_threads
                            : std::min<std::size_t>(config.n_workers, DefaultThreads());
  ThreadPool pool(n_threads);

  TrainResult result;
  TrainReport& report = result.report;
  report.metric = std::string(MetricName(metric));
  Model& model = result.model;
  model.objective = std::string(objective->Name());
  model.params = config.tree;
  model.max_bins = config.max_bins;

  auto start = Clock::now();
  auto cuts = std::make_shared<CutMatrix const>(BuildCuts(dtrain, config.max_bins, &pool));
  QuantizedMatrix const qmat = Quantize(dtrain, cuts);
  model.cuts = *cuts;
  report.times.quantize += SecondsSince(start);

  WorkerSet workers(dtrain.NumRows(), config.n_workers);
  model.base_margin = objective->BaseMargin(dtrain.Labels());
  std::vector<double> margins(dtrain.NumRows(), model.base_margin);
  std::vector<GradientPair> gpair(dtrain.NumRows());

  for (std::uint32_t round = 1; round <= config.n_rounds; ++round) {
    start = Clock::now();
    objective->GetGradient(margins, dtrain.Labels(), gpair, &pool);
    std::vector<GradientSum> const gsum = ToGradientSums(gpair, &pool);
    report.times.gradient += SecondsSince(start);

    TreeStageTimes tree_times;
    model.trees.push_back(GrowTree(workers, qmat, gsum, config.tree, &pool, &tree_times));
    report.times.histogram += tree_times.histogram;
    report.times.evaluate += tree_times.evaluate;
    model.n_rounds = round;

    start = Clock::now();
    UpdateMargins(margins, model.trees.back(), workers.GlobalPositions());
    std::optional<double> valid_metric;
    bool const record = round % config.eval_period == 0 || round == config.n_rounds;
    if (record && dvalid != nullptr) {
      auto const valid_margins = Predict(model, *dvalid, std::nullopt, &pool);
      valid_metric = EvalMetric(valid_margins, dvalid->Labels(), metric);
    }
    report.times.predict += SecondsSince(start);

    if (record) {
      report.evals.push_back({round, EvalMetric(margins, dtrain.Labels(), metric), valid_metric});
    }
    if (on_round) on_round(round, margins, workers);
  }
  report.wall_seconds = SecondsSince(wall_start);
  return result;
}

}  // namespace hgbt
