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

#include "hgbt/objective.h"

#include <cmath>
#include <numeric>

#include "hgbt/threading.h"

namespace hgbt {

double Sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  double const e = std::exp(x);
  return e / (1.0 + e);
}

namespace {

constexpr std::size_t kRowGrain = 4096;

template <typename Fn>
void ForEachRow(std::size_t n, ThreadPool* pool, Fn&& fn) {
  if (pool == nullptr) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  pool->ParallelForBlocked(n, kRowGrain, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

void CheckSizes(std::span<double const> margins, std::span<double const> labels,
                std::span<GradientPair> out) {
  if (margins.size() != labels.size() || out.size() != labels.size()) {
    throw ContractError("margins, labels and gradients must have the same length");
  }
}

bool IsBinaryLabel(double y) { return y == 0.0 || y == 1.0; }

void CheckBinary(std::span<double const> labels, std::string_view who) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!IsBinaryLabel(labels[i])) {
      throw ValidationError(std::string(who) + " requires labels in {0, 1}; row " +
                            std::to_string(i) + " has label " + std::to_string(labels[i]));
    }
  }
}

/*! \brief log(1 + exp(x)) without overflow */
double Softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::fabs(x))); }

class SquaredError final : public Objective {
 public:
  std::string_view Name() const override { return "reg:squarederror"; }
  std::string_view DefaultMetric() const override { return "rmse"; }
  void ValidateLabels(std::span<double const> labels) const override {
    for (double y : labels) {
      if (!std::isfinite(y)) throw ValidationError("labels must be finite");
    }
  }
  double BaseMargin(std::span<double const> labels) const override {
    if (labels.empty()) return 0.0;
    return std::accumulate(labels.begin(), labels.end(), 0.0) / static_cast<double>(labels.size());
  }
  void GetGradient(std::span<double const> margins, std::span<double const> labels,
                   std::span<GradientPair> out, ThreadPool* pool) const override {
    SquaredErrorGradients(margins, labels, out, pool);
  }
  double Transform(double margin) const override { return margin; }
};

class Logistic final : public Objective {
 public:
  std::string_view Name() const override { return "binary:logistic"; }
  std::string_view DefaultMetric() const override { return "accuracy"; }
  void ValidateLabels(std::span<double const> labels) const override {
    CheckBinary(labels, "binary:logistic");
  }
  double BaseMargin(std::span<double const>) const override { return 0.0; }
  void GetGradient(std::span<double const> margins, std::span<double const> labels,
                   std::span<GradientPair> out, ThreadPool* pool) const override {
    LogisticGradients(margins, labels, out, pool);
  }
  double Transform(double margin) const override { return Sigmoid(margin); }
};

}  // namespace

void LogisticGradients(std::span<double const> margins, std::span<double const> labels,
                       std::span<GradientPair> out, ThreadPool* pool) {
  CheckSizes(margins, labels, out);
  ForEachRow(labels.size(), pool, [&](std::size_t i) {
    double const p = Sigmoid(margins[i]);
    out[i] = {p - labels[i], p * (1.0 - p)};
  });
}

void SquaredErrorGradients(std::span<double const> margins, std::span<double const> labels,
                           std::span<GradientPair> out, ThreadPool* pool) {
  CheckSizes(margins, labels, out);
  ForEachRow(labels.size(), pool,
             [&](std::size_t i) { out[i] = {margins[i] - labels[i], 1.0}; });
}

std::unique_ptr<Objective> Objective::Create(std::string_view name) {
  if (name == "reg:squarederror") return std::make_unique<SquaredError>();
  if (name == "binary:logistic") return std::make_unique<Logistic>();
  throw ValidationError("unknown objective '" + std::string(name) +
                        "' (expected reg:squarederror or binary:logistic)");
}

Metric ParseMetric(std::string_view name) {
  if (name == "rmse") return Metric::kRmse;
  if (name == "accuracy") return Metric::kAccuracy;
  if (name == "logloss") return Metric::kLogloss;
  throw ValidationError("unknown metric '" + std::string(name) +
                        "' (expected rmse, accuracy or logloss)");
}

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kRmse:
      return "rmse";
    case Metric::kAccuracy:
      return "accuracy";
    case Metric::kLogloss:
      return "logloss";
  }
  return "unknown";
}

double EvalMetric(std::span<double const> margins, std::span<double const> labels, Metric metric) {
  if (margins.size() != labels.size()) {
    throw ContractError("margins and labels must have the same length");
  }
  if (labels.empty()) throw ValidationError("cannot evaluate a metric on zero rows");
  auto const n = static_cast<double>(labels.size());
  double sum = 0.0;
  switch (metric) {
    case Metric::kRmse:
      for (std::size_t i = 0; i < labels.size(); ++i) {
        double const d = margins[i] - labels[i];
        sum += d * d;
      }
      return std::sqrt(sum / n);
    case Metric::kAccuracy:
      CheckBinary(labels, "accuracy");
      for (std::size_t i = 0; i < labels.size(); ++i) {
        // sigmoid(m) >= 0.5 exactly when m >= 0
        double const predicted = margins[i] >= 0.0 ? 1.0 : 0.0;
        sum += predicted == labels[i] ? 1.0 : 0.0;
      }
      return sum / n;
    case Metric::kLogloss:
      CheckBinary(labels, "logloss");
      for (std::size_t i = 0; i < labels.size(); ++i) {
        sum += Softplus(margins[i]) - labels[i] * margins[i];
      }
      return sum / n;
  }
  throw ContractError("unhandled metric");
}

}  // namespace hgbt
