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
 * \file objective.h
 * \brief loss gradients and evaluation metrics
 */
#ifndef HGBT_OBJECTIVE_H_
#define HGBT_OBJECTIVE_H_

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "hgbt/base.h"

namespace hgbt {

class ThreadPool;

/*! \brief logistic function, stable for any finite input */
double Sigmoid(double x);

/*! \brief g = sigmoid(m) - y, h = sigmoid(m) (1 - sigmoid(m)) */
void LogisticGradients(std::span<double const> margins, std::span<double const> labels,
                       std::span<GradientPair> out, ThreadPool* pool = nullptr);
/*! \brief g = m - y, h = 1; loss is (m - y)^2 / 2 */
void SquaredErrorGradients(std::span<double const> margins, std::span<double const> labels,
                           std::span<GradientPair> out, ThreadPool* pool = nullptr);

class Objective {
 public:
  virtual ~Objective() = default;
  virtual std::string_view Name() const = 0;
  virtual std::string_view DefaultMetric() const = 0;
  /*! \brief throws ValidationError for labels outside the objective's domain */
  virtual void ValidateLabels(std::span<double const> labels) const = 0;
  virtual double BaseMargin(std::span<double const> labels) const = 0;
  virtual void GetGradient(std::span<double const> margins, std::span<double const> labels,
                           std::span<GradientPair> out, ThreadPool* pool) const = 0;
  /*! \brief margin -> output scale (identity or probability) */
  virtual double Transform(double margin) const = 0;

  /*! \brief "reg:squarederror" or "binary:logistic"; throws ValidationError otherwise */
  static std::unique_ptr<Objective> Create(std::string_view name);
};

enum class Metric { kRmse, kAccuracy, kLogloss };

/*! \brief "rmse", "accuracy" or "logloss" */
Metric ParseMetric(std::string_view name);
std::string_view MetricName(Metric metric);

/*!
 * \brief evaluate margins against labels.
 *  rmse uses the raw margin; accuracy predicts class 1 when sigmoid(margin) >= 0.5;
 *  logloss is the mean negative log-likelihood of sigmoid(margin).
 */
double EvalMetric(std::span<double const> margins, std::span<double const> labels, Metric metric);

}  // namespace hgbt

#endif  // HGBT_OBJECTIVE_H_
