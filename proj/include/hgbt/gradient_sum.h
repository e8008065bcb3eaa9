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
 * \file gradient_sum.h
 * \brief exact, order-independent accumulator for gradient statistics
 *
 * Histogram bins, node totals and prefix scans all accumulate GradientSum.
 * Each double gradient is rounded once onto a 2^-60 grid and then summed as a
 * 128-bit integer, so addition is associative: the result of a reduction does
 * not depend on how rows are split between workers or in which order partial
 * histograms are merged. Conversion back to double happens only when a gain or
 * a leaf weight is computed.
 */
#ifndef HGBT_GRADIENT_SUM_H_
#define HGBT_GRADIENT_SUM_H_

#include <cmath>

#include "hgbt/base.h"

namespace hgbt {

__extension__ using int128_t = __int128;

class GradientSum {
 public:
  static constexpr int kFracBits = 60;
  /*! \brief largest |g| or |h| accepted per row; leaves 2^33 rows of headroom */
  static constexpr double kMaxMagnitude = 17179869184.0;  // 2^34

  constexpr GradientSum() = default;

  /*! \brief round one gradient pair onto the fixed-point grid; throws ValidationError
   *         for non-finite or oversized values */
  static GradientSum FromPair(GradientPair const& gp) {
    return GradientSum{ToFixed(gp.grad), ToFixed(gp.hess)};
  }

  double Grad() const { return ToDouble(grad_); }
  double Hess() const { return ToDouble(hess_); }
  GradientPair ToPair() const { return {Grad(), Hess()}; }
  bool IsZero() const { return grad_ == 0 && hess_ == 0; }

  GradientSum& operator+=(GradientSum const& rhs) {
    grad_ += rhs.grad_;
    hess_ += rhs.hess_;
    return *this;
  }
  GradientSum& operator-=(GradientSum const& rhs) {
    grad_ -= rhs.grad_;
    hess_ -= rhs.hess_;
    return *this;
  }
  friend GradientSum operator+(GradientSum lhs, GradientSum const& rhs) { return lhs += rhs; }
  friend GradientSum operator-(GradientSum lhs, GradientSum const& rhs) { return lhs -= rhs; }
  friend bool operator==(GradientSum const&, GradientSum const&) = default;

 private:
  constexpr GradientSum(int128_t g, int128_t h) : grad_{g}, hess_{h} {}

  static int128_t ToFixed(double v) {
    if (!std::isfinite(v) || std::fabs(v) >= kMaxMagnitude) {
      throw ValidationError("gradient statistic out of supported range: " + std::to_string(v));
    }
    return static_cast<int128_t>(std::nearbyint(std::ldexp(v, kFracBits)));
  }
  static double ToDouble(int128_t v) { return std::ldexp(static_cast<double>(v), -kFracBits); }

  int128_t grad_{0};
  int128_t hess_{0};
};

}  // namespace hgbt

#endif  // HGBT_GRADIENT_SUM_H_
