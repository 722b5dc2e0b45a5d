// Copyright 2026 The qwalk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QWALK_SRC_WLS_HPP_
#define QWALK_SRC_WLS_HPP_

#include <cstddef>
#include <span>

namespace qwalk::detail {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;        // 0 for through-origin fits
  double sigma_slope = 0.0;
  double sigma_intercept = 0.0;
  double chi2 = 0.0;             // sum of squared (weighted) residuals
  std::size_t n = 0;
  bool weighted = true;
};

// Weighted least squares for y = slope*x (+ intercept). Weights are
// 1/sigma^2; an empty `sigma` means unit weights, in which case the slope
// uncertainty is scaled by the residual standard deviation.
//
// Points are sorted by (x, y, sigma) and the normal sums accumulated in long
// double, so the result does not depend on input order.
//
// Throws DomainError for too few points or non-positive sigma, RankError if
// the intercept fit is singular (all x equal).
LineFit FitLine(std::span<const double> x, std::span<const double> y,
                std::span<const double> sigma, bool through_origin);

}  // namespace qwalk::detail

#endif  // QWALK_SRC_WLS_HPP_
