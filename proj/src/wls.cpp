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

#include "wls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

#include "qwalk/error.hpp"

namespace qwalk::detail {

LineFit FitLine(std::span<const double> x, std::span<const double> y,
                std::span<const double> sigma, bool through_origin) {
  const std::size_t n = x.size();
  const bool weighted = !sigma.empty();
  if (y.size() != n || (weighted && sigma.size() != n)) {
    throw DomainError("fit inputs must have equal lengths");
  }
  if (n < (through_origin ? 1u : 2u)) {
    throw DomainError(through_origin ? "fit needs at least 1 point"
                                     : "fit with intercept needs at least 2 points");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw DomainError("fit inputs must be finite");
    }
    if (weighted && !(std::isfinite(sigma[i]) && sigma[i] > 0.0)) {
      throw DomainError("fit uncertainties must be finite and positive");
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double sa = weighted ? sigma[a] : 1.0;
    const double sb = weighted ? sigma[b] : 1.0;
    return std::tie(x[a], y[a], sa) < std::tie(x[b], y[b], sb);
  });

  using Acc = long double;
  Acc s = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i : order) {
    const Acc w = weighted ? 1.0L / (Acc{sigma[i]} * sigma[i]) : 1.0L;
    s += w;
    sx += w * x[i];
    sy += w * y[i];
    sxx += w * x[i] * x[i];
    sxy += w * x[i] * y[i];
  }

  LineFit fit;
  fit.n = n;
  fit.weighted = weighted;
  Acc slope = 0, intercept = 0;
  if (through_origin) {
    if (!(sxx > 0)) throw RankError("through-origin fit needs a nonzero x");
    slope = sxy / sxx;
    fit.sigma_slope = static_cast<double>(1.0L / std::sqrt(sxx));
  } else {
    const Acc det = s * sxx - sx * sx;
    if (!(det > std::numeric_limits<double>::epsilon() * s * sxx)) {
      throw RankError("intercept fit is singular: all x values coincide");
    }
    slope = (s * sxy - sx * sy) / det;
    intercept = (sxx * sy - sx * sxy) / det;
    fit.sigma_slope = static_cast<double>(std::sqrt(s / det));
    fit.sigma_intercept = static_cast<double>(std::sqrt(sxx / det));
  }
  fit.slope = static_cast<double>(slope);
  fit.intercept = static_cast<double>(intercept);

  Acc chi2 = 0;
  for (std::size_t i : order) {
    const Acc w = weighted ? 1.0L / (Acc{sigma[i]} * sigma[i]) : 1.0L;
    const Acc r = y[i] - (slope * x[i] + intercept);
    chi2 += w * r * r;
  }
  fit.chi2 = static_cast<double>(chi2);

  if (!weighted) {
    const std::size_t dof = n - (through_origin ? 1 : 2);
    const double scale = dof > 0 ? std::sqrt(fit.chi2 / dof) : 0.0;
    fit.sigma_slope *= scale;
    fit.sigma_intercept *= scale;
  }
  return fit;
}

}  // namespace qwalk::detail
