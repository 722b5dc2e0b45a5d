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

#ifndef QWALK_ROUNDTRIP_HPP_
#define QWALK_ROUNDTRIP_HPP_

#include <cstdint>
#include <vector>

#include "qwalk/msd.hpp"
#include "qwalk/planck_fit.hpp"
#include "qwalk/quantum_model.hpp"
#include "qwalk/walk_sim.hpp"

namespace qwalk {

// End-to-end check of the hbar estimate: simulate walkers with
// D = hbar/(6m) (no classical part) for each mass, estimate D from their
// MSD, and fit D against 1/(6m). The fitted slope should return the
// injected hbar.
struct RoundTripConfig {
  double hbar = kCodataHbar;
  std::vector<double> masses_kda{1050, 113, 61, 61, 50};
  std::size_t n_trajectories = 500;
  std::size_t n_steps = 2000;
  double dt = 0.01;
  std::uint64_t seed = 1;
  std::size_t max_lag = 10;
  // Lag 1 of the pooled time-averaged MSD uses independent increments only,
  // which keeps sigma_d (and so the fit uncertainty) calibrated.
  std::size_t lags_used = 1;
  unsigned threads = 1;
};

struct RoundTripMass {
  double mass_kda;
  DiffusionCoefficient d_true;
  std::uint64_t seed;  // ensemble seed derived for this mass
  MsdCurve msd;
  DEstimate estimate;
};

struct RoundTripResult {
  std::vector<RoundTripMass> masses;
  FitReport fit;
  double injected_hbar;
  double relative_error;    // (slope - hbar) / hbar
  double normalized_error;  // (slope - hbar) / sigma_slope_analytic
};

// Ensemble seed for the j-th mass; distinct (seed, j) pairs never share a
// random stream.
std::uint64_t DeriveMassSeed(std::uint64_t seed, std::size_t mass_index);

RoundTripResult RunRoundTrip(const RoundTripConfig& config);

}  // namespace qwalk

#endif  // QWALK_ROUNDTRIP_HPP_
