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

#ifndef QWALK_MSD_HPP_
#define QWALK_MSD_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "qwalk/units.hpp"
#include "qwalk/walk_sim.hpp"

namespace qwalk {

// Mean-squared displacement sampled at lags k*dt, k = 1..max_lag.
struct MsdCurve {
  std::vector<double> lags;  // s, strictly increasing, > 0
  std::vector<double> msd;   // m^2, summed over axes
  std::vector<double> sem;   // m^2
  std::vector<std::size_t> n_samples;

  std::size_t size() const { return lags.size(); }
  // Throws DomainError if the invariants above do not hold.
  void Validate() const;
};

// Displacement from the start, averaged over trajectories. Points at
// different lags share trajectories and are therefore correlated, but each
// point's samples are independent, so `sem` is exact per point.
MsdCurve EnsembleMsd(const TrajectoryEnsemble& ensemble, std::size_t max_lag);

// Overlapping-window average along one trajectory;
// n_samples(k) = n_steps - k + 1. `sem` treats the windows as independent,
// which is exact for k = 1 and an underestimate for larger lags.
MsdCurve TimeAveragedMsd(const Trajectory& traj, std::size_t max_lag);

// Time-averaged MSD pooled over every window of every trajectory.
MsdCurve PooledTimeAveragedMsd(const TrajectoryEnsemble& ensemble,
                               std::size_t max_lag);

struct DEstimate {
  DiffusionCoefficient d;
  double sigma_d = 0.0;  // m^2/s
  int dims = 1;
  std::size_t lags_used = 0;
  std::optional<double> offset_m2;  // only for offset fits
};

struct EstimateOptions {
  // 0 selects the default, min(10, curve size).
  std::size_t lags_used = 0;
  // Adds a constant term (e.g. localization noise in tracking data).
  bool fit_offset = false;
};

inline constexpr std::size_t kDefaultLagsUsed = 10;

// Fits msd = 2*dims*D*tau (+ offset) over the first lags_used points with
// weights 1/sem^2. When every used sem is zero the fit is unweighted.
// sigma_d is the standard WLS slope error divided by 2*dims; it assumes
// independent points and is only calibrated for lags_used = 1 on real data.
DEstimate EstimateD(const MsdCurve& curve, int dims,
                    const EstimateOptions& options = {});

// header lag_s,msd_m2,sem_m2,n
void WriteMsdCsv(const MsdCurve& curve, const std::filesystem::path& path);
MsdCurve ReadMsdCsv(const std::filesystem::path& path);

}  // namespace qwalk

#endif  // QWALK_MSD_HPP_
