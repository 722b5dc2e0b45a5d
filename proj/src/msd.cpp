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

#include "qwalk/msd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csv_util.hpp"
#include "qwalk/error.hpp"
#include "wls.hpp"

namespace qwalk {

void MsdCurve::Validate() const {
  const std::size_t n = lags.size();
  if (msd.size() != n || sem.size() != n || n_samples.size() != n) {
    throw DomainError("MSD curve columns have different lengths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lags[i] > 0.0) || (i > 0 && !(lags[i] > lags[i - 1]))) {
      throw DomainError("MSD lags must be positive and strictly increasing");
    }
    if (n_samples[i] < 1) throw DomainError("MSD point with zero samples");
    if (!std::isfinite(msd[i]) || !(sem[i] >= 0.0) || !std::isfinite(sem[i])) {
      throw DomainError("MSD values must be finite with sem >= 0");
    }
  }
}

namespace {

void CheckLag(std::size_t max_lag, std::size_t n_steps) {
  if (max_lag > n_steps) {
    throw DomainError("max_lag " + std::to_string(max_lag) +
                      " exceeds the number of steps " + std::to_string(n_steps));
  }
}

double SquaredDistance(const Trajectory& t, std::size_t i, std::size_t j) {
  double sum = 0.0;
  const auto a = t.point(i);
  const auto b = t.point(j);
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = b[d] - a[d];
    sum += diff * diff;
  }
  return sum;
}

const Trajectory& FirstOf(const TrajectoryEnsemble& e) {
  if (e.trajectories.empty()) throw DomainError("ensemble is empty");
  return e.trajectories.front();
}

}  // namespace

MsdCurve EnsembleMsd(const TrajectoryEnsemble& ensemble, std::size_t max_lag) {
  const Trajectory& first = FirstOf(ensemble);
  CheckLag(max_lag, first.n_steps());
  MsdCurve curve;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    // Two-pass mean / deviation keeps sem exactly zero for constant samples.
    double sum = 0.0;
    for (const auto& t : ensemble.trajectories) sum += SquaredDistance(t, 0, k);
    const double n = static_cast<double>(ensemble.trajectories.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& t : ensemble.trajectories) {
      const double dev = SquaredDistance(t, 0, k) - mean;
      ss += dev * dev;
    }
    const double sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    curve.lags.push_back(static_cast<double>(k) * first.dt());
    curve.msd.push_back(mean);
    curve.sem.push_back(sd / std::sqrt(n));
    curve.n_samples.push_back(ensemble.trajectories.size());
  }
  return curve;
}

MsdCurve TimeAveragedMsd(const Trajectory& traj, std::size_t max_lag) {
  TrajectoryEnsemble single;
  single.trajectories.push_back(traj);
  return PooledTimeAveragedMsd(single, max_lag);
}

MsdCurve PooledTimeAveragedMsd(const TrajectoryEnsemble& ensemble,
                               std::size_t max_lag) {
  const Trajectory& first = FirstOf(ensemble);
  CheckLag(max_lag, first.n_steps());
  MsdCurve curve;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& t : ensemble.trajectories) {
      for (std::size_t i = 0; i + k < t.n_points(); ++i) {
        sum += SquaredDistance(t, i, i + k);
        ++count;
      }
    }
    const double n = static_cast<double>(count);
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& t : ensemble.trajectories) {
      for (std::size_t i = 0; i + k < t.n_points(); ++i) {
        const double dev = SquaredDistance(t, i, i + k) - mean;
        ss += dev * dev;
      }
    }
    const double sd = count > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    curve.lags.push_back(static_cast<double>(k) * first.dt());
    curve.msd.push_back(mean);
    curve.sem.push_back(sd / std::sqrt(n));
    curve.n_samples.push_back(count);
  }
  return curve;
}

DEstimate EstimateD(const MsdCurve& curve, int dims,
                    const EstimateOptions& options) {
  curve.Validate();
  if (dims < 1 || dims > 3) throw DomainError("dims must be 1, 2 or 3");
  const std::size_t used = options.lags_used == 0
                               ? std::min(kDefaultLagsUsed, curve.size())
                               : options.lags_used;
  const std::size_t needed = options.fit_offset ? 2 : 1;
  if (used < needed || used > curve.size()) {
    throw DomainError("lags_used = " + std::to_string(used) +
                      " is outside [" + std::to_string(needed) + ", " +
                      std::to_string(curve.size()) + "]");
  }
  std::span<const double> tau(curve.lags.data(), used);
  std::span<const double> y(curve.msd.data(), used);
  std::span<const double> sem(curve.sem.data(), used);
  std::size_t zeros = 0;
  for (double s : sem) zeros += (s == 0.0);
  if (zeros != 0 && zeros != used) {
    throw DomainError("MSD sem must be all positive or all zero over the fit range");
  }
  const auto fit = detail::FitLine(tau, y, zeros ? std::span<const double>{} : sem,
                                   !options.fit_offset);
  const double factor = 2.0 * dims;
  if (fit.slope < 0.0) {
    throw DomainError("fitted MSD slope is negative; no diffusion coefficient");
  }
  DEstimate est{DiffusionCoefficient(fit.slope / factor), fit.sigma_slope / factor,
                dims, used, std::nullopt};
  if (options.fit_offset) est.offset_m2 = fit.intercept;
  return est;
}

void WriteMsdCsv(const MsdCurve& curve, const std::filesystem::path& path) {
  curve.Validate();
  auto out = csv::OpenOut(path);
  out << "lag_s,msd_m2,sem_m2,n\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out << csv::FormatDouble(curve.lags[i]) << ','
        << csv::FormatDouble(curve.msd[i]) << ','
        << csv::FormatDouble(curve.sem[i]) << ',' << curve.n_samples[i] << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

MsdCurve ReadMsdCsv(const std::filesystem::path& path) {
  auto in = csv::OpenIn(path);
  const std::string src = path.string();
  static const std::vector<std::string> kHeader{"lag_s", "msd_m2", "sem_m2", "n"};
  csv::ExpectHeader(in, kHeader, src);
  MsdCurve curve;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::Trim(line).empty()) continue;
    const auto f = csv::SplitLine(line);
    const std::string at = src + ": line " + std::to_string(line_no);
    if (f.size() != kHeader.size()) {
      throw ParseError(at + ": expected 4 columns, got " + std::to_string(f.size()));
    }
    curve.lags.push_back(csv::ParseDouble(f[0], at + ", column lag_s"));
    curve.msd.push_back(csv::ParseDouble(f[1], at + ", column msd_m2"));
    curve.sem.push_back(csv::ParseDouble(f[2], at + ", column sem_m2"));
    curve.n_samples.push_back(csv::ParseCount(f[3], at + ", column n"));
  }
  try {
    curve.Validate();
  } catch (const DomainError& e) {
    throw ParseError(src + ": " + e.what());
  }
  return curve;
}

}  // namespace qwalk
