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

#ifndef QWALK_WALK_SIM_HPP_
#define QWALK_WALK_SIM_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <vector>

#include "qwalk/units.hpp"

namespace qwalk {

struct SimConfig {
  DiffusionCoefficient d_total;
  double dt = 0.01;          // s
  std::size_t n_steps = 0;
  int dims = 1;              // 1..3
  std::size_t n_trajectories = 1;
  std::uint64_t seed = 0;

  // Throws ConfigError on any violated invariant.
  void Validate() const;
};

// Positions of one walker, row-major: point k occupies
// positions()[k*dims .. k*dims + dims). Point 0 is the origin.
class Trajectory {
 public:
  Trajectory(double dt, int dims, std::vector<double> positions);

  double dt() const { return dt_; }
  int dims() const { return dims_; }
  std::size_t n_points() const { return positions_.size() / dims_; }
  std::size_t n_steps() const { return n_points() - 1; }
  std::span<const double> positions() const { return positions_; }
  std::span<const double> point(std::size_t k) const {
    return std::span<const double>(positions_).subspan(k * dims_, dims_);
  }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  double dt_;
  int dims_;
  std::vector<double> positions_;
};

struct TrajectoryEnsemble {
  SimConfig config;
  std::vector<Trajectory> trajectories;
};

// Standard normal variates from a per-trajectory substream. The substream is
// std::mt19937_64 seeded through std::seed_seq with (seed, index); normals
// come from the Marsaglia polar method on 53-bit uniforms, so the output is
// fixed by the C++ standard rather than by the library vendor.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t index);
  double Next();

 private:
  double Uniform();  // (-1, 1)

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Each step adds an independent N(0, 2 D dt) increment per axis.
Trajectory SimulateTrajectory(const SimConfig& config, std::size_t index);

// Trajectories 0..n-1; identical output for every thread count.
// threads == 0 picks std::thread::hardware_concurrency().
TrajectoryEnsemble SimulateEnsemble(const SimConfig& config,
                                    unsigned threads = 1);

struct IncrementStats {
  std::size_t count = 0;  // increments per axis
  std::vector<double> variance;         // per axis
  std::vector<double> skewness;         // per axis
  std::vector<double> excess_kurtosis;  // per axis
  double max_abs_cross_correlation = 0.0;
};

// Moments of all step increments in the ensemble, per axis.
IncrementStats ComputeIncrementStats(const TrajectoryEnsemble& ensemble);

// header t_s,x_m[,y_m[,z_m]]; shortest round-trip decimal.
void WriteTrajectoryCsv(const Trajectory& traj, const std::filesystem::path& path);
Trajectory ReadTrajectoryCsv(const std::filesystem::path& path);

// traj_00000.csv, traj_00001.csv, ... in `dir` (created if absent).
std::vector<std::filesystem::path> WriteEnsembleCsv(
    const TrajectoryEnsemble& ensemble, const std::filesystem::path& dir);

// Reads a single trajectory file or every traj_*.csv in a directory (sorted
// by name). All trajectories must share dt, dims and length.
TrajectoryEnsemble ReadEnsembleCsv(const std::filesystem::path& path);

}  // namespace qwalk

#endif  // QWALK_WALK_SIM_HPP_
