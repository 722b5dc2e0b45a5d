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

#include "qwalk/walk_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>

#include "csv_util.hpp"
#include "qwalk/error.hpp"

namespace qwalk {

void SimConfig::Validate() const {
  if (!std::isfinite(dt) || dt <= 0.0) {
    throw ConfigError("time step dt must be finite and positive");
  }
  if (dims < 1 || dims > 3) {
    throw ConfigError("dims must be 1, 2 or 3, got " + std::to_string(dims));
  }
  if (n_trajectories < 1) {
    throw ConfigError("n_trajectories must be at least 1");
  }
}

Trajectory::Trajectory(double dt, int dims, std::vector<double> positions)
    : dt_(dt), dims_(dims), positions_(std::move(positions)) {
  if (!(dt > 0.0) || dims < 1 || dims > 3) {
    throw ConfigError("trajectory needs dt > 0 and 1 <= dims <= 3");
  }
  if (positions_.empty() || positions_.size() % dims != 0) {
    throw ConfigError("trajectory positions must hold whole points");
  }
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t index) {
  // Distinct (seed, index) pairs give distinct seed sequences; the trailing
  // constant separates this use from any other stream derived from `seed`.
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32),
                    std::uint32_t{0x71A1C5u}};
  engine_.seed(seq);
}

double NormalStream::Uniform() {
  constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;
  const double u = static_cast<double>(engine_() >> 11) * kTwoPowMinus53;
  return 2.0 * u - 1.0;
}

double NormalStream::Next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = Uniform();
    v = Uniform();
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

Trajectory SimulateTrajectory(const SimConfig& config, std::size_t index) {
  config.Validate();
  if (index >= config.n_trajectories) {
    throw ConfigError("trajectory index " + std::to_string(index) +
                      " out of range");
  }
  const int dims = config.dims;
  const double step_sd = std::sqrt(2.0 * config.d_total.m2_per_s() * config.dt);
  std::vector<double> pos((config.n_steps + 1) * dims, 0.0);
  NormalStream normals(config.seed, index);
  for (std::size_t k = 1; k <= config.n_steps; ++k) {
    for (int a = 0; a < dims; ++a) {
      pos[k * dims + a] = pos[(k - 1) * dims + a] + step_sd * normals.Next();
    }
  }
  return Trajectory(config.dt, dims, std::move(pos));
}

TrajectoryEnsemble SimulateEnsemble(const SimConfig& config, unsigned threads) {
  config.Validate();
  const std::size_t n = config.n_trajectories;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  std::vector<std::vector<double>> positions(n);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Trajectory t = SimulateTrajectory(config, i);
      positions[i].assign(t.positions().begin(), t.positions().end());
    }
  };
  if (threads <= 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t block = (n + threads - 1) / threads;
    for (std::size_t b = 0; b < n; b += block) {
      pool.emplace_back(work, b, std::min(n, b + block));
    }
  }

  TrajectoryEnsemble ensemble{config, {}};
  ensemble.trajectories.reserve(n);
  for (auto& p : positions) {
    ensemble.trajectories.emplace_back(config.dt, config.dims, std::move(p));
  }
  return ensemble;
}

IncrementStats ComputeIncrementStats(const TrajectoryEnsemble& ensemble) {
  IncrementStats stats;
  if (ensemble.trajectories.empty()) return stats;
  const int dims = ensemble.trajectories.front().dims();
  std::vector<double> mean(dims, 0.0);
  std::size_t count = 0;
  for (const auto& t : ensemble.trajectories) {
    for (std::size_t k = 1; k < t.n_points(); ++k) {
      for (int a = 0; a < dims; ++a) mean[a] += t.point(k)[a] - t.point(k - 1)[a];
    }
    count += t.n_steps();
  }
  stats.count = count;
  if (count < 2) return stats;
  for (auto& m : mean) m /= static_cast<double>(count);

  std::vector<double> m2(dims, 0.0), m3(dims, 0.0), m4(dims, 0.0);
  std::vector<double> cross(dims * dims, 0.0);
  for (const auto& t : ensemble.trajectories) {
    for (std::size_t k = 1; k < t.n_points(); ++k) {
      double d[3];
      for (int a = 0; a < dims; ++a) {
        d[a] = t.point(k)[a] - t.point(k - 1)[a] - mean[a];
        const double sq = d[a] * d[a];
        m2[a] += sq;
        m3[a] += sq * d[a];
        m4[a] += sq * sq;
      }
      for (int a = 0; a < dims; ++a) {
        for (int b = a + 1; b < dims; ++b) cross[a * dims + b] += d[a] * d[b];
      }
    }
  }
  const double nd = static_cast<double>(count);
  for (int a = 0; a < dims; ++a) {
    const double var = m2[a] / nd;
    stats.variance.push_back(m2[a] / (nd - 1.0));
    stats.skewness.push_back(var > 0 ? (m3[a] / nd) / std::pow(var, 1.5) : 0.0);
    stats.excess_kurtosis.push_back(var > 0 ? (m4[a] / nd) / (var * var) - 3.0
                                            : 0.0);
  }
  for (int a = 0; a < dims; ++a) {
    for (int b = a + 1; b < dims; ++b) {
      const double denom = std::sqrt(m2[a] * m2[b]);
      if (denom > 0) {
        stats.max_abs_cross_correlation =
            std::max(stats.max_abs_cross_correlation,
                     std::abs(cross[a * dims + b] / denom));
      }
    }
  }
  return stats;
}

namespace {

std::vector<std::string> TrajectoryHeader(int dims) {
  std::vector<std::string> h{"t_s", "x_m"};
  if (dims >= 2) h.push_back("y_m");
  if (dims >= 3) h.push_back("z_m");
  return h;
}

}  // namespace

void WriteTrajectoryCsv(const Trajectory& traj,
                        const std::filesystem::path& path) {
  auto out = csv::OpenOut(path);
  const auto header = TrajectoryHeader(traj.dims());
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (std::size_t k = 0; k < traj.n_points(); ++k) {
    out << csv::FormatDouble(static_cast<double>(k) * traj.dt());
    for (double v : traj.point(k)) out << ',' << csv::FormatDouble(v);
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

Trajectory ReadTrajectoryCsv(const std::filesystem::path& path) {
  auto in = csv::OpenIn(path);
  const std::string src = path.string();
  std::string line;
  if (!std::getline(in, line)) throw ParseError(src + ": empty file");
  auto header = csv::SplitLine(line);
  for (auto& h : header) h = csv::Trim(h);
  const int dims = static_cast<int>(header.size()) - 1;
  if (dims < 1 || dims > 3 || header != TrajectoryHeader(dims)) {
    throw ParseError(src + ": line 1: bad header, expected t_s,x_m[,y_m[,z_m]]");
  }
  std::vector<double> times;
  std::vector<double> pos;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::Trim(line).empty()) continue;
    const auto fields = csv::SplitLine(line);
    if (fields.size() != header.size()) {
      throw ParseError(src + ": line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " columns, got " +
                       std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const double v = csv::ParseDouble(
          fields[c], src + ": line " + std::to_string(line_no) + ", column " +
                         header[c]);
      (c == 0 ? times : pos).push_back(v);
    }
  }
  if (times.empty()) throw ParseError(src + ": no data rows");
  // A single-point trajectory carries no step information; dt = 1 s is a
  // placeholder that no lag computation can observe.
  const double dt = times.size() > 1 ? times[1] - times[0] : 1.0;
  if (!(dt > 0.0)) throw ParseError(src + ": line 3: time column must increase");
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double expect = times[0] + static_cast<double>(k) * dt;
    if (std::abs(times[k] - expect) > 1e-6 * dt) {
      throw ParseError(src + ": line " + std::to_string(k + 2) +
                       ", column t_s: time grid is not uniform");
    }
  }
  return Trajectory(dt, dims, std::move(pos));
}

std::vector<std::filesystem::path> WriteEnsembleCsv(
    const TrajectoryEnsemble& ensemble, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  char name[32];
  for (std::size_t i = 0; i < ensemble.trajectories.size(); ++i) {
    std::snprintf(name, sizeof(name), "traj_%05zu.csv", i);
    written.push_back(dir / name);
    WriteTrajectoryCsv(ensemble.trajectories[i], written.back());
  }
  return written;
}

TrajectoryEnsemble ReadEnsembleCsv(const std::filesystem::path& path) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(path)) {
    for (const auto& e : std::filesystem::directory_iterator(path)) {
      const auto name = e.path().filename().string();
      if (name.rfind("traj_", 0) == 0 && e.path().extension() == ".csv") {
        files.push_back(e.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      throw IoError("no traj_*.csv files in '" + path.string() + "'");
    }
  } else {
    files.push_back(path);
  }
  TrajectoryEnsemble ensemble;
  for (const auto& f : files) {
    ensemble.trajectories.push_back(ReadTrajectoryCsv(f));
    const auto& first = ensemble.trajectories.front();
    const auto& t = ensemble.trajectories.back();
    if (t.dims() != first.dims() || t.n_points() != first.n_points() ||
        std::abs(t.dt() - first.dt()) > 1e-12 * first.dt()) {
      throw ParseError(f.string() +
                       ": trajectory shape (dt, dims, length) differs from '" +
                       files.front().string() + "'");
    }
  }
  const auto& first = ensemble.trajectories.front();
  ensemble.config.dt = first.dt();
  ensemble.config.dims = first.dims();
  ensemble.config.n_steps = first.n_steps();
  ensemble.config.n_trajectories = ensemble.trajectories.size();
  return ensemble;
}

}  // namespace qwalk
