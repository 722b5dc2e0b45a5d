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

#include "qwalk/diffusion_pde.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csv_util.hpp"
#include "qwalk/error.hpp"
#include "wls.hpp"

namespace qwalk {

void GridSpec::Validate() const {
  if (!std::isfinite(half_width) || half_width <= 0.0) {
    throw ConfigError("grid half width must be finite and positive");
  }
  if (n_points < kMinGridPoints) {
    throw ConfigError("grid needs at least " + std::to_string(kMinGridPoints) +
                      " points, got " + std::to_string(n_points));
  }
  if (n_points % 2 != 0) {
    throw ConfigError("grid point count must be even for a symmetric grid");
  }
}

double GridSpec::x(std::size_t i) const {
  return (static_cast<double>(i) - static_cast<double>(n_points / 2)) * spacing();
}

GridField::GridField(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  grid_.Validate();
  if (values_.size() != grid_.n_points) {
    throw DomainError("field has " + std::to_string(values_.size()) +
                      " values for a " + std::to_string(grid_.n_points) +
                      "-point grid");
  }
  double sum = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw DomainError("field values must be finite and non-negative");
    }
    sum += v;
  }
  if (!(sum > 0.0)) throw DomainError("field has zero total mass");
}

double GridField::Integral() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum * grid_.spacing();
}

double ImaginaryTimeDiffusivity(Mass mass, const PhysicalConstants& constants) {
  constants.Validate();
  return constants.hbar / (2.0 * mass.kilograms());
}

double StabilityNumber(const GridSpec& grid, const PdeConfig& config) {
  if (config.n_time_steps == 0) return 0.0;
  const double h = grid.spacing();
  const double dtau = config.tau_total / static_cast<double>(config.n_time_steps);
  return ImaginaryTimeDiffusivity(config.mass, config.constants) * dtau / (h * h);
}

std::size_t RequiredTimeSteps(const GridSpec& grid, Mass mass, double tau_total,
                              const PhysicalConstants& constants) {
  grid.Validate();
  if (!std::isfinite(tau_total) || tau_total < 0.0) {
    throw ConfigError("tau must be finite and non-negative");
  }
  const double h = grid.spacing();
  const double kappa = ImaginaryTimeDiffusivity(mass, constants);
  auto steps = static_cast<std::size_t>(
      std::ceil(kappa * tau_total / (kMaxStabilityNumber * h * h)));
  // Guard against the ceil landing one short through rounding.
  PdeConfig probe{mass, tau_total, steps, constants};
  while (steps > 0 && StabilityNumber(grid, probe) > kMaxStabilityNumber) {
    probe.n_time_steps = ++steps;
  }
  return steps;
}

GridField GaussianProfile(double sigma0, const GridSpec& grid) {
  grid.Validate();
  if (!std::isfinite(sigma0) || sigma0 <= 0.0) {
    throw ConfigError("sigma0 must be finite and positive");
  }
  if (grid.half_width < 10.0 * sigma0) {
    throw ConfigError("domain too small: half width must be >= 10 * sigma0 (" +
                      csv::FormatDouble(10.0 * sigma0) + " m)");
  }
  std::vector<double> values(grid.n_points);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double z = grid.x(i) / sigma0;
    values[i] = std::exp(-0.5 * z * z);
    sum += values[i];
  }
  const double norm = 1.0 / (sum * grid.spacing());
  for (double& v : values) v *= norm;
  return GridField(grid, std::move(values));
}

namespace {

void CheckConfig(const GridSpec& grid, const PdeConfig& config) {
  config.constants.Validate();
  if (!std::isfinite(config.tau_total) || config.tau_total < 0.0) {
    throw ConfigError("tau must be finite and non-negative");
  }
  const double r = StabilityNumber(grid, config);
  if (r > kMaxStabilityNumber) {
    throw ConfigError(
        "explicit scheme unstable: stability number " + csv::FormatDouble(r) +
        " > 0.5; use at least " +
        std::to_string(RequiredTimeSteps(grid, config.mass, config.tau_total,
                                         config.constants)) +
        " time steps");
  }
}

// One explicit step on a periodic grid. The neighbour pair is summed first so
// that mirror-image inputs produce mirror-image outputs bit for bit.
void Step(const std::vector<double>& in, std::vector<double>& out, double r) {
  const std::size_t n = in.size();
  out[0] = in[0] + r * ((in[n - 1] + in[1]) - 2.0 * in[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = in[i] + r * ((in[i - 1] + in[i + 1]) - 2.0 * in[i]);
  }
  out[n - 1] = in[n - 1] + r * ((in[n - 2] + in[0]) - 2.0 * in[n - 1]);
}

double MassOf(const std::vector<double>& v, double h) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum * h;
}

}  // namespace

GridField Evolve(const GridField& field, const PdeConfig& config) {
  const GridSpec& grid = field.grid();
  CheckConfig(grid, config);
  if (config.n_time_steps == 0) return field;
  const double r = StabilityNumber(grid, config);
  std::vector<double> a(field.values().begin(), field.values().end());
  std::vector<double> b(a.size());
  for (std::size_t s = 0; s < config.n_time_steps; ++s) {
    Step(a, b, r);
    a.swap(b);
  }
  return GridField(grid, std::move(a));
}

double FieldVariance(const GridField& field) {
  const auto v = field.values();
  const GridSpec& g = field.grid();
  double mass = 0.0, first = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    mass += v[i];
    first += v[i] * g.x(i);
  }
  if (!(mass > 0.0)) throw DomainError("variance of a zero-mass field");
  const double mean = first / mass;
  double second = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = g.x(i) - mean;
    second += v[i] * d * d;
  }
  return second / mass;
}

VarianceTrace RunVarianceTrace(double sigma0, const GridSpec& grid,
                               const PdeConfig& config, std::size_t checkpoints) {
  if (checkpoints < 1) throw ConfigError("need at least one checkpoint");
  const GridField initial = GaussianProfile(sigma0, grid);
  CheckConfig(grid, config);

  const double free_line_rate = config.constants.hbar / config.mass.kilograms();
  const double final_sigma =
      std::sqrt(sigma0 * sigma0 + free_line_rate * config.tau_total);
  if (grid.half_width < 10.0 * final_sigma) {
    throw ConfigError(
        "domain too small: final width " + csv::FormatDouble(final_sigma) +
        " m needs half width >= " + csv::FormatDouble(10.0 * final_sigma) + " m");
  }

  const std::size_t n_steps = config.n_time_steps;
  const double r = StabilityNumber(grid, config);
  const double dtau = n_steps ? config.tau_total / static_cast<double>(n_steps) : 0.0;
  const double h = grid.spacing();

  std::vector<double> a(initial.values().begin(), initial.values().end());
  std::vector<double> b(a.size());
  const double mass0 = MassOf(a, h);

  VarianceTrace trace{{}, {}, std::nullopt, free_line_rate, 0.0, r, n_steps,
                      initial};
  trace.tau.push_back(0.0);
  trace.variance.push_back(FieldVariance(initial));

  std::size_t done = 0;
  const std::size_t marks = n_steps == 0 ? 0 : std::min(checkpoints, n_steps);
  for (std::size_t c = 1; c <= marks; ++c) {
    const std::size_t target = (c * n_steps + marks / 2) / marks;
    for (; done < target; ++done) {
      Step(a, b, r);
      a.swap(b);
    }
    GridField snapshot(grid, a);
    trace.tau.push_back(static_cast<double>(done) * dtau);
    trace.variance.push_back(FieldVariance(snapshot));
    trace.max_mass_drift =
        std::max(trace.max_mass_drift, std::abs(MassOf(a, h) - mass0) / mass0);
  }
  trace.final_field = GridField(grid, std::move(a));

  if (trace.tau.size() >= 2) {
    trace.fitted_slope =
        detail::FitLine(trace.tau, trace.variance, {}, /*through_origin=*/false)
            .slope;
  }
  return trace;
}

void WriteFieldCsv(const GridField& field, const std::filesystem::path& path) {
  auto out = csv::OpenOut(path);
  out << "x_m,density\n";
  const auto v = field.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << csv::FormatDouble(field.grid().x(i)) << ',' << csv::FormatDouble(v[i])
        << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void WriteVarianceTraceCsv(const VarianceTrace& trace,
                           const std::filesystem::path& path) {
  auto out = csv::OpenOut(path);
  out << "tau_s,variance_m2\n";
  for (std::size_t i = 0; i < trace.tau.size(); ++i) {
    out << csv::FormatDouble(trace.tau[i]) << ','
        << csv::FormatDouble(trace.variance[i]) << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace qwalk
