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

#ifndef QWALK_DIFFUSION_PDE_HPP_
#define QWALK_DIFFUSION_PDE_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "qwalk/units.hpp"

namespace qwalk {

// The free-particle Schroedinger equation continued to imaginary time,
// (hbar/2m) d2psi/dx2 = dpsi/dtau, is a heat equation with diffusivity
// hbar/2m. This module evolves a non-negative density under that equation
// on a periodic grid and measures how its variance grows (at rate hbar/m).

inline constexpr std::size_t kMinGridPoints = 16;

struct GridSpec {
  double half_width = 0.0;  // m
  std::size_t n_points = 0;  // even, >= kMinGridPoints

  void Validate() const;
  double spacing() const { return 2.0 * half_width / static_cast<double>(n_points); }
  // x_i = (i - n/2) * h, so x_{n-i} = -x_i exactly.
  double x(std::size_t i) const;
};

class GridField {
 public:
  // Throws DomainError for negative / non-finite values or zero mass.
  GridField(GridSpec grid, std::vector<double> values);

  const GridSpec& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  // sum(values) * spacing
  double Integral() const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

struct PdeConfig {
  Mass mass;
  double tau_total = 0.0;  // s (imaginary time)
  std::size_t n_time_steps = 0;
  PhysicalConstants constants;
};

// hbar / (2m)
double ImaginaryTimeDiffusivity(Mass mass, const PhysicalConstants& constants);

inline constexpr double kMaxStabilityNumber = 0.5;

// kappa * dtau / h^2 for the given configuration.
double StabilityNumber(const GridSpec& grid, const PdeConfig& config);

// Smallest step count whose stability number is <= 0.5.
std::size_t RequiredTimeSteps(const GridSpec& grid, Mass mass, double tau_total,
                              const PhysicalConstants& constants = {});

// Normalized discrete Gaussian centred at 0. ConfigError unless
// half_width >= 10 * sigma0.
GridField GaussianProfile(double sigma0, const GridSpec& grid);

// Explicit central-difference stepping with periodic boundaries. Refuses
// (ConfigError) rather than sub-stepping when the stability number exceeds
// 0.5. n_time_steps = 0 returns the field unchanged.
GridField Evolve(const GridField& field, const PdeConfig& config);

// Second central moment about the field's own mean. DomainError for a
// zero-mass field.
double FieldVariance(const GridField& field);

struct VarianceTrace {
  std::vector<double> tau;        // s
  std::vector<double> variance;   // m^2
  std::optional<double> fitted_slope;  // m^2/s, needs >= 2 distinct taus
  double expected_slope = 0.0;    // hbar/m
  double max_mass_drift = 0.0;    // relative, over all checkpoints
  double stability_number = 0.0;
  std::size_t n_time_steps = 0;
  GridField final_field;
};

// Gaussian of width sigma0 evolved to config.tau_total, recording the
// variance at `checkpoints` evenly spaced step indices plus tau = 0. Also
// enforces half_width >= 10 * (expected final sigma) so periodic wrap-around
// stays negligible.
VarianceTrace RunVarianceTrace(double sigma0, const GridSpec& grid,
                               const PdeConfig& config, std::size_t checkpoints);

// x_m,density
void WriteFieldCsv(const GridField& field, const std::filesystem::path& path);
// tau_s,variance_m2
void WriteVarianceTraceCsv(const VarianceTrace& trace,
                           const std::filesystem::path& path);

}  // namespace qwalk

#endif  // QWALK_DIFFUSION_PDE_HPP_
