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

#ifndef QWALK_PLANCK_FIT_HPP_
#define QWALK_PLANCK_FIT_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qwalk/units.hpp"

namespace qwalk {

// One measured molecule: mass and 1D diffusion coefficient with its 1-sigma
// uncertainty.
struct MoleculeRecord {
  std::string label;
  Mass mass;
  DiffusionCoefficient d;
  double sigma_d;  // m^2/s, > 0
  std::string source;

  void Validate() const;
};

// The five single-molecule measurements (mass in kDa, D and sigma in um^2/s):
//   1050  0.0082 +- 0.0014  [15]
//    113  0.11   +- 0.01    [16]
//     61  0.18   +- 0.02    [16]
//     61  0.16   +- 0.03    [17]
//     50  0.23   +- 0.08    [18]
std::vector<MoleculeRecord> Table1Dataset(const PhysicalConstants& constants = {});

// x = 1/(6m), kg^-1. With D = hbar/(6m) the slope of D against x is hbar.
double Abscissa(const MoleculeRecord& record);

struct FitPoint {
  double x;
  double y;
  double sigma;
};

struct FitResult {
  double slope = 0.0;                 // J*s when fitting D against 1/(6m)
  double sigma_slope_analytic = 0.0;  // 1/sqrt(sum w x^2) (through origin)
  std::optional<double> sigma_slope_scaled;  // analytic * sqrt(chi2_reduced)
  double chi2 = 0.0;
  std::size_t n_points = 0;
  std::size_t dof = 0;
  std::optional<double> chi2_reduced;  // absent when dof == 0
  std::optional<double> intercept;     // absent for through-origin fits
  std::optional<double> sigma_intercept;

  double Predict(double x) const { return slope * x + intercept.value_or(0.0); }
};

// Weighted least squares, weights 1/sigma^2. Result is independent of point
// order. Throws DomainError for too few points or sigma <= 0, RankError for a
// singular intercept fit.
FitResult WeightedFit(std::span<const FitPoint> points, bool through_origin = true);

struct ResidualRow {
  std::string label;
  double x;
  double y;
  double yhat;
  double normalized;  // (y - yhat) / sigma
};

struct FitReport {
  FitResult fit;
  std::vector<ResidualRow> residuals;
  std::vector<FitPoint> points;
};

struct FitOptions {
  bool through_origin = true;
};

FitReport MakeFitReport(std::span<const MoleculeRecord> records,
                        const FitOptions& options = {});

// Keys: slope_J_s, sigma_slope_analytic_J_s, sigma_slope_scaled_J_s, chi2,
// dof, chi2_reduced, n_points, through_origin, [intercept_m2_s,
// sigma_intercept_m2_s], points[{label,x_per_kg,y_m2_s,yhat_m2_s,
// normalized_residual}]. Unavailable values are null.
std::string FitReportJson(const FitReport& report);
void WriteFitReportJson(const FitReport& report, const std::filesystem::path& path);

inline constexpr std::size_t kFitLineSamples = 100;

// fit_points.csv (x_per_kg,y_m2_s,sigma_m2_s) and fit_line.csv
// (x_per_kg,yhat_m2_s, 100 samples over [min x, max x]). Returns both paths.
std::vector<std::filesystem::path> WritePlotBundle(
    const FitReport& report, const std::filesystem::path& dir);

// header label,mass_kDa,D_um2_s,sigma_D_um2_s,source
std::vector<MoleculeRecord> ReadRecordsCsv(std::istream& in,
                                           const std::string& source_name,
                                           const PhysicalConstants& constants = {});
std::vector<MoleculeRecord> ReadRecordsCsv(const std::filesystem::path& path,
                                           const PhysicalConstants& constants = {});

}  // namespace qwalk

#endif  // QWALK_PLANCK_FIT_HPP_
