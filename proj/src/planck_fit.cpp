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

#include "qwalk/planck_fit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>

#include "csv_util.hpp"
#include "json.hpp"
#include "qwalk/error.hpp"
#include "wls.hpp"

namespace qwalk {

void MoleculeRecord::Validate() const {
  if (!std::isfinite(sigma_d) || sigma_d <= 0.0) {
    throw DomainError("record '" + label + "': sigma_D must be finite and positive");
  }
}

std::vector<MoleculeRecord> Table1Dataset(const PhysicalConstants& constants) {
  struct Row {
    const char* label;
    double kda, d_um2s, sigma_um2s;
    const char* source;
  };
  static constexpr Row kRows[] = {
      {"1050 kDa", 1050, 0.0082, 0.0014, "[15]"},
      {"113 kDa", 113, 0.11, 0.01, "[16]"},
      {"61 kDa (a)", 61, 0.18, 0.02, "[16]"},
      {"61 kDa (b)", 61, 0.16, 0.03, "[17]"},
      {"50 kDa", 50, 0.23, 0.08, "[18]"},
  };
  std::vector<MoleculeRecord> out;
  for (const Row& r : kRows) {
    out.push_back({r.label, MassFromKda(r.kda, constants), DFromUm2s(r.d_um2s),
                   Um2sToSi(r.sigma_um2s), r.source});
  }
  return out;
}

double Abscissa(const MoleculeRecord& record) {
  return 1.0 / (6.0 * record.mass.kilograms());
}

FitResult WeightedFit(std::span<const FitPoint> points, bool through_origin) {
  std::vector<double> x, y, s;
  for (const FitPoint& p : points) {
    x.push_back(p.x);
    y.push_back(p.y);
    s.push_back(p.sigma);
  }
  const auto line = detail::FitLine(x, y, s, through_origin);

  FitResult r;
  r.slope = line.slope;
  r.sigma_slope_analytic = line.sigma_slope;
  r.chi2 = line.chi2;
  r.n_points = points.size();
  r.dof = points.size() - (through_origin ? 1 : 2);
  if (!through_origin) {
    r.intercept = line.intercept;
    r.sigma_intercept = line.sigma_intercept;
  }
  if (r.dof >= 1) {
    r.chi2_reduced = r.chi2 / static_cast<double>(r.dof);
    r.sigma_slope_scaled = r.sigma_slope_analytic * std::sqrt(*r.chi2_reduced);
  }
  return r;
}

FitReport MakeFitReport(std::span<const MoleculeRecord> records,
                        const FitOptions& options) {
  if (records.empty()) throw DomainError("no records to fit");
  FitReport report;
  for (const auto& rec : records) {
    rec.Validate();
    report.points.push_back({Abscissa(rec), rec.d.m2_per_s(), rec.sigma_d});
  }
  report.fit = WeightedFit(report.points, options.through_origin);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const FitPoint& p = report.points[i];
    const double yhat = report.fit.Predict(p.x);
    report.residuals.push_back(
        {records[i].label, p.x, p.y, yhat, (p.y - yhat) / p.sigma});
  }
  return report;
}

namespace {

nlohmann::json OrNull(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string FitReportJson(const FitReport& report) {
  const FitResult& f = report.fit;
  nlohmann::ordered_json j;
  j["slope_J_s"] = f.slope;
  j["sigma_slope_analytic_J_s"] = f.sigma_slope_analytic;
  j["sigma_slope_scaled_J_s"] = OrNull(f.sigma_slope_scaled);
  j["chi2"] = f.chi2;
  j["dof"] = f.dof;
  j["chi2_reduced"] = OrNull(f.chi2_reduced);
  j["n_points"] = f.n_points;
  j["through_origin"] = !f.intercept.has_value();
  if (f.intercept) {
    j["intercept_m2_s"] = *f.intercept;
    j["sigma_intercept_m2_s"] = OrNull(f.sigma_intercept);
  }
  auto& rows = j["points"] = nlohmann::ordered_json::array();
  for (const auto& r : report.residuals) {
    rows.push_back({{"label", r.label},
                    {"x_per_kg", r.x},
                    {"y_m2_s", r.y},
                    {"yhat_m2_s", r.yhat},
                    {"normalized_residual", r.normalized}});
  }
  return j.dump(2);
}

void WriteFitReportJson(const FitReport& report,
                        const std::filesystem::path& path) {
  auto out = csv::OpenOut(path);
  out << FitReportJson(report) << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<std::filesystem::path> WritePlotBundle(
    const FitReport& report, const std::filesystem::path& dir) {
  const auto points_path = dir / "fit_points.csv";
  const auto line_path = dir / "fit_line.csv";
  {
    auto out = csv::OpenOut(points_path);
    out << "x_per_kg,y_m2_s,sigma_m2_s\n";
    for (const auto& p : report.points) {
      out << csv::FormatDouble(p.x) << ',' << csv::FormatDouble(p.y) << ','
          << csv::FormatDouble(p.sigma) << '\n';
    }
  }
  {
    auto out = csv::OpenOut(line_path);
    out << "x_per_kg,yhat_m2_s\n";
    double lo = report.points.front().x, hi = lo;
    for (const auto& p : report.points) {
      lo = std::min(lo, p.x);
      hi = std::max(hi, p.x);
    }
    for (std::size_t i = 0; i < kFitLineSamples; ++i) {
      const double t = static_cast<double>(i) / (kFitLineSamples - 1);
      const double x = i + 1 == kFitLineSamples ? hi : lo + t * (hi - lo);
      out << csv::FormatDouble(x) << ','
          << csv::FormatDouble(report.fit.Predict(x)) << '\n';
    }
  }
  return {points_path, line_path};
}

std::vector<MoleculeRecord> ReadRecordsCsv(std::istream& in,
                                           const std::string& source_name,
                                           const PhysicalConstants& constants) {
  static const std::vector<std::string> kHeader{
      "label", "mass_kDa", "D_um2_s", "sigma_D_um2_s", "source"};
  csv::ExpectHeader(in, kHeader, source_name);
  std::vector<MoleculeRecord> records;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::Trim(line).empty()) continue;
    const auto f = csv::SplitLine(line);
    const std::string at = source_name + ": line " + std::to_string(line_no);
    if (f.size() != kHeader.size()) {
      throw ParseError(at + ": expected 5 columns, got " + std::to_string(f.size()));
    }
    const double kda = csv::ParseDouble(f[1], at + ", column mass_kDa");
    const double d = csv::ParseDouble(f[2], at + ", column D_um2_s");
    const double sigma = csv::ParseDouble(f[3], at + ", column sigma_D_um2_s");
    if (kda <= 0.0) throw ParseError(at + ", column mass_kDa: must be positive");
    if (d < 0.0) throw ParseError(at + ", column D_um2_s: must be non-negative");
    if (sigma <= 0.0) {
      throw ParseError(at + ", column sigma_D_um2_s: must be positive");
    }
    records.push_back({csv::Trim(f[0]), MassFromKda(kda, constants), DFromUm2s(d),
                       Um2sToSi(sigma), csv::Trim(f[4])});
  }
  return records;
}

std::vector<MoleculeRecord> ReadRecordsCsv(const std::filesystem::path& path,
                                           const PhysicalConstants& constants) {
  auto in = csv::OpenIn(path);
  return ReadRecordsCsv(in, path.string(), constants);
}

}  // namespace qwalk
