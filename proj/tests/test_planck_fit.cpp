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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "oracle/fit_oracle.hpp"
#include "qwalk/error.hpp"
#include "qwalk/planck_fit.hpp"
#include "qwalk/quantum_model.hpp"

using namespace qwalk;
namespace fs = std::filesystem;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<FitPoint> Table1Points() {
  std::vector<FitPoint> pts;
  for (const auto& r : Table1Dataset()) pts.push_back({Abscissa(r), r.d.m2_per_s(), r.sigma_d});
  return pts;
}

std::vector<oracle::Pt> ToOracle(const std::vector<FitPoint>& pts) {
  std::vector<oracle::Pt> out;
  for (const auto& p : pts) out.push_back({p.x, p.y, p.sigma});
  return out;
}

double Rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("built-in dataset") {
  const auto t = Table1Dataset();
  REQUIRE(t.size() == 5);
  CHECK(Rel(t[0].mass.kilograms(), 1.743567e-21) <= kEps);
  CHECK(Rel(t[4].d.m2_per_s(), 2.3e-13) <= kEps);
  CHECK(Rel(t[4].sigma_d, 8e-14) <= kEps);
  const char* sources[] = {"[15]", "[16]", "[16]", "[17]", "[18]"};
  for (int i = 0; i < 5; ++i) CHECK(t[i].source == sources[i]);
}

TEST_CASE("abscissa") {
  const auto t = Table1Dataset();
  CHECK(Rel(Abscissa(t[4]), 2.007379125665948e21) < 1e-15);
  CHECK(Rel(Abscissa(t[0]), 9.5589482174568954e19) < 1e-15);
  // As usually quoted, to 6-7 significant digits.
  CHECK(Rel(Abscissa(t[4]), 2.0073785e21) < 1e-6);
  CHECK(Rel(Abscissa(t[0]), 9.55895e19) < 1e-6);
  auto doubled = t[2];
  doubled.mass = Mass(2 * t[2].mass.kilograms());
  CHECK(Abscissa(doubled) * 2 == Abscissa(t[2]));
}

TEST_CASE("exact collinear points") {
  const std::vector<FitPoint> pts{{1.0, 2.5, 0.1}, {3.0, 7.5, 0.1}};
  const auto f = WeightedFit(pts);
  CHECK(f.slope == 2.5);
  CHECK(f.chi2 == 0.0);
  CHECK(f.dof == 1);
  CHECK(*f.chi2_reduced == 0.0);
  CHECK_FALSE(f.intercept.has_value());
}

TEST_CASE("built-in data through-origin fit matches the chi^2 minimizer") {
  const auto pts = Table1Points();
  const auto f = WeightedFit(pts);
  const auto o = oracle::ThroughOrigin(ToOracle(pts), 0.5e-34, 2e-34);

  CHECK(Rel(f.slope, o.slope) < 1e-7);
  CHECK(Rel(f.chi2, o.chi2) < 1e-7);
  CHECK(Rel(f.sigma_slope_analytic, o.sigma_slope) < 1e-4);

  // Frozen values from an independent closed-form evaluation.
  CHECK(std::abs(f.slope - 1.0811537931e-34) < 1e-44);
  CHECK(Rel(f.sigma_slope_analytic, 6.599931e-36) < 1e-6);
  CHECK(Rel(f.chi2, 4.6695721333) < 1e-9);
  CHECK(f.dof == 4);
  CHECK(Rel(*f.chi2_reduced, 1.1673930333) < 1e-9);
  CHECK(Rel(*f.sigma_slope_scaled, 7.130959e-36) < 1e-6);
}

TEST_CASE("built-in data fit with intercept matches the chi^2 minimizer") {
  const auto pts = Table1Points();
  const auto f = WeightedFit(pts, false);
  const auto o = oracle::WithIntercept(ToOracle(pts), 0.5e-34, 2e-34, -5e-14, 5e-14);
  CHECK(Rel(f.slope, o.slope) < 1e-6);
  CHECK(std::abs(*f.intercept - o.intercept) < 1e-20);
  CHECK(Rel(f.chi2, o.chi2) < 1e-7);

  CHECK(Rel(f.slope, 1.1585382261e-34) < 1e-9);
  CHECK(Rel(*f.intercept, -2.7798514174e-15) < 1e-9);
  CHECK(Rel(f.sigma_slope_analytic, 8.121060e-36) < 1e-6);
  CHECK(Rel(*f.sigma_intercept, 1.699885e-15) < 1e-6);
  CHECK(f.dof == 3);
  CHECK(Rel(*f.chi2_reduced, 0.6651029433) < 1e-9);
}

TEST_CASE("degenerate fits") {
  const std::vector<FitPoint> one{{2.0, 5.0, 1.0}};
  const auto f = WeightedFit(one);
  CHECK(f.slope == 2.5);
  CHECK(f.dof == 0);
  CHECK_FALSE(f.chi2_reduced.has_value());
  CHECK_FALSE(f.sigma_slope_scaled.has_value());

  const std::vector<FitPoint> same_x{{2.0, 5.0, 1.0}, {2.0, 6.0, 1.0}, {2.0, 4.0, 1.0}};
  CHECK_THROWS_AS(WeightedFit(same_x, false), RankError);
  CHECK_THROWS_AS(WeightedFit(one, false), DomainError);
  CHECK_THROWS_AS(WeightedFit(std::vector<FitPoint>{}), DomainError);
  CHECK_THROWS_AS(WeightedFit(std::vector<FitPoint>{{1.0, 1.0, 0.0}}), DomainError);

  const std::vector<FitPoint> two{{1.0, 1.0, 1.0}, {2.0, 3.0, 1.0}};
  const auto exact = WeightedFit(two, false);
  CHECK(exact.dof == 0);
  CHECK_FALSE(exact.chi2_reduced.has_value());
}

TEST_CASE("fit properties") {
  const auto base = Table1Points();
  const auto f0 = WeightedFit(base);
  std::mt19937_64 rng(3);

  SUBCASE("sigma scaling") {
    for (double c : {0.25, 4.0, 3.7, 1e-3}) {
      auto pts = base;
      for (auto& p : pts) p.sigma *= c;
      const auto f = WeightedFit(pts);
      CHECK(Rel(f.slope, f0.slope) <= 2 * kEps);
      CHECK(Rel(f.sigma_slope_analytic, c * f0.sigma_slope_analytic) <= 4 * kEps);
      CHECK(Rel(f.chi2, f0.chi2 / (c * c)) <= 1e-14);
      CHECK(Rel(*f.sigma_slope_scaled, *f0.sigma_slope_scaled) <= 1e-14);
    }
  }
  SUBCASE("y scaling with matching sigmas") {
    auto pts = base;
    for (auto& p : pts) {
      p.y *= 3.0;
      p.sigma *= 3.0;
    }
    const auto f = WeightedFit(pts);
    CHECK(Rel(f.slope, 3.0 * f0.slope) <= 4 * kEps);
    CHECK(Rel(*f.chi2_reduced, *f0.chi2_reduced) <= 1e-14);
  }
  SUBCASE("permutations give identical results") {
    auto pts = base;
    for (int i = 0; i < 50; ++i) {
      std::shuffle(pts.begin(), pts.end(), rng);
      for (bool origin : {true, false}) {
        const auto a = WeightedFit(pts, origin);
        const auto b = WeightedFit(base, origin);
        CHECK(a.slope == b.slope);
        CHECK(a.chi2 == b.chi2);
        CHECK(a.sigma_slope_analytic == b.sigma_slope_analytic);
        CHECK(a.intercept == b.intercept);
      }
    }
  }
  SUBCASE("swapping the two 61 kDa rows") {
    auto pts = base;
    std::swap(pts[2], pts[3]);
    CHECK(WeightedFit(pts).chi2 == f0.chi2);
  }
  SUBCASE("noiseless y = hbar x") {
    const double hbar = kCodataHbar;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<FitPoint> pts;
      const int n = 1 + trial % 9;
      for (int i = 0; i < n; ++i) {
        const double x = std::pow(10.0, 19 + 3 * u(rng));
        pts.push_back({x, hbar * x, std::pow(10.0, -15 + 2 * u(rng))});
      }
      CHECK(Rel(WeightedFit(pts).slope, hbar) <= kEps);
    }
  }
}

TEST_CASE("fit report") {
  const auto t = Table1Dataset();
  const auto r = MakeFitReport(t);
  REQUIRE(r.residuals.size() == 5);
  const double frozen[] = {-1.5247808, 1.39696657, 0.10538707, -0.59640862, 0.16214306};
  for (int i = 0; i < 5; ++i) CHECK(r.residuals[i].normalized == doctest::Approx(frozen[i]).epsilon(1e-6));
  const auto worst = std::max_element(r.residuals.begin(), r.residuals.end(), [](auto& a, auto& b) {
    return std::abs(a.normalized) < std::abs(b.normalized);
  });
  CHECK(worst->label == "1050 kDa");

  const auto single = MakeFitReport(std::span(t).first(1));
  CHECK(Rel(single.fit.slope, t[0].d.m2_per_s() / Abscissa(t[0])) <= kEps);
  CHECK_FALSE(single.fit.chi2_reduced.has_value());

  std::vector<MoleculeRecord> ideal = t;
  for (auto& rec : ideal) {
    rec.d = QuantumDiffusionCoefficient(rec.mass, MsdMode::kVolumeSweep);
  }
  const auto self = MakeFitReport(ideal);
  CHECK(Rel(self.fit.slope, kCodataHbar) <= kEps);
  CHECK(self.fit.chi2 <= 1e-25);

  CHECK_THROWS_AS(MakeFitReport(std::vector<MoleculeRecord>{}), DomainError);
}

TEST_CASE("report JSON and plot bundle") {
  const auto dir = fs::temp_directory_path() / "qwalk_test_fit";
  fs::remove_all(dir);
  const auto r = MakeFitReport(Table1Dataset());
  WriteFitReportJson(r, dir / "report.json");
  std::ifstream in(dir / "report.json");
  const auto j = nlohmann::json::parse(in);
  for (const char* key : {"slope_J_s", "sigma_slope_analytic_J_s", "sigma_slope_scaled_J_s",
                          "chi2", "dof", "chi2_reduced", "points"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["slope_J_s"].get<double>() == r.fit.slope);
  CHECK(j["points"].size() == 5);

  const auto table = Table1Dataset();
  const auto single = MakeFitReport(std::span(table).first(1));
  CHECK(nlohmann::json::parse(FitReportJson(single))["chi2_reduced"].is_null());

  const auto files = WritePlotBundle(r, dir);
  REQUIRE(files.size() == 2);
  std::ifstream line(dir / "fit_line.csv");
  std::string header, row;
  std::getline(line, header);
  CHECK(header == "x_per_kg,yhat_m2_s");
  int rows = 0;
  std::string last;
  while (std::getline(line, row)) {
    ++rows;
    last = row;
  }
  CHECK(rows == 100);
  std::ifstream pts(dir / "fit_points.csv");
  std::getline(pts, header);
  CHECK(header == "x_per_kg,y_m2_s,sigma_m2_s");
}

TEST_CASE("CSV ingestion") {
  const auto from_file = ReadRecordsCsv(fs::path(QWALK_DATA_DIR) / "table1.csv");
  const auto builtin = Table1Dataset();
  REQUIRE(from_file.size() == builtin.size());
  for (std::size_t i = 0; i < builtin.size(); ++i) {
    CHECK(from_file[i].label == builtin[i].label);
    CHECK(from_file[i].mass == builtin[i].mass);
    CHECK(from_file[i].d == builtin[i].d);
    CHECK(from_file[i].sigma_d == builtin[i].sigma_d);
    CHECK(from_file[i].source == builtin[i].source);
  }

  std::istringstream header_only("label,mass_kDa,D_um2_s,sigma_D_um2_s,source\n");
  const auto empty = ReadRecordsCsv(header_only, "mem");
  CHECK(empty.empty());
  CHECK_THROWS_AS(MakeFitReport(empty), DomainError);

  std::istringstream zero_sigma(
      "label,mass_kDa,D_um2_s,sigma_D_um2_s,source\na,50,0.2,0.01,x\nb,60,0.2,0,y\n");
  try {
    ReadRecordsCsv(zero_sigma, "mem");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3, column sigma_D_um2_s") != std::string::npos);
  }

  std::istringstream missing_col("label,mass_kDa,D_um2_s,source\na,50,0.2,x\n");
  CHECK_THROWS_AS(ReadRecordsCsv(missing_col, "mem"), ParseError);

  std::istringstream text("label,mass_kDa,D_um2_s,sigma_D_um2_s,source\na,fifty,0.2,0.01,x\n");
  try {
    ReadRecordsCsv(text, "mem");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2, column mass_kDa") != std::string::npos);
  }
}
