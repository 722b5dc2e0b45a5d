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

// Acceptance gate: one PASS/FAIL line per criterion; non-zero exit if any
// criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "qwalk/planck_fit.hpp"
#include "qwalk/quantum_model.hpp"
#include "qwalk/units.hpp"
#include "qwalk/walk_sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qwalk;

namespace {

// Pinned tolerances.
constexpr double kFitSlopeLo = 1.05e-34, kFitSlopeHi = 1.12e-34;
constexpr double kFitChi2Lo = 1.10, kFitChi2Hi = 1.25;
constexpr double kOracleSlope = 1.0811537931223993e-34;
constexpr double kOracleChi2Reduced = 1.1673930333280313;
constexpr double kSlopeAbsTol = 1e-37;
constexpr double kChi2AbsTol = 0.01;
constexpr double kDqRelTol = 1e-6;
constexpr double kWidthEqualityRelTol = 1e-12;
constexpr double kPdeSlopeRelTol = 0.005;
constexpr double kPdeMassDrift = 1e-9;
constexpr double kSimVarRelTol = 0.005, kSimSkew = 0.05, kSimKurt = 0.1;
constexpr double kRoundTripRelTol = 0.05;
constexpr double kMeanNormalizedBound = 0.75;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

int Qwalk(const std::string& args) {
  const std::string cmd =
      std::string("\"") + QWALK_CLI + "\" " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

json ReadJson(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

fs::path Scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "qwalk_acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int failures = 0;

void Report(int id, const char* title, bool ok, const std::string& detail, double secs) {
  std::printf("[%s] %d. %s: %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, title, detail.c_str(),
              secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string Fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

void Criterion1() {
  const auto t0 = Clock::now();
  const auto dir = Scratch("fit");
  const int code = Qwalk("fit --builtin-table1 --out-dir " + dir.string());
  const double secs = Seconds(t0);
  if (code != 0) return Report(1, "built-in data fit", false, "cli exit " + std::to_string(code), secs);
  const auto j = ReadJson(dir / "report.json");
  const double slope = j["slope_J_s"];
  const double chi2r = j["chi2_reduced"];
  const bool ok = slope >= kFitSlopeLo && slope <= kFitSlopeHi && chi2r >= kFitChi2Lo &&
                  chi2r <= kFitChi2Hi && std::abs(slope - kOracleSlope) <= kSlopeAbsTol &&
                  std::abs(chi2r - kOracleChi2Reduced) <= kChi2AbsTol && secs < 1.0;
  Report(1, "built-in data fit", ok, Fmt("slope %.10e J s, chi2_reduced %.6f", slope, chi2r), secs);
}

void Criterion2() {
  const auto t0 = Clock::now();
  const double oracle_um2s[] = {0.010080595583651216, 0.093669250998529, 0.17351844857104552,
                                0.17351844857104552, 0.21169250725667554};
  const auto table = Table1Dataset();
  bool ok = true;
  double worst_dq = 0.0;
  double z1050 = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto dq = QuantumDiffusionCoefficient(table[i].mass, MsdMode::kVolumeSweep);
    const double rel = std::abs(DToUm2s(dq) - oracle_um2s[i]) / oracle_um2s[i];
    worst_dq = std::max(worst_dq, rel);
    ok = ok && rel <= kDqRelTol;
    const double z = (dq.m2_per_s() - table[i].d.m2_per_s()) / table[i].sigma_d;
    if (i == 0) z1050 = z;
    ok = ok && std::abs(z) <= 2.0;
  }
  const auto report = MakeFitReport(table);
  const auto& res = report.residuals;
  const auto worst = std::max_element(res.begin(), res.end(), [](const auto& a, const auto& b) {
    return std::abs(a.normalized) < std::abs(b.normalized);
  });
  ok = ok && worst->label == "1050 kDa" && std::abs(worst->normalized + 1.52) < 0.01;
  const double secs = Seconds(t0);
  Report(2, "quantum-model consistency", ok && secs < 1.0,
         Fmt("max D_q rel dev %.2e, 1050 kDa at %.3f sigma, largest fit residual %.4f", worst_dq,
             z1050, worst->normalized),
         secs);
}

void Criterion3() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int exact = 0;
  for (int i = 0; i < 1000; ++i) {
    const double t = std::pow(10.0, -6 + 9 * u(rng));
    const Mass m(std::pow(10.0, -24 + 4 * u(rng)));
    if (SqlMsd(t, m, MsdMode::kFreeLine) / SqlMsd(t, m, MsdMode::kVolumeSweep) == 3.0) ++exact;
  }
  const double secs = Seconds(t0);
  Report(3, "factor-3 SQL ratio", exact == 1000 && secs < 1.0,
         std::to_string(exact) + "/1000 exactly 3", secs);
}

void Criterion4() {
  const auto t0 = Clock::now();
  const double hbar = kCodataHbar;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bound_ok = 0;
  double worst_eq = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Mass m(std::pow(10.0, -24 + 4 * u(rng)));
    const double t = std::pow(10.0, -6 + 9 * u(rng));
    const double dx0 = std::pow(10.0, -10 + 5 * u(rng));
    const double w = WavepacketWidth({dx0, m}, t);
    const double lin = hbar / m.kilograms() * t;
    // Floating-point slack of a few ulp on the AM-GM bound.
    if (w * w >= 2 * lin * (1 - 4e-16) && 2 * lin >= lin) ++bound_ok;
    const double dx_eq = std::sqrt(lin);
    const double we = WavepacketWidth({dx_eq, m}, t);
    worst_eq = std::max(worst_eq, std::abs(we * we / (2 * lin) - 1.0));
  }
  const double secs = Seconds(t0);
  Report(4, "wave-packet bound", bound_ok == 10000 && worst_eq <= kWidthEqualityRelTol && secs < 1.0,
         Fmt("%.0f/10000 satisfy bound, equality rel dev %.2e", bound_ok, worst_eq), secs);
}

void Criterion5() {
  const auto t0 = Clock::now();
  const auto dir = Scratch("pde");
  const int code = Qwalk(
      "pde --mass-kda 61 --sigma0 1e-6 --tau 1 --grid-n 1024 --half-width 2e-5 "
      "--checkpoints 20 --out-dir " + dir.string());
  const double secs = Seconds(t0);
  if (code != 0) return Report(5, "diffusion equation", false, "cli exit " + std::to_string(code), secs);
  const auto j = ReadJson(dir / "pde.json");
  const double rel = j["relative_error"];
  const double drift = j["max_mass_drift"];
  const bool ok = std::abs(rel) <= kPdeSlopeRelTol && drift < kPdeMassDrift &&
                  j["trace_length"].get<int>() >= 21 && secs < 10.0;
  Report(5, "diffusion equation", ok,
         Fmt("slope rel err %.2e, mass drift %.2e, r %.3f", rel, drift,
             j["stability_number"].get<double>()),
         secs);
}

void Criterion6() {
  const auto t0 = Clock::now();
  SimConfig cfg;
  cfg.d_total = DiffusionCoefficient(1.7e-13);
  cfg.dt = 0.01;
  cfg.n_steps = 1000;
  cfg.dims = 2;
  cfg.n_trajectories = 1000;
  cfg.seed = 20240601;
  const auto e1 = SimulateEnsemble(cfg, 1);
  const auto stats = ComputeIncrementStats(e1);
  const double target = 2 * cfg.d_total.m2_per_s() * cfg.dt;
  double var_dev = 0, skew = 0, kurt = 0;
  for (int a = 0; a < cfg.dims; ++a) {
    var_dev = std::max(var_dev, std::abs(stats.variance[a] / target - 1));
    skew = std::max(skew, std::abs(stats.skewness[a]));
    kurt = std::max(kurt, std::abs(stats.excess_kurtosis[a]));
  }
  bool same = true;
  for (unsigned threads : {1u, 3u, 8u, 0u}) {
    same = same && SimulateEnsemble(cfg, threads).trajectories == e1.trajectories;
  }
  const double secs = Seconds(t0);
  const bool ok = stats.count >= 1000000 && var_dev <= kSimVarRelTol && skew < kSimSkew &&
                  kurt < kSimKurt && same && secs < 10.0;
  Report(6, "simulator statistics", ok,
         Fmt("var rel dev %.2e, |skew| %.3f, |kurt| %.3f, ", var_dev, skew, kurt) +
             std::to_string(stats.count) + " increments/axis, thread-invariant " +
             (same ? "yes" : "no"),
         secs);
}

void Criterion7() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (double f : {0.5, 1.0, 2.0}) {
    const auto dir = Scratch("rt_" + std::to_string(f));
    char hbar[64];
    std::snprintf(hbar, sizeof hbar, "%.17g", f * kCodataHbar);
    if (Qwalk(std::string("roundtrip --hbar ") + hbar + " --out-dir " + dir.string()) != 0) {
      ok = false;
      detail += "cli failure; ";
      continue;
    }
    const double rel = ReadJson(dir / "roundtrip.json")["relative_error"];
    ok = ok && std::abs(rel) <= kRoundTripRelTol;
    detail += Fmt("%.1fx rel %.2e; ", f, rel);
  }
  double sum = 0;
  for (int seed = 1; seed <= 10; ++seed) {
    const auto dir = Scratch("rt_seed" + std::to_string(seed));
    if (Qwalk("roundtrip --seed " + std::to_string(seed) + " --out-dir " + dir.string()) != 0) {
      ok = false;
      continue;
    }
    sum += ReadJson(dir / "roundtrip.json")["normalized_error"].get<double>();
  }
  const double mean = sum / 10;
  ok = ok && std::abs(mean) <= kMeanNormalizedBound;
  const double secs = Seconds(t0);
  Report(7, "hbar round trip", ok && secs < 120.0,
         detail + Fmt("mean normalized error over 10 seeds %.3f", mean), secs);
}

void Criterion8() {
  const auto t0 = Clock::now();
  std::vector<FitPoint> base;
  for (const auto& r : Table1Dataset()) base.push_back({Abscissa(r), r.d.m2_per_s(), r.sigma_d});
  const auto f0 = WeightedFit(base);
  constexpr double eps = 2.220446049250313e-16;
  bool ok = true;
  for (double c : {0.1, 2.0, 7.3, 1e3}) {
    auto pts = base;
    for (auto& p : pts) p.sigma *= c;
    const auto f = WeightedFit(pts);
    ok = ok && std::abs(f.slope / f0.slope - 1) <= 2 * eps;
    ok = ok && std::abs(f.sigma_slope_analytic / (c * f0.sigma_slope_analytic) - 1) <= 4 * eps;
    ok = ok && std::abs(*f.sigma_slope_scaled / *f0.sigma_slope_scaled - 1) <= 1e-14;
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_ulp = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<FitPoint> pts;
    for (int i = 0, n = 1 + trial % 12; i < n; ++i) {
      const double x = std::pow(10.0, 19 + 3 * u(rng));
      pts.push_back({x, kCodataHbar * x, std::pow(10.0, -15 + 2 * u(rng))});
    }
    worst_ulp = std::max(worst_ulp, std::abs(WeightedFit(pts).slope / kCodataHbar - 1) / eps);
  }
  ok = ok && worst_ulp <= 1.0;
  auto perm = base;
  for (int i = 0; i < 100; ++i) {
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto f = WeightedFit(perm);
    ok = ok && f.slope == f0.slope && f.chi2 == f0.chi2 &&
         f.sigma_slope_analytic == f0.sigma_slope_analytic;
  }
  const double secs = Seconds(t0);
  Report(8, "fit properties", ok && secs < 1.0,
         Fmt("worst noiseless recovery %.2f ulp", worst_ulp), secs);
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{Criterion1, Criterion2, Criterion3,
                                                    Criterion4, Criterion5, Criterion6,
                                                    Criterion7, Criterion8};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("[FAIL] exception: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
