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

// qwalk: command-line front end over the libqwalk C API.
//
// Exit codes: 0 success, 1 usage / parse / I/O error, 2 numerical or
// configuration error.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwalk/qwalk.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr char kToolVersion[] = "0.1.0";

struct CliFailure {
  int exit_code;
  std::string message;
};

int ExitCodeFor(qw_status s) {
  switch (s) {
    case QW_OK:
      return 0;
    case QW_ERR_INVALID_ARGUMENT:
    case QW_ERR_PARSE:
    case QW_ERR_IO:
      return 1;
    default:
      return 2;
  }
}

void Check(qw_status s, const std::string& context) {
  if (s != QW_OK) {
    throw CliFailure{ExitCodeFor(s), context + ": " + qw_status_name(s) + ": " +
                                         qw_last_error()};
  }
}

void Usage(const std::string& message) { throw CliFailure{1, message}; }

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Ensemble = std::unique_ptr<qw_ensemble, Deleter<qw_ensemble, qw_ensemble_free>>;
using Msd = std::unique_ptr<qw_msd, Deleter<qw_msd, qw_msd_free>>;
using Records = std::unique_ptr<qw_records, Deleter<qw_records, qw_records_free>>;
using Fit = std::unique_ptr<qw_fit, Deleter<qw_fit, qw_fit_free>>;
using PdeResult =
    std::unique_ptr<qw_pde_result, Deleter<qw_pde_result, qw_pde_result_free>>;
using RoundTrip =
    std::unique_ptr<qw_roundtrip, Deleter<qw_roundtrip, qw_roundtrip_free>>;

std::string Num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : "nan";
}

void WriteJson(const fs::path& path, const json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw CliFailure{1, "cannot write '" + path.string() + "'"};
  out << j.dump(2) << '\n';
}

// Written alongside every command's outputs.
struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  json parameters = json::object();
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> outputs;

  void Write(const fs::path& path) {
    json j;
    j["command"] = command;
    j["argv"] = argv;
    j["parameters"] = parameters;
    j["seeds"] = seeds;
    j["tool_version"] = kToolVersion;
    j["library_version"] = qw_version();
    j["outputs"] = outputs;
    WriteJson(path, j);
  }
};

qw_mode ParseMode(const std::string& m) {
  if (m == "free") return QW_MODE_FREE_LINE;
  if (m == "sweep") return QW_MODE_VOLUME_SWEEP;
  Usage("--mode must be 'free' or 'sweep', got '" + m + "'");
  return QW_MODE_VOLUME_SWEEP;
}

double MassKg(double kda) {
  double kg = 0.0;
  Check(qw_mass_from_kda(nullptr, kda, &kg), "--mass-kda");
  return kg;
}

// ---- fit ------------------------------------------------------------------

struct FitArgs {
  std::string data;
  bool builtin = false;
  bool intercept = false;
  std::string out_dir = "fit_out";
};

void RunFit(const FitArgs& a, Manifest& m) {
  if (a.builtin == !a.data.empty()) {
    Usage("fit: give exactly one of --data <csv> or --builtin-table1");
  }
  qw_records* raw = nullptr;
  if (a.builtin) {
    Check(qw_records_table1(nullptr, &raw), "built-in dataset");
  } else {
    if (!fs::exists(a.data)) Usage("fit: input file '" + a.data + "' does not exist");
    Check(qw_records_read_csv(nullptr, a.data.c_str(), &raw), a.data);
  }
  Records records(raw);
  if (qw_records_size(records.get()) == 0) {
    throw CliFailure{2, "fit: no data rows to fit"};
  }
  qw_fit* fit_raw = nullptr;
  Check(qw_fit_records(records.get(), a.intercept ? 0 : 1, &fit_raw), "fit");
  Fit fit(fit_raw);

  const fs::path dir = a.out_dir;
  fs::create_directories(dir);
  const fs::path report = dir / "report.json";
  Check(qw_fit_write_report(fit.get(), report.c_str()), report.string());
  Check(qw_fit_write_plot_bundle(fit.get(), dir.c_str()), dir.string());

  qw_fit_summary s{};
  Check(qw_fit_summary_get(fit.get(), &s), "fit summary");
  std::cout << "slope_J_s             " << Num(s.slope) << '\n'
            << "sigma_analytic_J_s    " << Num(s.sigma_slope_analytic) << '\n'
            << "sigma_scaled_J_s      "
            << (s.has_scaled ? Num(s.sigma_slope_scaled) : "n/a") << '\n'
            << "chi2                  " << Num(s.chi2) << '\n'
            << "dof                   " << s.dof << '\n'
            << "chi2_reduced          "
            << (s.has_chi2_reduced ? Num(s.chi2_reduced) : "n/a") << '\n';
  if (s.has_intercept) {
    std::cout << "intercept_m2_s        " << Num(s.intercept) << " +- "
              << Num(s.sigma_intercept) << '\n';
  }

  m.parameters = {{"data", a.builtin ? json(nullptr) : json(a.data)},
                  {"builtin_table1", a.builtin},
                  {"through_origin", !a.intercept},
                  {"out_dir", a.out_dir}};
  m.outputs = {report.string(), (dir / "fit_points.csv").string(),
               (dir / "fit_line.csv").string()};
  m.Write(dir / "manifest.json");
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  double mass_kda = 0.0;
  double d0_um2s = 0.0;
  std::string mode = "sweep";
  double dt = 0.01;
  std::uint64_t n_steps = 2000;
  std::uint64_t n_traj = 1;
  int dims = 1;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
};

void RunSimulate(const SimulateArgs& a, Manifest& m) {
  const double mass = MassKg(a.mass_kda);
  double d0 = 0.0;
  Check(qw_d_from_um2s(a.d0_um2s, &d0), "--d0-um2s");
  double d_total = 0.0;
  Check(qw_total_diffusion(nullptr, d0, mass, ParseMode(a.mode), &d_total),
        "total diffusion");

  const qw_sim_config config{d_total, a.dt, a.n_steps, a.dims, a.n_traj, a.seed};
  qw_ensemble* raw = nullptr;
  Check(qw_simulate_ensemble(&config, a.threads, &raw), "simulate");
  Ensemble ensemble(raw);
  Check(qw_ensemble_write_csv(ensemble.get(), a.out.c_str()), a.out);

  double d_um2s = 0.0;
  Check(qw_d_to_um2s(d_total, &d_um2s), "units");
  std::cout << "simulated " << a.n_traj << " trajectories at D = " << Num(d_um2s)
            << " um^2/s into " << a.out << '\n';

  m.parameters = {{"mass_kda", a.mass_kda}, {"mass_kg", mass},
                  {"d0_um2s", a.d0_um2s},   {"mode", a.mode},
                  {"d_total_m2_s", d_total}, {"d_total_um2_s", d_um2s},
                  {"dt_s", a.dt},           {"n_steps", a.n_steps},
                  {"n_traj", a.n_traj},     {"dims", a.dims},
                  {"seed", a.seed},         {"out", a.out}};
  m.seeds = {a.seed};
  char name[32];
  for (std::uint64_t i = 0; i < a.n_traj; ++i) {
    std::snprintf(name, sizeof(name), "traj_%05llu.csv",
                  static_cast<unsigned long long>(i));
    m.outputs.push_back((fs::path(a.out) / name).string());
  }
  m.Write(fs::path(a.out) / "manifest.json");
}

// ---- msd / estimate-d -----------------------------------------------------

qw_msd_kind ParseKind(const std::string& k) {
  if (k == "ensemble") return QW_MSD_ENSEMBLE;
  if (k == "time-averaged") return QW_MSD_TIME_AVERAGED;
  if (k == "pooled") return QW_MSD_POOLED;
  Usage("--kind must be ensemble, time-averaged or pooled");
  return QW_MSD_ENSEMBLE;
}

struct MsdArgs {
  std::string traj;
  std::optional<std::size_t> max_lag;
  std::string kind = "ensemble";
  std::size_t traj_index = 0;
  std::string out;
};

Msd ComputeMsd(const MsdArgs& a, std::size_t* resolved_lag) {
  if (!fs::exists(a.traj)) Usage("trajectory input '" + a.traj + "' does not exist");
  qw_ensemble* raw = nullptr;
  Check(qw_ensemble_read_csv(a.traj.c_str(), &raw), a.traj);
  Ensemble ensemble(raw);
  const double* data = nullptr;
  std::size_t n_points = 0;
  Check(qw_ensemble_positions(ensemble.get(), 0, &data, &n_points), a.traj);
  const std::size_t lag = a.max_lag.value_or(std::min<std::size_t>(10, n_points - 1));
  *resolved_lag = lag;
  qw_msd* msd = nullptr;
  Check(qw_msd_compute(ensemble.get(), ParseKind(a.kind), a.traj_index, lag, &msd),
        "msd");
  return Msd(msd);
}

void RunMsd(const MsdArgs& a, Manifest& m) {
  std::size_t lag = 0;
  Msd msd = ComputeMsd(a, &lag);
  Check(qw_msd_write_csv(msd.get(), a.out.c_str()), a.out);
  std::cout << "wrote " << qw_msd_size(msd.get()) << " MSD points to " << a.out
            << '\n';
  m.parameters = {{"traj", a.traj}, {"max_lag", lag}, {"kind", a.kind},
                  {"traj_index", a.traj_index}, {"out", a.out}};
  m.outputs = {a.out};
  m.Write(a.out + ".manifest.json");
}

struct EstimateArgs {
  std::string msd;
  MsdArgs from_traj;
  std::size_t lags_used = 0;
  int dims = 1;
  bool offset = false;
  std::string out;
};

void RunEstimate(const EstimateArgs& a, Manifest& m) {
  if (a.msd.empty() == a.from_traj.traj.empty()) {
    Usage("estimate-d: give exactly one of --msd <csv> or --traj <path>");
  }
  Msd msd;
  std::size_t lag = 0;
  if (!a.msd.empty()) {
    if (!fs::exists(a.msd)) Usage("MSD input '" + a.msd + "' does not exist");
    qw_msd* raw = nullptr;
    Check(qw_msd_read_csv(a.msd.c_str(), &raw), a.msd);
    msd.reset(raw);
  } else {
    msd = ComputeMsd(a.from_traj, &lag);
  }
  qw_d_estimate e{};
  Check(qw_estimate_d(msd.get(), a.dims, a.lags_used, a.offset ? 1 : 0, &e),
        "estimate-d");
  json j;
  j["d_m2_s"] = e.d;
  j["sigma_d_m2_s"] = e.sigma_d;
  j["lags_used"] = e.lags_used;
  j["dims"] = e.dims;
  j["offset_m2"] = e.has_offset ? json(e.offset) : json(nullptr);
  double um = 0.0;
  Check(qw_d_to_um2s(e.d, &um), "units");
  j["d_um2_s"] = um;
  WriteJson(a.out, j);
  std::cout << "D = " << Num(e.d) << " +- " << Num(e.sigma_d) << " m^2/s ("
            << Num(um) << " um^2/s) from " << e.lags_used << " lags\n";

  m.parameters = {{"msd", a.msd.empty() ? json(nullptr) : json(a.msd)},
                  {"traj", a.from_traj.traj.empty() ? json(nullptr)
                                                    : json(a.from_traj.traj)},
                  {"kind", a.from_traj.kind},
                  {"max_lag", lag},
                  {"lags_used", a.lags_used},
                  {"dims", a.dims},
                  {"offset", a.offset},
                  {"out", a.out}};
  m.outputs = {a.out};
  m.Write(a.out + ".manifest.json");
}

// ---- wavepacket -----------------------------------------------------------

struct WavepacketArgs {
  double mass_kda = 0.0;
  double dx0 = 0.0;
  double t_max = 0.0;
  std::size_t samples = 101;
  std::string out;
};

void RunWavepacket(const WavepacketArgs& a, Manifest& m) {
  if (a.samples < 2) throw CliFailure{2, "--samples must be at least 2"};
  if (!(a.t_max > 0.0) || !std::isfinite(a.t_max)) {
    throw CliFailure{2, "--t-max must be finite and positive"};
  }
  const double mass = MassKg(a.mass_kda);
  const fs::path out_path = a.out;
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  std::ofstream out(out_path);
  if (!out) throw CliFailure{1, "cannot write '" + a.out + "'"};
  out << "t_s,dx_m,sql_msd_m2,sweep_msd_m2\n";
  for (std::size_t i = 0; i < a.samples; ++i) {
    const double t = i + 1 == a.samples
                         ? a.t_max
                         : a.t_max * static_cast<double>(i) / (a.samples - 1);
    double dx = 0, free_line = 0, sweep = 0;
    Check(qw_wavepacket_width(nullptr, a.dx0, mass, t, &dx), "wavepacket");
    Check(qw_sql_msd(nullptr, t, mass, QW_MODE_FREE_LINE, &free_line), "sql");
    Check(qw_sql_msd(nullptr, t, mass, QW_MODE_VOLUME_SWEEP, &sweep), "sql");
    out << Num(t) << ',' << Num(dx) << ',' << Num(free_line) << ',' << Num(sweep)
        << '\n';
  }
  if (!out) throw CliFailure{1, "write failed for '" + a.out + "'"};
  m.parameters = {{"mass_kda", a.mass_kda}, {"mass_kg", mass}, {"dx0_m", a.dx0},
                  {"t_max_s", a.t_max},     {"samples", a.samples},
                  {"out", a.out}};
  m.outputs = {a.out};
  m.Write(a.out + ".manifest.json");
}

// ---- pde ------------------------------------------------------------------

struct PdeArgs {
  double mass_kda = 0.0;
  double sigma0 = 0.0;
  double tau = 0.0;
  std::size_t grid_n = 1024;
  double half_width = 0.0;
  std::size_t checkpoints = 20;
  std::size_t n_time_steps = 0;
  std::string out_dir = "pde_out";
};

constexpr double kPdeSlopeTolerance = 0.005;

void RunPde(const PdeArgs& a, Manifest& m) {
  const double mass = MassKg(a.mass_kda);
  const qw_pde_params p{mass,     a.sigma0,        a.tau,          a.grid_n,
                        a.half_width, a.checkpoints, a.n_time_steps};
  qw_pde_result* raw = nullptr;
  const qw_status st = qw_pde_run(nullptr, &p, &raw);
  if (st == QW_ERR_CONFIG) {
    std::string hint = qw_last_error();
    if (hint.find("domain too small") != std::string::npos) {
      hint += " (increase --half-width or reduce --tau)";
    } else if (hint.find("time steps") != std::string::npos) {
      hint += " (raise --n-time-steps, or pass 0 to choose automatically)";
    } else if (hint.find("grid") != std::string::npos) {
      hint += " (use an even --grid-n >= 16)";
    } else if (hint.find("sigma0") != std::string::npos) {
      hint += " (make --half-width at least 10 * --sigma0)";
    }
    throw CliFailure{2, std::string("pde: configuration error: ") + hint};
  }
  Check(st, "pde");
  PdeResult result(raw);
  qw_pde_summary s{};
  Check(qw_pde_summary_get(result.get(), &s), "pde");

  const fs::path dir = a.out_dir;
  fs::create_directories(dir);
  const fs::path trace = dir / "variance_trace.csv";
  const fs::path field = dir / "field_final.csv";
  const fs::path summary = dir / "pde.json";
  Check(qw_pde_write_trace_csv(result.get(), trace.c_str()), trace.string());
  Check(qw_pde_write_field_csv(result.get(), field.c_str()), field.string());

  json j;
  j["fitted_slope_m2_s"] = s.has_slope ? json(s.fitted_slope) : json(nullptr);
  j["expected_slope_m2_s"] = s.expected_slope;
  j["relative_error"] = s.has_slope ? json(s.relative_error) : json(nullptr);
  j["within_tolerance"] =
      s.has_slope ? json(std::abs(s.relative_error) <= kPdeSlopeTolerance)
                  : json(nullptr);
  j["tolerance"] = kPdeSlopeTolerance;
  j["max_mass_drift"] = s.max_mass_drift;
  j["stability_number"] = s.stability_number;
  j["n_time_steps"] = s.n_time_steps;
  j["trace_length"] = s.trace_length;
  WriteJson(summary, j);

  if (s.has_slope) {
    std::cout << "variance slope " << Num(s.fitted_slope) << " m^2/s vs hbar/m "
              << Num(s.expected_slope) << " (rel. error "
              << Num(s.relative_error) << ")\n";
  } else {
    std::cout << "no evolution (tau = 0); trace has one point\n";
  }
  m.parameters = {{"mass_kda", a.mass_kda},     {"mass_kg", mass},
                  {"sigma0_m", a.sigma0},       {"tau_s", a.tau},
                  {"grid_n", a.grid_n},         {"half_width_m", a.half_width},
                  {"checkpoints", a.checkpoints}, {"n_time_steps", s.n_time_steps},
                  {"out_dir", a.out_dir}};
  m.outputs = {trace.string(), field.string(), summary.string()};
  m.Write(dir / "manifest.json");
}

// ---- roundtrip ------------------------------------------------------------

struct RoundTripArgs {
  double hbar = 0.0;
  std::vector<double> masses_kda;
  std::uint64_t n_traj = 0;
  std::uint64_t n_steps = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  std::size_t max_lag = 0;
  std::size_t lags_used = 0;
  unsigned threads = 0;
  bool write_trajectories = false;
  std::string out_dir = "roundtrip_out";
};

void RunRoundTrip(const RoundTripArgs& a, Manifest& m) {
  qw_roundtrip_params p = qw_roundtrip_default_params();
  p.hbar = a.hbar;
  p.masses_kda = a.masses_kda.empty() ? nullptr : a.masses_kda.data();
  p.n_masses = a.masses_kda.size();
  p.n_trajectories = a.n_traj;
  p.n_steps = a.n_steps;
  p.dt = a.dt;
  p.seed = a.seed;
  p.max_lag = a.max_lag;
  p.lags_used = a.lags_used;
  p.threads = a.threads;
  qw_roundtrip* raw = nullptr;
  Check(qw_roundtrip_run(&p, &raw), "roundtrip");
  RoundTrip rt(raw);

  const fs::path dir = a.out_dir;
  fs::create_directories(dir);
  json estimates = json::array();
  for (std::size_t i = 0; i < qw_roundtrip_mass_count(rt.get()); ++i) {
    qw_roundtrip_mass mass{};
    Check(qw_roundtrip_mass_get(rt.get(), i, &mass), "roundtrip");
    const fs::path msd_path = dir / ("msd_mass" + std::to_string(i) + ".csv");
    Check(qw_msd_write_csv(qw_roundtrip_msd(rt.get(), i), msd_path.c_str()),
          msd_path.string());
    m.outputs.push_back(msd_path.string());
    m.seeds.push_back(mass.seed);
    estimates.push_back({{"mass_kda", mass.mass_kda},
                         {"d_true_m2_s", mass.d_true},
                         {"d_m2_s", mass.d_est},
                         {"sigma_d_m2_s", mass.sigma_d},
                         {"seed", mass.seed}});
    if (a.write_trajectories) {
      const qw_sim_config c{mass.d_true, a.dt, a.n_steps, 1, a.n_traj, mass.seed};
      qw_ensemble* e = nullptr;
      Check(qw_simulate_ensemble(&c, a.threads, &e), "simulate");
      Ensemble ensemble(e);
      const fs::path tdir = dir / ("trajectories_mass" + std::to_string(i));
      Check(qw_ensemble_write_csv(ensemble.get(), tdir.c_str()), tdir.string());
      m.outputs.push_back(tdir.string());
    }
  }
  const fs::path est_path = dir / "estimates.json";
  WriteJson(est_path, estimates);

  const qw_fit* fit = qw_roundtrip_fit(rt.get());
  const fs::path report = dir / "report.json";
  Check(qw_fit_write_report(fit, report.c_str()), report.string());
  Check(qw_fit_write_plot_bundle(fit, dir.c_str()), dir.string());
  qw_fit_summary s{};
  Check(qw_fit_summary_get(fit, &s), "fit");
  double rel = 0, norm = 0;
  Check(qw_roundtrip_errors(rt.get(), &rel, &norm), "roundtrip");

  json summary;
  summary["injected_hbar_J_s"] = a.hbar;
  summary["recovered_slope_J_s"] = s.slope;
  summary["sigma_slope_analytic_J_s"] = s.sigma_slope_analytic;
  summary["sigma_slope_scaled_J_s"] = s.has_scaled ? json(s.sigma_slope_scaled)
                                                    : json(nullptr);
  summary["chi2_reduced"] = s.has_chi2_reduced ? json(s.chi2_reduced) : json(nullptr);
  summary["relative_error"] = rel;
  summary["normalized_error"] = norm;
  const fs::path summary_path = dir / "roundtrip.json";
  WriteJson(summary_path, summary);

  std::cout << "injected hbar " << Num(a.hbar) << ", recovered " << Num(s.slope)
            << " +- " << Num(s.sigma_slope_analytic) << " (rel. error "
            << Num(rel) << ")\n";

  m.parameters = {{"hbar_J_s", a.hbar},
                  {"masses_kda", a.masses_kda.empty()
                                     ? json({1050, 113, 61, 61, 50})
                                     : json(a.masses_kda)},
                  {"n_traj", a.n_traj},
                  {"n_steps", a.n_steps},
                  {"dt_s", a.dt},
                  {"seed", a.seed},
                  {"max_lag", a.max_lag},
                  {"lags_used", a.lags_used},
                  {"msd_kind", "pooled"},
                  {"write_trajectories", a.write_trajectories},
                  {"out_dir", a.out_dir}};
  m.outputs.insert(m.outputs.end(),
                   {est_path.string(), report.string(),
                    (dir / "fit_points.csv").string(),
                    (dir / "fit_line.csv").string(), summary_path.string()});
  m.Write(dir / "manifest.json");
}

int Run(std::vector<std::string> args, int depth);

int RunReplay(const std::string& manifest_path, int depth) {
  if (depth > 0) Usage("replay: a manifest cannot replay another replay");
  std::ifstream in(manifest_path);
  if (!in) Usage("replay: cannot open manifest '" + manifest_path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    Usage("replay: malformed manifest '" + manifest_path + "': " + e.what());
  }
  if (!j.contains("argv") || !j["argv"].is_array() || j["argv"].empty()) {
    Usage("replay: manifest '" + manifest_path + "' has no argv");
  }
  return Run(j["argv"].get<std::vector<std::string>>(), depth + 1);
}

int Run(std::vector<std::string> args, int depth) {
  CLI::App app{"qwalk: quantum contribution to single-molecule random walks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Weighted fit of D against 1/(6m)");
  fit_cmd->add_option("--data", fit.data,
                      "CSV: label,mass_kDa,D_um2_s,sigma_D_um2_s,source");
  fit_cmd->add_flag("--builtin-table1", fit.builtin, "Use the built-in dataset");
  fit_cmd->add_flag("--intercept", fit.intercept, "Fit a constant D0 as well");
  fit_cmd->add_option("--out-dir", fit.out_dir, "Output directory")
      ->capture_default_str();

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate random walks");
  sim_cmd->add_option("--mass-kda", sim.mass_kda, "Molecular mass, kDa")->required();
  sim_cmd->add_option("--d0-um2s", sim.d0_um2s, "Classical D0, um^2/s")
      ->capture_default_str();
  sim_cmd->add_option("--mode", sim.mode, "free (hbar/2m) or sweep (hbar/6m)")
      ->capture_default_str();
  sim_cmd->add_option("--dt", sim.dt, "Time step, s")->capture_default_str();
  sim_cmd->add_option("--n-steps", sim.n_steps)->capture_default_str();
  sim_cmd->add_option("--n-traj", sim.n_traj)->capture_default_str();
  sim_cmd->add_option("--dims", sim.dims)->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed)->capture_default_str();
  sim_cmd->add_option("--threads", sim.threads, "0 = all cores")
      ->capture_default_str();
  sim_cmd->add_option("--out", sim.out, "Output directory")->required();

  MsdArgs msd;
  auto* msd_cmd = app.add_subcommand("msd", "MSD curve from trajectory CSV(s)");
  msd_cmd->add_option("--traj", msd.traj, "Trajectory CSV or directory")->required();
  msd_cmd->add_option("--max-lag", msd.max_lag, "Default min(10, n_steps)");
  msd_cmd->add_option("--kind", msd.kind, "ensemble | time-averaged | pooled")
      ->capture_default_str();
  msd_cmd->add_option("--traj-index", msd.traj_index, "For --kind time-averaged");
  msd_cmd->add_option("--out", msd.out, "Output CSV")->required();

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate-d", "Diffusion coefficient from MSD");
  est_cmd->add_option("--msd", est.msd, "MSD CSV");
  est_cmd->add_option("--traj", est.from_traj.traj, "Trajectory CSV or directory");
  est_cmd->add_option("--max-lag", est.from_traj.max_lag, "With --traj");
  est_cmd->add_option("--kind", est.from_traj.kind, "With --traj")
      ->capture_default_str();
  est_cmd->add_option("--lags-used", est.lags_used, "0 = min(10, curve length)")
      ->capture_default_str();
  est_cmd->add_option("--dims", est.dims)->capture_default_str();
  est_cmd->add_flag("--offset", est.offset, "Fit a constant MSD offset");
  est_cmd->add_option("--out", est.out, "Output JSON")->required();

  WavepacketArgs wp;
  auto* wp_cmd = app.add_subcommand("wavepacket", "Wave-packet width and SQL lines");
  wp_cmd->add_option("--mass-kda", wp.mass_kda)->required();
  wp_cmd->add_option("--dx0", wp.dx0, "Initial width, m")->required();
  wp_cmd->add_option("--t-max", wp.t_max, "s")->required();
  wp_cmd->add_option("--samples", wp.samples)->capture_default_str();
  wp_cmd->add_option("--out", wp.out, "Output CSV")->required();

  PdeArgs pde;
  auto* pde_cmd =
      app.add_subcommand("pde", "Imaginary-time diffusion of a Gaussian density");
  pde_cmd->add_option("--mass-kda", pde.mass_kda)->required();
  pde_cmd->add_option("--sigma0", pde.sigma0, "Initial width, m")->required();
  pde_cmd->add_option("--tau", pde.tau, "Imaginary time span, s")->required();
  pde_cmd->add_option("--grid-n", pde.grid_n)->capture_default_str();
  pde_cmd->add_option("--half-width", pde.half_width, "m")->required();
  pde_cmd->add_option("--checkpoints", pde.checkpoints)->capture_default_str();
  pde_cmd->add_option("--n-time-steps", pde.n_time_steps,
                      "0 = smallest stable count");
  pde_cmd->add_option("--out-dir", pde.out_dir)->capture_default_str();

  const qw_roundtrip_params defaults = qw_roundtrip_default_params();
  RoundTripArgs rt;
  rt.hbar = defaults.hbar;
  rt.n_traj = defaults.n_trajectories;
  rt.n_steps = defaults.n_steps;
  rt.dt = defaults.dt;
  rt.seed = defaults.seed;
  rt.max_lag = defaults.max_lag;
  rt.lags_used = defaults.lags_used;
  auto* rt_cmd = app.add_subcommand(
      "roundtrip", "Simulate D = hbar/6m, estimate, and refit hbar");
  rt_cmd->add_option("--hbar", rt.hbar, "Injected hbar, J*s")->capture_default_str();
  rt_cmd->add_option("--masses-kda", rt.masses_kda,
                     "Masses (default: 1050 113 61 61 50)")
      ->delimiter(',');
  rt_cmd->add_option("--n-traj", rt.n_traj)->capture_default_str();
  rt_cmd->add_option("--n-steps", rt.n_steps)->capture_default_str();
  rt_cmd->add_option("--dt", rt.dt)->capture_default_str();
  rt_cmd->add_option("--seed", rt.seed)->capture_default_str();
  rt_cmd->add_option("--max-lag", rt.max_lag)->capture_default_str();
  rt_cmd->add_option("--lags-used", rt.lags_used)->capture_default_str();
  rt_cmd->add_option("--threads", rt.threads, "0 = all cores")
      ->capture_default_str();
  rt_cmd->add_flag("--write-trajectories", rt.write_trajectories);
  rt_cmd->add_option("--out-dir", rt.out_dir)->capture_default_str();

  std::string manifest_path;
  auto* replay_cmd =
      app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("manifest", manifest_path, "manifest.json")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "qwalk: " << e.what() << '\n';
    return 1;
  }

  Manifest manifest;
  manifest.argv = args;
  if (*fit_cmd) {
    manifest.command = "fit";
    RunFit(fit, manifest);
  } else if (*sim_cmd) {
    manifest.command = "simulate";
    RunSimulate(sim, manifest);
  } else if (*msd_cmd) {
    manifest.command = "msd";
    RunMsd(msd, manifest);
  } else if (*est_cmd) {
    manifest.command = "estimate-d";
    RunEstimate(est, manifest);
  } else if (*wp_cmd) {
    manifest.command = "wavepacket";
    RunWavepacket(wp, manifest);
  } else if (*pde_cmd) {
    manifest.command = "pde";
    RunPde(pde, manifest);
  } else if (*rt_cmd) {
    manifest.command = "roundtrip";
    RunRoundTrip(rt, manifest);
  } else if (*replay_cmd) {
    return RunReplay(manifest_path, depth);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return Run(args, 0);
  } catch (const CliFailure& f) {
    std::cerr << "qwalk: " << f.message << '\n';
    return f.exit_code;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "qwalk: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "qwalk: " << e.what() << '\n';
    return 2;
  }
}
