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

#include "qwalk/qwalk.h"

#include <exception>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/diffusion_pde.hpp"
#include "qwalk/error.hpp"
#include "qwalk/msd.hpp"
#include "qwalk/planck_fit.hpp"
#include "qwalk/quantum_model.hpp"
#include "qwalk/roundtrip.hpp"
#include "qwalk/units.hpp"
#include "qwalk/version.hpp"
#include "qwalk/walk_sim.hpp"

struct qw_ensemble {
  qwalk::TrajectoryEnsemble ensemble;
};

struct qw_msd {
  qwalk::MsdCurve curve;
};

struct qw_pde_result {
  qwalk::VarianceTrace trace;
};

struct qw_records {
  std::vector<qwalk::MoleculeRecord> records;
};

struct qw_fit {
  qwalk::FitReport report;
};

struct qw_roundtrip {
  qwalk::RoundTripResult result;
  std::vector<qw_msd> msds;
  qw_fit fit;
};

namespace {

thread_local std::string g_last_error;

qw_status Fail(qw_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Bad enum values and similar caller mistakes.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Runs `body`, translating exceptions into status codes.
template <typename F>
qw_status Guard(F&& body) {
  try {
    body();
    return QW_OK;
  } catch (const InvalidArgument& e) {
    return Fail(QW_ERR_INVALID_ARGUMENT, e.what());
  } catch (const qwalk::DomainError& e) {
    return Fail(QW_ERR_DOMAIN, e.what());
  } catch (const qwalk::ConfigError& e) {
    return Fail(QW_ERR_CONFIG, e.what());
  } catch (const qwalk::ParseError& e) {
    return Fail(QW_ERR_PARSE, e.what());
  } catch (const qwalk::RankError& e) {
    return Fail(QW_ERR_RANK, e.what());
  } catch (const qwalk::IoError& e) {
    return Fail(QW_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return Fail(QW_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(QW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(QW_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(QW_ERR_INTERNAL, "unknown error");
  }
}

template <typename... Ptrs>
bool AnyNull(Ptrs... ptrs) {
  return ((ptrs == nullptr) || ...);
}

qw_status NullArg(const char* fn) {
  return Fail(QW_ERR_INVALID_ARGUMENT, std::string(fn) + ": null argument");
}

qwalk::PhysicalConstants ToCpp(const qw_constants* c) {
  if (c == nullptr) return {};
  qwalk::PhysicalConstants out{c->hbar, c->dalton_kg};
  out.Validate();
  return out;
}

qwalk::MsdMode ToCpp(qw_mode mode) {
  switch (mode) {
    case QW_MODE_FREE_LINE:
      return qwalk::MsdMode::kFreeLine;
    case QW_MODE_VOLUME_SWEEP:
      return qwalk::MsdMode::kVolumeSweep;
  }
  throw InvalidArgument("unknown qw_mode value");
}

}  // namespace

extern "C" {

const char* qw_version(void) { return qwalk::kVersion; }

const char* qw_status_name(qw_status status) {
  switch (status) {
    case QW_OK:
      return "ok";
    case QW_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case QW_ERR_DOMAIN:
      return "domain error";
    case QW_ERR_CONFIG:
      return "configuration error";
    case QW_ERR_PARSE:
      return "parse error";
    case QW_ERR_RANK:
      return "rank error";
    case QW_ERR_IO:
      return "i/o error";
    case QW_ERR_UNAVAILABLE:
      return "unavailable";
    case QW_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* qw_last_error(void) { return g_last_error.c_str(); }

qw_constants qw_default_constants(void) {
  return {qwalk::kCodataHbar, qwalk::kDaltonKg};
}

qw_status qw_mass_from_kda(const qw_constants* constants, double kda,
                           double* kg_out) {
  if (AnyNull(kg_out)) return NullArg(__func__);
  return Guard([&] {
    *kg_out = qwalk::MassFromKda(kda, ToCpp(constants)).kilograms();
  });
}

qw_status qw_d_from_um2s(double um2_per_s, double* m2_per_s_out) {
  if (AnyNull(m2_per_s_out)) return NullArg(__func__);
  return Guard([&] { *m2_per_s_out = qwalk::DFromUm2s(um2_per_s).m2_per_s(); });
}

qw_status qw_d_to_um2s(double m2_per_s, double* um2_per_s_out) {
  if (AnyNull(um2_per_s_out)) return NullArg(__func__);
  return Guard([&] {
    *um2_per_s_out = qwalk::DToUm2s(qwalk::DiffusionCoefficient(m2_per_s));
  });
}

qw_status qw_quantum_diffusion(const qw_constants* constants, double mass_kg,
                               qw_mode mode, double* d_out) {
  if (AnyNull(d_out)) return NullArg(__func__);
  return Guard([&] {
    *d_out = qwalk::QuantumDiffusionCoefficient(qwalk::Mass(mass_kg), ToCpp(mode),
                                                ToCpp(constants))
                 .m2_per_s();
  });
}

qw_status qw_total_diffusion(const qw_constants* constants, double d0,
                             double mass_kg, qw_mode mode, double* d_out) {
  if (AnyNull(d_out)) return NullArg(__func__);
  return Guard([&] {
    *d_out = qwalk::TotalDiffusion(qwalk::DiffusionCoefficient(d0),
                                   qwalk::Mass(mass_kg), ToCpp(mode),
                                   ToCpp(constants))
                 .m2_per_s();
  });
}

qw_status qw_classical_component(const qw_constants* constants, double d_total,
                                 double mass_kg, qw_mode mode, double* d0_out,
                                 int* below_out) {
  if (AnyNull(d0_out, below_out)) return NullArg(__func__);
  return Guard([&] {
    const auto c = qwalk::ClassicalComponentOf(qwalk::DiffusionCoefficient(d_total),
                                               qwalk::Mass(mass_kg), ToCpp(mode),
                                               ToCpp(constants));
    *d0_out = c.d0_m2_per_s;
    *below_out = c.below_quantum ? 1 : 0;
  });
}

qw_status qw_wavepacket_width(const qw_constants* constants, double dx0,
                              double mass_kg, double t, double* dx_out) {
  if (AnyNull(dx_out)) return NullArg(__func__);
  return Guard([&] {
    *dx_out = qwalk::WavepacketWidth({dx0, qwalk::Mass(mass_kg)}, t,
                                     ToCpp(constants));
  });
}

qw_status qw_sql_msd(const qw_constants* constants, double t, double mass_kg,
                     qw_mode mode, double* msd_out) {
  if (AnyNull(msd_out)) return NullArg(__func__);
  return Guard([&] {
    *msd_out =
        qwalk::SqlMsd(t, qwalk::Mass(mass_kg), ToCpp(mode), ToCpp(constants));
  });
}

qw_status qw_classify_vs_sql(const qw_constants* constants, double measured_msd,
                             double t, double mass_kg, double rel_tol,
                             qw_sql_class* class_out) {
  if (AnyNull(class_out)) return NullArg(__func__);
  return Guard([&] {
    const double tol = rel_tol < 0.0 ? qwalk::kDefaultSqlRelTol : rel_tol;
    switch (qwalk::ClassifyVsSql(measured_msd, t, qwalk::Mass(mass_kg),
                                 ToCpp(constants), tol)) {
      case qwalk::SqlClass::kAbove:
        *class_out = QW_SQL_ABOVE;
        break;
      case qwalk::SqlClass::kAtSql:
        *class_out = QW_SQL_AT;
        break;
      case qwalk::SqlClass::kBelow:
        *class_out = QW_SQL_BELOW;
        break;
    }
  });
}

qw_status qw_simulate_ensemble(const qw_sim_config* config, unsigned threads,
                               qw_ensemble** out) {
  if (AnyNull(config, out)) return NullArg(__func__);
  *out = nullptr;
  return Guard([&] {
    qwalk::SimConfig c;
    c.d_total = qwalk::DiffusionCoefficient(config->d_total);
    c.dt = config->dt;
    c.n_steps = config->n_steps;
    c.dims = config->dims;
    c.n_trajectories = config->n_trajectories;
    c.seed = config->seed;
    *out = new qw_ensemble{qwalk::SimulateEnsemble(c, threads)};
  });
}

qw_status qw_ensemble_read_csv(const char* path, qw_ensemble** out) {
  if (AnyNull(path, out)) return NullArg(__func__);
  *out = nullptr;
  return Guard([&] { *out = new qw_ensemble{qwalk::ReadEnsembleCsv(path)}; });
}

qw_status qw_ensemble_write_csv(const qw_ensemble* ensemble, const char* dir) {
  if (AnyNull(ensemble, dir)) return NullArg(__func__);
  return Guard([&] { qwalk::WriteEnsembleCsv(ensemble->ensemble, dir); });
}

size_t qw_ensemble_size(const qw_ensemble* ensemble) {
  return ensemble ? ensemble->ensemble.trajectories.size() : 0;
}

int qw_ensemble_dims(const qw_ensemble* ensemble) {
  if (!ensemble || ensemble->ensemble.trajectories.empty()) return 0;
  return ensemble->ensemble.trajectories.front().dims();
}

double qw_ensemble_dt(const qw_ensemble* ensemble) {
  if (!ensemble || ensemble->ensemble.trajectories.empty()) return 0.0;
  return ensemble->ensemble.trajectories.front().dt();
}

qw_status qw_ensemble_positions(const qw_ensemble* ensemble, size_t i,
                                const double** data, size_t* n_points) {
  if (AnyNull(ensemble, data, n_points)) return NullArg(__func__);
  const auto& trajs = ensemble->ensemble.trajectories;
  if (i >= trajs.size()) {
    return Fail(QW_ERR_INVALID_ARGUMENT, "trajectory index out of range");
  }
  *data = trajs[i].positions().data();
  *n_points = trajs[i].n_points();
  return QW_OK;
}

void qw_ensemble_free(qw_ensemble* ensemble) { delete ensemble; }

qw_status qw_msd_compute(const qw_ensemble* ensemble, qw_msd_kind kind,
                         size_t traj_index, size_t max_lag, qw_msd** out) {
  if (AnyNull(ensemble, out)) return NullArg(__func__);
  *out = nullptr;
  const auto& e = ensemble->ensemble;
  switch (kind) {
    case QW_MSD_ENSEMBLE:
      return Guard([&] { *out = new qw_msd{qwalk::EnsembleMsd(e, max_lag)}; });
    case QW_MSD_TIME_AVERAGED:
      if (traj_index >= e.trajectories.size()) {
        return Fail(QW_ERR_INVALID_ARGUMENT, "trajectory index out of range");
      }
      return Guard([&] {
        *out = new qw_msd{qwalk::TimeAveragedMsd(e.trajectories[traj_index], max_lag)};
      });
    case QW_MSD_POOLED:
      return Guard(
          [&] { *out = new qw_msd{qwalk::PooledTimeAveragedMsd(e, max_lag)}; });
  }
  return Fail(QW_ERR_INVALID_ARGUMENT, "unknown qw_msd_kind value");
}

qw_status qw_msd_read_csv(const char* path, qw_msd** out) {
  if (AnyNull(path, out)) return NullArg(__func__);
  *out = nullptr;
  return Guard([&] { *out = new qw_msd{qwalk::ReadMsdCsv(path)}; });
}

qw_status qw_msd_write_csv(const qw_msd* msd, const char* path) {
  if (AnyNull(msd, path)) return NullArg(__func__);
  return Guard([&] { qwalk::WriteMsdCsv(msd->curve, path); });
}

size_t qw_msd_size(const qw_msd* msd) { return msd ? msd->curve.size() : 0; }

qw_status qw_msd_point(const qw_msd* msd, size_t i, double* lag, double* value,
                       double* sem, uint64_t* n) {
  if (AnyNull(msd)) return NullArg(__func__);
  if (i >= msd->curve.size()) {
    return Fail(QW_ERR_INVALID_ARGUMENT, "MSD index out of range");
  }
  if (lag) *lag = msd->curve.lags[i];
  if (value) *value = msd->curve.msd[i];
  if (sem) *sem = msd->curve.sem[i];
  if (n) *n = msd->curve.n_samples[i];
  return QW_OK;
}

void qw_msd_free(qw_msd* msd) { delete msd; }

qw_status qw_estimate_d(const qw_msd* msd, int dims, size_t lags_used,
                        int fit_offset, qw_d_estimate* out) {
  if (AnyNull(msd, out)) return NullArg(__func__);
  return Guard([&] {
    const auto e = qwalk::EstimateD(msd->curve, dims, {lags_used, fit_offset != 0});
    *out = {e.d.m2_per_s(), e.sigma_d, e.dims, e.lags_used,
            e.offset_m2.has_value() ? 1 : 0, e.offset_m2.value_or(0.0)};
  });
}

namespace {

qwalk::PdeConfig PdeConfigFrom(const qw_constants* constants,
                               const qw_pde_params& p) {
  const auto c = ToCpp(constants);
  const qwalk::GridSpec grid{p.half_width, p.grid_n};
  grid.Validate();
  qwalk::PdeConfig config{qwalk::Mass(p.mass_kg), p.tau, p.n_time_steps, c};
  if (config.n_time_steps == 0) {
    std::size_t steps = qwalk::RequiredTimeSteps(grid, config.mass, p.tau, c);
    if (steps > 0 && p.checkpoints > 0 && steps % p.checkpoints != 0) {
      steps += p.checkpoints - steps % p.checkpoints;
    }
    config.n_time_steps = steps;
  }
  return config;
}

}  // namespace

qw_status qw_pde_required_steps(const qw_constants* constants,
                                const qw_pde_params* params, size_t* steps_out) {
  if (AnyNull(params, steps_out)) return NullArg(__func__);
  return Guard([&] {
    const qwalk::GridSpec grid{params->half_width, params->grid_n};
    *steps_out = qwalk::RequiredTimeSteps(grid, qwalk::Mass(params->mass_kg),
                                          params->tau, ToCpp(constants));
  });
}

qw_status qw_pde_run(const qw_constants* constants, const qw_pde_params* params,
                     qw_pde_result** out) {
  if (AnyNull(params, out)) return NullArg(__func__);
  *out = nullptr;
  return Guard([&] {
    const auto config = PdeConfigFrom(constants, *params);
    *out = new qw_pde_result{qwalk::RunVarianceTrace(
        params->sigma0, {params->half_width, params->grid_n}, config,
        params->checkpoints)};
  });
}

qw_status qw_pde_summary_get(const qw_pde_result* result, qw_pde_summary* out) {
  if (AnyNull(result, out)) return NullArg(__func__);
  const auto& t = result->trace;
  out->has_slope = t.fitted_slope.has_value() ? 1 : 0;
  out->fitted_slope = t.fitted_slope.value_or(0.0);
  out->expected_slope = t.expected_slope;
  out->relative_error = t.fitted_slope ? *t.fitted_slope / t.expected_slope - 1.0 : 0.0;
  out->max_mass_drift = t.max_mass_drift;
  out->stability_number = t.stability_number;
  out->n_time_steps = t.n_time_steps;
  out->trace_length = t.tau.size();
  return QW_OK;
}

qw_status qw_pde_trace_point(const qw_pde_result* result, size_t i, double* tau,
                             double* variance) {
  if (AnyNull(result)) return NullArg(__func__);
  if (i >= result->trace.tau.size()) {
    return Fail(QW_ERR_INVALID_ARGUMENT, "trace index out of range");
  }
  if (tau) *tau = result->trace.tau[i];
  if (variance) *variance = result->trace.variance[i];
  return QW_OK;
}

qw_status qw_pde_write_trace_csv(const qw_pde_result* result, const char* path) {
  if (AnyNull(result, path)) return NullArg(__func__);
  return Guard([&] { qwalk::WriteVarianceTraceCsv(result->trace, path); });
}

qw_status qw_pde_write_field_csv(const qw_pde_result* result, const char* path) {
  if (AnyNull(result, path)) return NullArg(__func__);
  return Guard([&] { qwalk::WriteFieldCsv(result->trace.final_field, path); });
}

void qw_pde_result_free(qw_pde_result* result) { delete result; }

qw_status qw_records_table1(const qw_constants* constants, qw_records** out) {
  if (AnyNull(out)) return NullArg(__func__);
  *out = nullptr;
  return Guard(
      [&] { *out = new qw_records{qwalk::Table1Dataset(ToCpp(constants))}; });
}

qw_status qw_records_read_csv(const qw_constants* constants, const char* path,
                              qw_records** out) {
  if (AnyNull(path, out)) return NullArg(__func__);
  *out = nullptr;
  return Guard([&] {
    *out = new qw_records{qwalk::ReadRecordsCsv(std::filesystem::path(path),
                                                ToCpp(constants))};
  });
}

size_t qw_records_size(const qw_records* records) {
  return records ? records->records.size() : 0;
}

qw_status qw_records_get(const qw_records* records, size_t i,
                         qw_record_view* out) {
  if (AnyNull(records, out)) return NullArg(__func__);
  if (i >= records->records.size()) {
    return Fail(QW_ERR_INVALID_ARGUMENT, "record index out of range");
  }
  const auto& r = records->records[i];
  *out = {r.label.c_str(), r.mass.kilograms(), r.d.m2_per_s(), r.sigma_d,
          r.source.c_str()};
  return QW_OK;
}

void qw_records_free(qw_records* records) { delete records; }

qw_status qw_fit_records(const qw_records* records, int through_origin,
                         qw_fit** out) {
  if (AnyNull(records, out)) return NullArg(__func__);
  *out = nullptr;
  return Guard([&] {
    *out = new qw_fit{qwalk::MakeFitReport(records->records,
                                           {through_origin != 0})};
  });
}

qw_status qw_fit_points(const double* x, const double* y, const double* sigma,
                        size_t n, int through_origin, qw_fit** out) {
  if (AnyNull(out)) return NullArg(__func__);
  *out = nullptr;
  if (n > 0 && AnyNull(x, y, sigma)) return NullArg(__func__);
  return Guard([&] {
    qwalk::FitReport report;
    for (size_t i = 0; i < n; ++i) report.points.push_back({x[i], y[i], sigma[i]});
    report.fit = qwalk::WeightedFit(report.points, through_origin != 0);
    for (size_t i = 0; i < n; ++i) {
      const auto& p = report.points[i];
      const double yhat = report.fit.Predict(p.x);
      report.residuals.push_back(
          {"p" + std::to_string(i), p.x, p.y, yhat, (p.y - yhat) / p.sigma});
    }
    *out = new qw_fit{std::move(report)};
  });
}

qw_status qw_fit_summary_get(const qw_fit* fit, qw_fit_summary* out) {
  if (AnyNull(fit, out)) return NullArg(__func__);
  const auto& f = fit->report.fit;
  out->slope = f.slope;
  out->sigma_slope_analytic = f.sigma_slope_analytic;
  out->has_scaled = f.sigma_slope_scaled.has_value() ? 1 : 0;
  out->sigma_slope_scaled = f.sigma_slope_scaled.value_or(0.0);
  out->chi2 = f.chi2;
  out->dof = f.dof;
  out->n_points = f.n_points;
  out->has_chi2_reduced = f.chi2_reduced.has_value() ? 1 : 0;
  out->chi2_reduced = f.chi2_reduced.value_or(0.0);
  out->has_intercept = f.intercept.has_value() ? 1 : 0;
  out->intercept = f.intercept.value_or(0.0);
  out->sigma_intercept = f.sigma_intercept.value_or(0.0);
  return QW_OK;
}

size_t qw_fit_residual_count(const qw_fit* fit) {
  return fit ? fit->report.residuals.size() : 0;
}

qw_status qw_fit_residual(const qw_fit* fit, size_t i, qw_residual_view* out) {
  if (AnyNull(fit, out)) return NullArg(__func__);
  if (i >= fit->report.residuals.size()) {
    return Fail(QW_ERR_INVALID_ARGUMENT, "residual index out of range");
  }
  const auto& r = fit->report.residuals[i];
  *out = {r.label.c_str(), r.x, r.y, r.yhat, r.normalized};
  return QW_OK;
}

qw_status qw_fit_write_report(const qw_fit* fit, const char* json_path) {
  if (AnyNull(fit, json_path)) return NullArg(__func__);
  return Guard([&] { qwalk::WriteFitReportJson(fit->report, json_path); });
}

qw_status qw_fit_write_plot_bundle(const qw_fit* fit, const char* dir) {
  if (AnyNull(fit, dir)) return NullArg(__func__);
  return Guard([&] { qwalk::WritePlotBundle(fit->report, dir); });
}

void qw_fit_free(qw_fit* fit) { delete fit; }

qw_roundtrip_params qw_roundtrip_default_params(void) {
  const qwalk::RoundTripConfig d;
  return {d.hbar, nullptr, 0, d.n_trajectories, d.n_steps, d.dt, d.seed,
          d.max_lag, d.lags_used, d.threads};
}

qw_status qw_roundtrip_run(const qw_roundtrip_params* params, qw_roundtrip** out) {
  if (AnyNull(params, out)) return NullArg(__func__);
  *out = nullptr;
  if (params->n_masses > 0 && params->masses_kda == nullptr) return NullArg(__func__);
  return Guard([&] {
    qwalk::RoundTripConfig c;
    c.hbar = params->hbar;
    if (params->masses_kda != nullptr) {
      c.masses_kda.assign(params->masses_kda, params->masses_kda + params->n_masses);
    }
    c.n_trajectories = params->n_trajectories;
    c.n_steps = params->n_steps;
    c.dt = params->dt;
    c.seed = params->seed;
    c.max_lag = params->max_lag;
    c.lags_used = params->lags_used;
    c.threads = params->threads;
    auto rt = std::make_unique<qw_roundtrip>();
    rt->result = qwalk::RunRoundTrip(c);
    for (const auto& m : rt->result.masses) rt->msds.push_back({m.msd});
    rt->fit.report = rt->result.fit;
    *out = rt.release();
  });
}

size_t qw_roundtrip_mass_count(const qw_roundtrip* rt) {
  return rt ? rt->result.masses.size() : 0;
}

qw_status qw_roundtrip_mass_get(const qw_roundtrip* rt, size_t i,
                                qw_roundtrip_mass* out) {
  if (AnyNull(rt, out)) return NullArg(__func__);
  if (i >= rt->result.masses.size()) {
    return Fail(QW_ERR_INVALID_ARGUMENT, "mass index out of range");
  }
  const auto& m = rt->result.masses[i];
  *out = {m.mass_kda, m.d_true.m2_per_s(), m.estimate.d.m2_per_s(),
          m.estimate.sigma_d, m.seed};
  return QW_OK;
}

const qw_msd* qw_roundtrip_msd(const qw_roundtrip* rt, size_t i) {
  if (!rt || i >= rt->msds.size()) return nullptr;
  return &rt->msds[i];
}

const qw_fit* qw_roundtrip_fit(const qw_roundtrip* rt) {
  return rt ? &rt->fit : nullptr;
}

qw_status qw_roundtrip_errors(const qw_roundtrip* rt, double* relative_error,
                              double* normalized_error) {
  if (AnyNull(rt)) return NullArg(__func__);
  if (relative_error) *relative_error = rt->result.relative_error;
  if (normalized_error) *normalized_error = rt->result.normalized_error;
  return QW_OK;
}

void qw_roundtrip_free(qw_roundtrip* rt) { delete rt; }

}  // extern "C"
