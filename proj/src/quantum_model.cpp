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

#include "qwalk/quantum_model.hpp"

#include <cmath>

#include "qwalk/error.hpp"

namespace qwalk {

int QuantumDiffusionDivisor(MsdMode mode) {
  return mode == MsdMode::kFreeLine ? 2 : 6;
}

int SqlMsdDivisor(MsdMode mode) { return mode == MsdMode::kFreeLine ? 1 : 3; }

DiffusionCoefficient QuantumDiffusionCoefficient(
    Mass mass, MsdMode mode, const PhysicalConstants& constants) {
  constants.Validate();
  return DiffusionCoefficient(
      constants.hbar / (QuantumDiffusionDivisor(mode) * mass.kilograms()));
}

DiffusionCoefficient TotalDiffusion(DiffusionCoefficient d0, Mass mass,
                                    MsdMode mode,
                                    const PhysicalConstants& constants) {
  return DiffusionCoefficient(
      d0.m2_per_s() +
      QuantumDiffusionCoefficient(mass, mode, constants).m2_per_s());
}

ClassicalComponent ClassicalComponentOf(DiffusionCoefficient d_total,
                                        Mass mass, MsdMode mode,
                                        const PhysicalConstants& constants) {
  const double dq = QuantumDiffusionCoefficient(mass, mode, constants).m2_per_s();
  const double d0 = d_total.m2_per_s() - dq;
  return {d0, d0 < 0.0};
}

namespace {

void CheckWavePacket(const WavePacketParams& p, double t_s) {
  if (!std::isfinite(p.dx0) || p.dx0 <= 0.0) {
    throw DomainError("initial wave-packet width must be finite and positive");
  }
  if (!std::isfinite(t_s) || t_s < 0.0) {
    throw DomainError("time must be finite and non-negative");
  }
}

}  // namespace

double WavepacketWidth(const WavePacketParams& params, double t_s,
                       const PhysicalConstants& constants) {
  constants.Validate();
  CheckWavePacket(params, t_s);
  const double spread = constants.hbar * t_s /
                        (params.mass.kilograms() * params.dx0 * params.dx0);
  return params.dx0 * std::sqrt(1.0 + spread * spread);
}

double WavepacketAsymptote(const WavePacketParams& params, double t_s,
                           const PhysicalConstants& constants) {
  constants.Validate();
  CheckWavePacket(params, t_s);
  return constants.hbar * t_s / (params.mass.kilograms() * params.dx0);
}

double SqlMsd(double t_s, Mass mass, MsdMode mode,
              const PhysicalConstants& constants) {
  constants.Validate();
  if (!std::isfinite(t_s) || t_s < 0.0) {
    throw DomainError("time must be finite and non-negative");
  }
  // hbar t / (k m), written so that the k = 1 and k = 3 values differ by
  // exactly one division by 3.
  const double free_line = constants.hbar * t_s / mass.kilograms();
  return free_line / SqlMsdDivisor(mode);
}

SqlClass ClassifyVsSql(double measured_msd_m2, double t_s, Mass mass,
                       const PhysicalConstants& constants, double rel_tol) {
  if (!std::isfinite(t_s) || t_s <= 0.0) {
    throw DomainError("classification against the SQL needs t > 0");
  }
  if (!std::isfinite(measured_msd_m2) || !(rel_tol >= 0.0)) {
    throw DomainError("measured MSD must be finite and rel_tol >= 0");
  }
  const double sql = SqlMsd(t_s, mass, MsdMode::kFreeLine, constants);
  if (std::abs(measured_msd_m2 - sql) <= rel_tol * sql) return SqlClass::kAtSql;
  return measured_msd_m2 > sql ? SqlClass::kAbove : SqlClass::kBelow;
}

const char* ToString(MsdMode mode) {
  return mode == MsdMode::kFreeLine ? "free" : "sweep";
}

const char* ToString(SqlClass c) {
  switch (c) {
    case SqlClass::kAbove:
      return "above";
    case SqlClass::kAtSql:
      return "at-sql";
    case SqlClass::kBelow:
      return "below";
  }
  return "?";
}

}  // namespace qwalk
