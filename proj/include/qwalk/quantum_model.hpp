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

#ifndef QWALK_QUANTUM_MODEL_HPP_
#define QWALK_QUANTUM_MODEL_HPP_

#include "qwalk/units.hpp"

namespace qwalk {

// How the quantum position spread of a particle of mass m grows with time.
//
//   kFreeLine     <dx^2> = (hbar/m) t,  i.e. D_q = hbar/(2m). This is the
//                 standard-quantum-limit line for one coordinate.
//   kVolumeSweep  <dx^2> = (hbar/3m) t, i.e. D_q = hbar/(6m). A molecule
//                 that sweeps a volume dV = dS * dv_x * dt shares the action
//                 budget equally among x, y and z, so each axis receives one
//                 third of the free-line spread.
enum class MsdMode { kFreeLine, kVolumeSweep };

// Divisor k in D_q = hbar/(k m).
int QuantumDiffusionDivisor(MsdMode mode);

// Divisor k in <dx^2> = (hbar/(k m)) t.
int SqlMsdDivisor(MsdMode mode);

struct WavePacketParams {
  double dx0;  // initial width, m; must be > 0
  Mass mass;
};

DiffusionCoefficient QuantumDiffusionCoefficient(
    Mass mass, MsdMode mode, const PhysicalConstants& constants = {});

// D = D0 + D_q(mass, mode).
DiffusionCoefficient TotalDiffusion(DiffusionCoefficient d0, Mass mass,
                                    MsdMode mode,
                                    const PhysicalConstants& constants = {});

struct ClassicalComponent {
  double d0_m2_per_s;     // signed: D - D_q
  bool below_quantum;     // d0 < 0, measured D is under the quantum term
};

// Inverse of TotalDiffusion. A negative remainder is reported through the
// flag rather than thrown.
ClassicalComponent ClassicalComponentOf(DiffusionCoefficient d_total,
                                        Mass mass, MsdMode mode,
                                        const PhysicalConstants& constants = {});

// dx(t) = dx0 * sqrt(1 + (hbar t / (m dx0^2))^2). Throws DomainError for
// negative or non-finite t.
double WavepacketWidth(const WavePacketParams& params, double t_s,
                       const PhysicalConstants& constants = {});

// Long-time asymptote of WavepacketWidth: hbar t / (m dx0).
double WavepacketAsymptote(const WavePacketParams& params, double t_s,
                           const PhysicalConstants& constants = {});

// (hbar/m) t for kFreeLine, (hbar/3m) t for kVolumeSweep.
double SqlMsd(double t_s, Mass mass, MsdMode mode,
              const PhysicalConstants& constants = {});

enum class SqlClass { kAbove, kAtSql, kBelow };

inline constexpr double kDefaultSqlRelTol = 1e-9;

// Compares a measured <dx^2> against the free-line value (hbar/m) t.
// |measured - sql| <= rel_tol * sql counts as kAtSql. t must be > 0.
SqlClass ClassifyVsSql(double measured_msd_m2, double t_s, Mass mass,
                       const PhysicalConstants& constants = {},
                       double rel_tol = kDefaultSqlRelTol);

const char* ToString(MsdMode mode);
const char* ToString(SqlClass c);

}  // namespace qwalk

#endif  // QWALK_QUANTUM_MODEL_HPP_
