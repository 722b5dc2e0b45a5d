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

#include "qwalk/roundtrip.hpp"

#include <array>
#include <cstdio>
#include <random>

#include "qwalk/error.hpp"

namespace qwalk {

std::uint64_t DeriveMassSeed(std::uint64_t seed, std::size_t mass_index) {
  const std::uint64_t j = mass_index;
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j >> 32),
                    std::uint32_t{0x3A55u}};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t{out[1]} << 32) | out[0];
}

RoundTripResult RunRoundTrip(const RoundTripConfig& config) {
  const auto constants = PhysicalConstants::WithHbar(config.hbar);
  if (config.masses_kda.empty()) throw ConfigError("round trip needs at least one mass");
  if (config.max_lag < 1 || config.max_lag > config.n_steps) {
    throw ConfigError("round trip needs 1 <= max_lag <= n_steps");
  }

  RoundTripResult result;
  result.injected_hbar = config.hbar;
  std::vector<MoleculeRecord> records;
  for (std::size_t j = 0; j < config.masses_kda.size(); ++j) {
    const Mass mass = MassFromKda(config.masses_kda[j], constants);
    SimConfig sim;
    sim.d_total = QuantumDiffusionCoefficient(mass, MsdMode::kVolumeSweep, constants);
    sim.dt = config.dt;
    sim.n_steps = config.n_steps;
    sim.dims = 1;
    sim.n_trajectories = config.n_trajectories;
    sim.seed = DeriveMassSeed(config.seed, j);
    const auto ensemble = SimulateEnsemble(sim, config.threads);

    RoundTripMass m{config.masses_kda[j], sim.d_total, sim.seed,
                    PooledTimeAveragedMsd(ensemble, config.max_lag), {}};
    m.estimate = EstimateD(m.msd, 1, {config.lags_used, false});
    if (!(m.estimate.sigma_d > 0.0)) {
      throw DomainError("zero uncertainty on estimated D; cannot weight the fit");
    }
    char label[64];
    std::snprintf(label, sizeof(label), "%g kDa #%zu", config.masses_kda[j], j);
    records.push_back({label, mass, m.estimate.d, m.estimate.sigma_d, "simulated"});
    result.masses.push_back(std::move(m));
  }
  result.fit = MakeFitReport(records);
  const FitResult& f = result.fit.fit;
  result.relative_error = (f.slope - config.hbar) / config.hbar;
  result.normalized_error = (f.slope - config.hbar) / f.sigma_slope_analytic;
  return result;
}

}  // namespace qwalk
