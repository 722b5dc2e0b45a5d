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
#include <numeric>

#include "doctest.h"
#include "qwalk/diffusion_pde.hpp"
#include "qwalk/error.hpp"

using namespace qwalk;

namespace {

const Mass kMass61 = MassFromKda(61);
constexpr double kSigma0 = 1e-6;
// hbar / m for 61 kDa, m^2/s (30-digit evaluation).
constexpr double kHbarOverM61 = 1.0411106914262731e-12;

PdeConfig Config(double tau, std::size_t steps) {
  return {kMass61, tau, steps, PhysicalConstants{}};
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS((GridSpec{1e-5, 8}.Validate()), ConfigError);
  CHECK_THROWS_AS((GridSpec{1e-5, 17}.Validate()), ConfigError);
  CHECK_THROWS_AS((GridSpec{0.0, 64}.Validate()), ConfigError);
  const GridSpec g{1.0, 16};
  CHECK(g.x(8) == 0.0);
  for (std::size_t i = 1; i < 16; ++i) CHECK(g.x(16 - i) == -g.x(i));
}

TEST_CASE("Gaussian profile") {
  const GridSpec g{20 * kSigma0, 512};
  const auto f = GaussianProfile(kSigma0, g);
  CHECK(std::abs(f.Integral() - 1.0) < 1e-6);
  CHECK(std::abs(FieldVariance(f) / (kSigma0 * kSigma0) - 1.0) < 1e-3);
  const auto v = f.values();
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] == v[v.size() - i]);

  CHECK_THROWS_AS(GaussianProfile(kSigma0, GridSpec{9 * kSigma0, 512}), ConfigError);
  CHECK_THROWS_AS(GaussianProfile(0.0, g), ConfigError);
}

TEST_CASE("field variance") {
  const GridSpec g{1e-5, 64};
  std::vector<double> delta(64, 0.0);
  delta[32] = 1.0;
  CHECK(FieldVariance(GridField(g, delta)) == 0.0);
  CHECK_THROWS_AS(GridField(g, std::vector<double>(64, 0.0)), DomainError);
  std::vector<double> neg(64, 1.0);
  neg[3] = -1e-3;
  CHECK_THROWS_AS(GridField(g, neg), DomainError);

  // Two equal spikes at +-a about an off-centre mean still give a^2.
  std::vector<double> pair(64, 0.0);
  pair[40] = 1.0;
  pair[50] = 1.0;
  const double a = 5 * g.spacing();
  CHECK(FieldVariance(GridField(g, pair)) == doctest::Approx(a * a).epsilon(1e-12));
}

TEST_CASE("evolution identities") {
  const GridSpec g{20 * kSigma0, 256};
  const auto f = GaussianProfile(kSigma0, g);
  const auto same = Evolve(f, Config(0.0, 0));
  CHECK(std::equal(same.values().begin(), same.values().end(), f.values().begin()));

  const GridField uniform(g, std::vector<double>(256, 0.7));
  const auto u = Evolve(uniform, Config(0.5, RequiredTimeSteps(g, kMass61, 0.5)));
  for (double v : u.values()) CHECK(v == 0.7);
}

TEST_CASE("stability is enforced, not sub-stepped") {
  const GridSpec g{20 * kSigma0, 1024};
  const std::size_t need = RequiredTimeSteps(g, kMass61, 1.0);
  CHECK(need > 1);
  CHECK(StabilityNumber(g, Config(1.0, need)) <= 0.5);
  CHECK(StabilityNumber(g, Config(1.0, need - 1)) > 0.5);
  const auto f = GaussianProfile(kSigma0, g);
  try {
    Evolve(f, Config(1.0, need - 1));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(std::to_string(need)) != std::string::npos);
  }
}

TEST_CASE("variance grows by (hbar/m) tau") {
  const GridSpec g{20 * kSigma0, 1024};
  const double tau = 1.0;
  const auto f = GaussianProfile(kSigma0, g);
  const auto out = Evolve(f, Config(tau, RequiredTimeSteps(g, kMass61, tau)));
  const double expect = kSigma0 * kSigma0 + kHbarOverM61 * tau;
  CHECK(std::abs(FieldVariance(out) / expect - 1.0) < 5e-3);
  CHECK(std::abs(out.Integral() / f.Integral() - 1.0) < 1e-9);

  // Maximum principle.
  const auto [lo, hi] = std::minmax_element(f.values().begin(), f.values().end());
  for (double v : out.values()) {
    CHECK(v >= *lo);
    CHECK(v <= *hi * (1 + 1e-12));
  }
}

TEST_CASE("evolution commutes with reflection") {
  const GridSpec g{1e-5, 128};
  std::vector<double> v(128);
  for (std::size_t i = 0; i < 128; ++i) v[i] = 1.0 + std::sin(0.3 * i) * std::sin(0.3 * i) + 0.01 * i;
  std::vector<double> mirrored(128);
  for (std::size_t i = 0; i < 128; ++i) mirrored[i] = v[(128 - i) % 128];
  const auto cfg = Config(0.05, RequiredTimeSteps(g, kMass61, 0.05));
  const auto a = Evolve(GridField(g, v), cfg);
  const auto b = Evolve(GridField(g, mirrored), cfg);
  for (std::size_t i = 0; i < 128; ++i) CHECK(a.values()[i] == b.values()[(128 - i) % 128]);
}

TEST_CASE("variance trace") {
  const GridSpec g{20 * kSigma0, 1024};
  const double tau = 1.0;
  std::size_t steps = RequiredTimeSteps(g, kMass61, tau);
  steps += 20 - steps % 20;
  const auto trace = RunVarianceTrace(kSigma0, g, Config(tau, steps), 20);
  REQUIRE(trace.tau.size() == 21);
  REQUIRE(trace.fitted_slope.has_value());
  CHECK(std::abs(*trace.fitted_slope / kHbarOverM61 - 1.0) < 5e-3);
  CHECK(trace.expected_slope == doctest::Approx(kHbarOverM61).epsilon(1e-15));
  CHECK(trace.max_mass_drift < 1e-9);
  CHECK(trace.tau.back() == doctest::Approx(tau).epsilon(1e-15));

  const auto still = RunVarianceTrace(kSigma0, g, Config(0.0, 0), 20);
  CHECK(still.tau.size() == 1);
  CHECK(std::abs(still.variance[0] / (kSigma0 * kSigma0) - 1.0) < 1e-3);
  CHECK_FALSE(still.fitted_slope.has_value());

  // (hbar/m) tau = 4.2 sigma0^2 -> final sigma > 2 sigma0 > half_width / 10.
  CHECK_THROWS_AS(RunVarianceTrace(kSigma0, g, Config(4.0, 4 * steps), 20), ConfigError);
}
