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

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "qwalk/error.hpp"
#include "qwalk/units.hpp"

using namespace qwalk;

namespace {

bool WithinUlps(double a, double b, int ulps) {
  return std::abs(a - b) <= ulps * std::numeric_limits<double>::epsilon() *
                                std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("default constants match the quoted values") {
  const PhysicalConstants c;
  CHECK(c.hbar == 1.054571628e-34);
  CHECK(c.dalton_kg == 1.66054e-27);
  CHECK_NOTHROW(c.Validate());
  CHECK_THROWS_AS(PhysicalConstants::WithHbar(0.0), DomainError);
  CHECK_THROWS_AS(PhysicalConstants::WithHbar(-1e-34), DomainError);
  CHECK(PhysicalConstants::WithHbar(2e-34).hbar == 2e-34);
}

TEST_CASE("mass from kDa") {
  CHECK(WithinUlps(MassFromKda(50).kilograms(), 8.3027e-23, 1));
  CHECK(WithinUlps(MassFromKda(1e-3).kilograms(), 1.66054e-27, 1));
  CHECK(WithinUlps(MassFromKda(113).kilograms(), 1.8764102e-22, 1));
  CHECK(WithinUlps(MassFromKda(1050).kilograms(), 1.743567e-21, 1));

  CHECK_THROWS_AS(MassFromKda(0.0), DomainError);
  CHECK_THROWS_AS(MassFromKda(-3.0), DomainError);
  CHECK_THROWS_AS(MassFromKda(std::nan("")), DomainError);
  CHECK_THROWS_AS(MassFromKda(INFINITY), DomainError);
  CHECK_THROWS_AS(Mass(0.0), DomainError);
}

TEST_CASE("diffusion coefficient from um^2/s") {
  CHECK(WithinUlps(DFromUm2s(0.23).m2_per_s(), 2.3e-13, 1));
  CHECK(DFromUm2s(0.0).m2_per_s() == 0.0);
  CHECK(WithinUlps(DFromUm2s(0.0082).m2_per_s(), 8.2e-15, 1));
  CHECK_THROWS_AS(DFromUm2s(-1e-3), DomainError);
  CHECK_THROWS_AS(DFromUm2s(std::nan("")), DomainError);
  CHECK_THROWS_AS(DiffusionCoefficient(-1.0), DomainError);
}

TEST_CASE("unit round trips stay within one rounding step") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> exponent(-4.0, 4.0);
  for (int i = 0; i < 10000; ++i) {
    const double v = std::pow(10.0, exponent(rng));
    CHECK(WithinUlps(DToUm2s(DFromUm2s(v)), v, 1));
    CHECK(WithinUlps(MassToKda(MassFromKda(v)), v, 2));
  }
}
