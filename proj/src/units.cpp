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

#include "qwalk/units.hpp"

#include <cmath>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {

void PhysicalConstants::Validate() const {
  if (!std::isfinite(hbar) || hbar <= 0.0) {
    throw DomainError("hbar must be finite and positive, got " +
                      std::to_string(hbar));
  }
  if (!std::isfinite(dalton_kg) || dalton_kg <= 0.0) {
    throw DomainError("dalton_kg must be finite and positive");
  }
}

PhysicalConstants PhysicalConstants::WithHbar(double hbar) {
  PhysicalConstants c;
  c.hbar = hbar;
  c.Validate();
  return c;
}

Mass::Mass(double kilograms) : kilograms_(kilograms) {
  if (!std::isfinite(kilograms) || kilograms <= 0.0) {
    throw DomainError("mass must be finite and positive");
  }
}

DiffusionCoefficient::DiffusionCoefficient(double m2_per_s)
    : m2_per_s_(m2_per_s) {
  if (!std::isfinite(m2_per_s) || m2_per_s < 0.0) {
    throw DomainError("diffusion coefficient must be finite and >= 0");
  }
}

Mass MassFromKda(double kda, const PhysicalConstants& constants) {
  constants.Validate();
  if (!std::isfinite(kda) || kda <= 0.0) {
    throw DomainError("mass in kDa must be finite and positive");
  }
  return Mass(kda * 1e3 * constants.dalton_kg);
}

double MassToKda(Mass mass, const PhysicalConstants& constants) {
  constants.Validate();
  return mass.kilograms() / constants.dalton_kg / 1e3;
}

DiffusionCoefficient DFromUm2s(double um2_per_s) {
  if (!std::isfinite(um2_per_s) || um2_per_s < 0.0) {
    throw DomainError("diffusion coefficient in um^2/s must be finite and >= 0");
  }
  return DiffusionCoefficient(Um2sToSi(um2_per_s));
}

double DToUm2s(DiffusionCoefficient d) { return SiToUm2s(d.m2_per_s()); }

}  // namespace qwalk
