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

#ifndef QWALK_UNITS_HPP_
#define QWALK_UNITS_HPP_

// SI quantities used throughout the library. Table-style units (kDa, um^2/s)
// exist only at the conversion functions below; everything downstream of
// them works in kg, m, s and J*s.

namespace qwalk {

// Reduced Planck constant, CODATA 2006, J*s.
inline constexpr double kCodataHbar = 1.054571628e-34;
// Dalton as quoted alongside the molecular masses, kg.
inline constexpr double kDaltonKg = 1.66054e-27;

struct PhysicalConstants {
  double hbar = kCodataHbar;     // J*s
  double dalton_kg = kDaltonKg;  // kg per Da

  // Throws DomainError unless both values are finite and positive.
  void Validate() const;

  // Same constants with a different hbar (used by round-trip experiments).
  static PhysicalConstants WithHbar(double hbar);
};

class Mass {
 public:
  // Throws DomainError for non-finite or non-positive kg.
  explicit Mass(double kilograms);

  double kilograms() const { return kilograms_; }

  friend bool operator==(const Mass&, const Mass&) = default;

 private:
  double kilograms_;
};

class DiffusionCoefficient {
 public:
  DiffusionCoefficient() = default;
  // Throws DomainError for non-finite or negative values.
  explicit DiffusionCoefficient(double m2_per_s);

  double m2_per_s() const { return m2_per_s_; }

  friend bool operator==(const DiffusionCoefficient&,
                         const DiffusionCoefficient&) = default;

 private:
  double m2_per_s_ = 0.0;
};

Mass MassFromKda(double kda, const PhysicalConstants& constants = {});
double MassToKda(Mass mass, const PhysicalConstants& constants = {});

DiffusionCoefficient DFromUm2s(double um2_per_s);
double DToUm2s(DiffusionCoefficient d);

// Plain-number variants for signed diffusivities (residuals, D0 back-outs).
inline constexpr double kUm2PerM2 = 1e12;
inline double Um2sToSi(double um2_per_s) { return um2_per_s / kUm2PerM2; }
inline double SiToUm2s(double m2_per_s) { return m2_per_s * kUm2PerM2; }

}  // namespace qwalk

#endif  // QWALK_UNITS_HPP_
