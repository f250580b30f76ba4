// Copyright 2026 The kspec Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kspec {

/// Pressure per unit density as a function of the density r > 0, together
/// with its first three derivatives.
///
/// Two families are supported: the polytropic law P(r) = A r^g (A > 0,
/// g >= 1) and a user table (r_i, P_i) that is replaced by its least-squares
/// polynomial fit so that every derivative is available in closed form.
class PressureLaw {
 public:
  enum class Family { Polytropic, Tabulated };

  static PressureLaw polytropic(double coefficient, double exponent);
  static PressureLaw tabulated(std::vector<std::pair<double, double>> table);

  Family family() const noexcept { return family_; }
  double coefficient() const noexcept { return coefficient_; }
  double exponent() const noexcept { return exponent_; }
  const std::vector<std::pair<double, double>>& table() const noexcept {
    return table_;
  }

  double value(double r) const;
  double d1(double r) const;
  double d2(double r) const;
  double d3(double r) const;

 private:
  PressureLaw() = default;
  double evaluate(double r, int order) const;

  Family family_ = Family::Polytropic;
  double coefficient_ = 1.0;
  double exponent_ = 2.0;
  std::vector<std::pair<double, double>> table_;
  // Tabulated fit: P(r) = sum_k c_k x^k with x = (r - center) / scale.
  std::vector<double> fit_;
  double center_ = 0.0;
  double scale_ = 1.0;
};

struct RawModelParams {
  double mu_star = 0.0;
  double nu_star = 0.0;
  double kappa_star = 0.0;
  double rho_star = 0.0;
  PressureLaw pressure = PressureLaw::polytropic(1.0, 2.0);
};

/// Validated physical coefficients. The derived quantities are frozen at
/// construction and cannot drift from the primaries.
class ModelParams {
 public:
  double mu_star() const noexcept { return mu_; }
  double nu_star() const noexcept { return nu_; }
  double kappa_star() const noexcept { return kappa_; }
  double rho_star() const noexcept { return rho_; }
  const PressureLaw& pressure() const noexcept { return pressure_; }

  double alpha_star() const noexcept { return alpha_; }
  double beta_star() const noexcept { return beta_; }
  double gamma_star() const noexcept { return gamma_; }
  double delta_star() const noexcept { return delta_; }
  /// P'(rho_*).
  double pressure_slope() const noexcept { return slope_; }
  /// sqrt(rho_* gamma_*), the low-frequency sound speed.
  double sound_speed() const noexcept;

 private:
  friend ModelParams validate_params(const RawModelParams& raw);
  ModelParams(const RawModelParams& raw, double slope);

  double mu_, nu_, kappa_, rho_;
  PressureLaw pressure_;
  double alpha_, beta_, gamma_, delta_, slope_;
};

/// Throws Error with ViolatesViscosity, ViolatesCapillarity,
/// ViolatesPressure or DegenerateDiscriminant, or ValidationError for
/// non-finite or non-positive inputs.
ModelParams validate_params(const RawModelParams& raw);

/// Q(theta) = int_0^1 P''(rho_* + s theta)(1 - s) ds, the Taylor remainder
/// coefficient with P(rho_*+theta) = P(rho_*) + P'(rho_*) theta + Q theta^2.
double taylor_pressure_coefficient(double theta, const ModelParams& params);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational operator+(const Rational& a, const Rational& b);
Rational reciprocal(const Rational& a);

/// A real exponent that optionally remembers an exact rational form, so that
/// equality constraints can be checked without rounding.
struct Exponent {
  double value = 0.0;
  std::optional<Rational> exact;

  static Exponent real(double v) { return Exponent{v, std::nullopt}; }
  static Exponent ratio(std::int64_t num, std::int64_t den);
  /// Accepts "8", "0.5", "24/11" or "inf".
  static Exponent parse(std::string_view text);
  std::string to_string() const;
};

struct ExponentSet {
  int dim = 3;
  Exponent p, q1, q2;
  double tau = 0.0;
  double ell1 = 0.0;  // N/(2 q1) - tau
  double ell2 = 0.0;  // N/(2 q2) + 1 - tau
};

ExponentSet validate_exponents(const Exponent& p, const Exponent& q1, const Exponent& q2,
                               double tau, int dim);

}  // namespace kspec
