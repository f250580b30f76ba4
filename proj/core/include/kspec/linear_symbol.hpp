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

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "kspec/grid.hpp"
#include "kspec/model.hpp"

namespace kspec {

// Per-mode algebra of the linearised system
//
//   theta_t + rho_* div u = 0,
//   u_t - alpha_* Lap u - beta_* grad div u - kappa_* grad Lap theta + gamma_* grad theta = 0.
//
// For a wavevector xi with r = |xi| and unit n = xi / r, write v = n . u_hat.
// The solenoidal part of u_hat decays like exp(-alpha_* r^2 t); (theta_hat, v)
// obey the 2x2 system
//
//   theta' = -i rho_* r v,
//   v'     = -i (gamma_* + kappa_* r^2) r theta - (alpha_* + beta_*) r^2 v,
//
// whose eigenvalues are lambda_+- .

enum class Regime { RealDistinct, ComplexPair, NearDegenerate };

struct EigenPair {
  Complex lambda_plus;
  Complex lambda_minus;
  Regime regime = Regime::RealDistinct;
};

/// Roots of z^2 + (a+b)|xi|^2 z + rho k |xi|^4 + rho g |xi|^2. The root of
/// larger magnitude is formed first and the other recovered from the product.
EigenPair eigenpair(double xi_norm_sq, const ModelParams& params);

enum class AsymptoticRegime { Low, High };

/// sqrt(rho_* gamma_* / |delta_*|): below it the discriminant is dominated by
/// the pressure term, above it by the capillarity/viscosity term.
double crossover_radius(const ModelParams& params);

/// Leading-order expansions of lambda_+- for |xi| -> 0 (Low) and
/// |xi| -> infinity (High). Throws WrongRegime when |xi| is on the wrong side
/// of crossover_radius.
std::pair<Complex, Complex> asymptotic_lambda(double xi_norm, AsymptoticRegime regime, const ModelParams& params);

/// A function F of the mode generator A(xi), stored in the structured form
///
///   theta_out = a theta + i b v,
///   v_out     = i c theta + d v,
///   u_out     = sol (u - n v) + n v_out.
///
/// All five numbers are real for the functions used here, which makes the
/// action map Hermitian spectra to Hermitian spectra exactly.
struct ModeCoefficients {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;
  double sol = 1.0;
};

/// Exponential: exp(h A). Phi1, Phi2: h phi_k(h A) with phi_1(z) = (e^z - 1)/z
/// and phi_2(z) = (e^z - 1 - z)/z^2, the exponential-quadrature weights.
enum class SymbolKind { Exponential, Phi1, Phi2 };

ModeCoefficients mode_function(SymbolKind kind, double h, double xi_norm_sq, const ModelParams& params);

/// Scalar phi_k(z) for k >= 0 (phi_0 = exp), underflow-guarded.
Complex phi_function(int k, Complex z);

/// The (N+1)x(N+1) matrix acting on (theta_hat, u_hat).
using PropagatorSymbol = Eigen::MatrixXcd;

Eigen::MatrixXcd to_matrix(const ModeCoefficients& coeffs, const Vec3& xi, int dim);
Eigen::MatrixXcd generator_matrix(const Vec3& xi, int dim, const ModelParams& params);
PropagatorSymbol propagator_symbol(double t, const Vec3& xi, int dim, const ModelParams& params);

/// Sigma_{eps, lambda0} = { |arg lambda| < pi - eps, |lambda| >= lambda0 }.
class Sector {
 public:
  Sector(double epsilon_angle, double lambda0);
  double epsilon_angle() const noexcept { return epsilon_; }
  double lambda0() const noexcept { return lambda0_; }
  bool contains(Complex lambda) const noexcept;

 private:
  double epsilon_;
  double lambda0_;
};

/// Constant coefficients of the resolvent problem
///   lambda rho + g2 div u = f,
///   g0 lambda u - mu Lap u - nu grad div u + grad(g1 rho) - kappa grad(g2 Lap rho) = g.
struct ResolventConstants {
  double gamma0 = 1.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;

  /// The values obtained by linearising about rho_*: (rho_*, P'(rho_*), rho_*).
  static ResolventConstants linearised(const ModelParams& params);
};

using ResolventSymbol = Eigen::MatrixXcd;

Eigen::MatrixXcd resolvent_forward_matrix(Complex lambda, const Vec3& xi, int dim, const ResolventConstants& k,
                                          const ModelParams& params);

/// Inverse of resolvent_forward_matrix. Throws OutsideSector, or
/// SingularSystem when the 2-norm condition number exceeds 1e12.
ResolventSymbol resolvent_symbol(Complex lambda, const Vec3& xi, int dim, const ResolventConstants& k,
                                 const ModelParams& params, const Sector& sector);

/// Structured inverse for field-level solves:
///   rho = r00 f + r01 (n.g),  v = r10 f + r11 (n.g),  u = sol (g - n (n.g)) + n v.
struct ResolventModeInverse {
  Complex r00, r01, r10, r11, sol;
  double condition = 1.0;  // 2-norm condition of the 2x2 block
};

ResolventModeInverse resolvent_mode_inverse(Complex lambda, double xi_norm, const ResolventConstants& k,
                                            const ModelParams& params);

}  // namespace kspec
