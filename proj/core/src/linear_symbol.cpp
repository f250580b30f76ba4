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

#include "kspec/linear_symbol.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "kspec/error.hpp"

namespace kspec {
namespace {

constexpr double kUnderflowExponent = -745.0;

double guarded_exp(double x) { return x < kUnderflowExponent ? 0.0 : std::exp(x); }

Complex guarded_exp(Complex z) { return z.real() < kUnderflowExponent ? Complex(0.0) : std::exp(z); }

// sinh(y)/y and sin(w)/w; the Taylor branch covers the removable point.
double sinhc(double y) {
  if (std::abs(y) < 5e-7) {
    const double y2 = y * y;
    return 1.0 + y2 / 6.0 * (1.0 + y2 / 20.0 * (1.0 + y2 / 42.0 * (1.0 + y2 / 72.0 * (1.0 + y2 / 110.0))));
  }
  return std::sinh(y) / y;
}

double sinc(double w) {
  if (std::abs(w) < 5e-7) {
    const double w2 = w * w;
    return 1.0 - w2 / 6.0 * (1.0 - w2 / 20.0 * (1.0 - w2 / 42.0 * (1.0 - w2 / 72.0 * (1.0 - w2 / 110.0))));
  }
  return std::sin(w) / w;
}

double inverse_factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return 1.0 / f;
}

// phi_k[a, b] for the divided difference of the two eigen-arguments.
Complex phi_divided_difference(int k, Complex a, Complex b) {
  const Complex diff = a - b;
  if (std::abs(diff) >= 0.25) return (phi_function(k, a) - phi_function(k, b)) / diff;
  // Hermite-Genocchi: phi_k[a,b] = int_0^1 phi_k'(b + s (a - b)) ds, with
  // phi_k' = phi_k - k phi_{k+1}; 10-point Gauss-Legendre on [0, 1].
  static constexpr std::array<double, 5> nodes = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                                  0.8650633666889845, 0.9739065285171717};
  static constexpr std::array<double, 5> weights = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                                    0.1494513491505806, 0.0666713443086881};
  auto derivative = [k](Complex z) { return phi_function(k, z) - static_cast<double>(k) * phi_function(k + 1, z); };
  Complex sum(0.0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double s_lo = 0.5 * (1.0 - nodes[i]);
    const double s_hi = 0.5 * (1.0 + nodes[i]);
    sum += weights[i] * (derivative(b + s_lo * diff) + derivative(b + s_hi * diff));
  }
  return 0.5 * sum;
}

struct BlockFunction {
  double f0;  // coefficient of the identity
  double f1;  // coefficient of (hB - m h I), B the 2x2 compressible block
};

BlockFunction exponential_block(double x, double disc, double h) {
  if (disc >= 0.0) {
    const double y = h * std::sqrt(disc);
    if (y > 1.0) {
      const double ea = guarded_exp(x + y);
      const double eb = guarded_exp(x - y);
      return {0.5 * (ea + eb), 0.5 * (ea - eb) / y};
    }
    const double e = guarded_exp(x);
    return {e * std::cosh(y), e * sinhc(y)};
  }
  const double w = h * std::sqrt(-disc);
  const double e = guarded_exp(x);
  return {e * std::cos(w), e * sinc(w)};
}

BlockFunction phi_block(int k, double x, double disc, double h) {
  const Complex y = h * std::sqrt(Complex(disc, 0.0));
  const Complex a = x + y;
  const Complex b = x - y;
  const double f0 = (0.5 * (phi_function(k, a) + phi_function(k, b))).real();
  const double f1 = phi_divided_difference(k, a, b).real();
  return {f0, f1};
}

void require_dim(int dim) {
  if (dim < 1 || dim > 3) throw Error(ErrorCode::InvalidGrid, "wavevector dimension must be 1, 2 or 3");
}

double norm_of(const Vec3& xi, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) s += xi[static_cast<std::size_t>(k)] * xi[static_cast<std::size_t>(k)];
  return std::sqrt(s);
}

}  // namespace

Complex phi_function(int k, Complex z) {
  if (std::abs(z) < 1.0) {
    // sum_j z^j / (j + k)!, 25 terms are enough for |z| < 1.
    Complex term(inverse_factorial(k));
    Complex sum = term;
    for (int j = 1; j < 25; ++j) {
      term *= z / static_cast<double>(j + k);
      sum += term;
    }
    return sum;
  }
  Complex p = guarded_exp(z);
  double inv_fact = 1.0;
  for (int j = 0; j < k; ++j) {
    p = (p - inv_fact) / z;
    inv_fact /= static_cast<double>(j + 1);
  }
  return p;
}

EigenPair eigenpair(double xi_norm_sq, const ModelParams& params) {
  const double r2 = xi_norm_sq;
  if (r2 == 0.0) return {Complex(0.0), Complex(0.0), Regime::NearDegenerate};
  const double half_sum = 0.5 * (params.alpha_star() + params.beta_star()) * r2;
  const double product = params.rho_star() * (params.kappa_star() * r2 + params.gamma_star()) * r2;
  const double disc = r2 * (params.delta_star() * r2 - params.rho_star() * params.gamma_star());

  EigenPair out;
  if (disc >= 0.0) {
    const double big = -half_sum - std::sqrt(disc);
    out.lambda_minus = big;
    out.lambda_plus = big != 0.0 ? product / big : 0.0;
    out.regime = Regime::RealDistinct;
  } else {
    const double w = std::sqrt(-disc);
    out.lambda_plus = Complex(-half_sum, w);
    out.lambda_minus = Complex(-half_sum, -w);
    out.regime = Regime::ComplexPair;
  }
  if (std::abs(disc) <= 1e-12 * half_sum * half_sum) out.regime = Regime::NearDegenerate;
  return out;
}

double crossover_radius(const ModelParams& params) {
  return std::sqrt(params.rho_star() * params.gamma_star() / std::abs(params.delta_star()));
}

std::pair<Complex, Complex> asymptotic_lambda(double xi_norm, AsymptoticRegime regime, const ModelParams& params) {
  if (!(xi_norm > 0.0) || !std::isfinite(xi_norm))
    throw Error(ErrorCode::WrongRegime, "asymptotic expansions need a positive finite |xi|");
  const double rc = crossover_radius(params);
  const double r2 = xi_norm * xi_norm;
  const double half_sum = 0.5 * (params.alpha_star() + params.beta_star()) * r2;
  if (regime == AsymptoticRegime::Low) {
    if (!(xi_norm < rc))
      throw Error(ErrorCode::WrongRegime,
                  "|xi| = " + std::to_string(xi_norm) + " is not below the crossover radius " + std::to_string(rc));
    const double w = std::sqrt(params.rho_star() * params.gamma_star()) * xi_norm;
    return {Complex(-half_sum, w), Complex(-half_sum, -w)};
  }
  if (!(xi_norm > rc))
    throw Error(ErrorCode::WrongRegime,
                "|xi| = " + std::to_string(xi_norm) + " is not above the crossover radius " + std::to_string(rc));
  const double delta = params.delta_star();
  const double root = std::sqrt(std::abs(delta)) * r2;
  if (delta > 0.0) return {Complex(-half_sum + root, 0.0), Complex(-half_sum - root, 0.0)};
  return {Complex(-half_sum, root), Complex(-half_sum, -root)};
}

ModeCoefficients mode_function(SymbolKind kind, double h, double xi_norm_sq, const ModelParams& params) {
  const int k = kind == SymbolKind::Exponential ? 0 : (kind == SymbolKind::Phi1 ? 1 : 2);
  if (xi_norm_sq == 0.0 || h == 0.0) {
    if (k == 0) return {};
    const double v = xi_norm_sq == 0.0 ? h * inverse_factorial(k) : 0.0;
    return {v, 0.0, 0.0, v, v};
  }

  const double r2 = xi_norm_sq;
  const double r = std::sqrt(r2);
  const double s = (params.alpha_star() + params.beta_star()) * r2;
  const double disc = r2 * (params.delta_star() * r2 - params.rho_star() * params.gamma_star());
  const double x = -0.5 * s * h;

  const BlockFunction f = k == 0 ? exponential_block(x, disc, h) : phi_block(k, x, disc, h);
  const double fh = f.f1 * h;

  ModeCoefficients out;
  out.a = f.f0 + 0.5 * fh * s;
  out.b = -fh * params.rho_star() * r;
  out.c = -fh * (params.gamma_star() + params.kappa_star() * r2) * r;
  out.d = f.f0 - 0.5 * fh * s;
  const double zs = -params.alpha_star() * r2 * h;
  out.sol = k == 0 ? guarded_exp(zs) : phi_function(k, Complex(zs, 0.0)).real();

  if (k > 0) {
    out.a *= h;
    out.b *= h;
    out.c *= h;
    out.d *= h;
    out.sol *= h;
  }
  return out;
}

Eigen::MatrixXcd to_matrix(const ModeCoefficients& coeffs, const Vec3& xi, int dim) {
  require_dim(dim);
  const Complex I(0.0, 1.0);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim + 1, dim + 1);
  const double r = norm_of(xi, dim);
  g(0, 0) = coeffs.a;
  if (r == 0.0) {
    for (int j = 1; j <= dim; ++j) g(j, j) = coeffs.sol;
    return g;
  }
  std::array<double, 3> n{};
  for (int j = 0; j < dim; ++j) n[static_cast<std::size_t>(j)] = xi[static_cast<std::size_t>(j)] / r;
  for (int j = 0; j < dim; ++j) {
    const double nj = n[static_cast<std::size_t>(j)];
    g(0, j + 1) = I * coeffs.b * nj;
    g(j + 1, 0) = I * coeffs.c * nj;
    for (int l = 0; l < dim; ++l) {
      const double nl = n[static_cast<std::size_t>(l)];
      g(j + 1, l + 1) = coeffs.sol * ((j == l ? 1.0 : 0.0) - nj * nl) + coeffs.d * nj * nl;
    }
  }
  return g;
}

Eigen::MatrixXcd generator_matrix(const Vec3& xi, int dim, const ModelParams& params) {
  require_dim(dim);
  const Complex I(0.0, 1.0);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim + 1, dim + 1);
  double r2 = 0.0;
  for (int j = 0; j < dim; ++j) r2 += xi[static_cast<std::size_t>(j)] * xi[static_cast<std::size_t>(j)];
  const double coupling = params.gamma_star() + params.kappa_star() * r2;
  for (int j = 0; j < dim; ++j) {
    const double xj = xi[static_cast<std::size_t>(j)];
    a(0, j + 1) = -I * params.rho_star() * xj;
    a(j + 1, 0) = -I * coupling * xj;
    for (int l = 0; l < dim; ++l) {
      const double xl = xi[static_cast<std::size_t>(l)];
      a(j + 1, l + 1) = -params.beta_star() * xj * xl - (j == l ? params.alpha_star() * r2 : 0.0);
    }
  }
  return a;
}

PropagatorSymbol propagator_symbol(double t, const Vec3& xi, int dim, const ModelParams& params) {
  if (!(t >= 0.0)) throw Error(ErrorCode::ValidationError, "propagator time must be nonnegative");
  double r2 = 0.0;
  for (int j = 0; j < dim; ++j) r2 += xi[static_cast<std::size_t>(j)] * xi[static_cast<std::size_t>(j)];
  return to_matrix(mode_function(SymbolKind::Exponential, t, r2, params), xi, dim);
}

Sector::Sector(double epsilon_angle, double lambda0) : epsilon_(epsilon_angle), lambda0_(lambda0) {
  if (!(epsilon_angle > 0.0 && epsilon_angle < 0.5 * std::numbers::pi))
    throw Error(ErrorCode::ValidationError, "sector angle must lie in (0, pi/2)");
  if (!(lambda0 >= 1.0) || !std::isfinite(lambda0))
    throw Error(ErrorCode::ValidationError, "sector radius lambda0 must be >= 1");
}

bool Sector::contains(Complex lambda) const noexcept {
  return std::abs(std::arg(lambda)) < std::numbers::pi - epsilon_ && std::abs(lambda) >= lambda0_;
}

ResolventConstants ResolventConstants::linearised(const ModelParams& params) {
  return {params.rho_star(), params.pressure_slope(), params.rho_star()};
}

Eigen::MatrixXcd resolvent_forward_matrix(Complex lambda, const Vec3& xi, int dim, const ResolventConstants& k,
                                          const ModelParams& params) {
  require_dim(dim);
  const Complex I(0.0, 1.0);
  double r2 = 0.0;
  for (int j = 0; j < dim; ++j) r2 += xi[static_cast<std::size_t>(j)] * xi[static_cast<std::size_t>(j)];
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim + 1, dim + 1);
  a(0, 0) = lambda;
  const double coupling = k.gamma1 + params.kappa_star() * k.gamma2 * r2;
  for (int j = 0; j < dim; ++j) {
    const double xj = xi[static_cast<std::size_t>(j)];
    a(0, j + 1) = I * k.gamma2 * xj;
    a(j + 1, 0) = I * coupling * xj;
    for (int l = 0; l < dim; ++l) {
      const double xl = xi[static_cast<std::size_t>(l)];
      a(j + 1, l + 1) = params.nu_star() * xj * xl;
    }
    a(j + 1, j + 1) += k.gamma0 * lambda + params.mu_star() * r2;
  }
  return a;
}

ResolventSymbol resolvent_symbol(Complex lambda, const Vec3& xi, int dim, const ResolventConstants& k,
                                 const ModelParams& params, const Sector& sector) {
  if (!sector.contains(lambda))
    throw Error(ErrorCode::OutsideSector, "lambda = (" + std::to_string(lambda.real()) + ", " +
                                              std::to_string(lambda.imag()) + ") is outside the sector");
  const Eigen::MatrixXcd a = resolvent_forward_matrix(lambda, xi, dim, k, params);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  const double cond = smallest > 0.0 ? sv(0) / smallest : INFINITY;
  if (!(cond <= 1e12))
    throw Error(ErrorCode::SingularSystem, "resolvent system has condition number " + std::to_string(cond));
  return a.fullPivLu().inverse();
}

ResolventModeInverse resolvent_mode_inverse(Complex lambda, double xi_norm, const ResolventConstants& k,
                                            const ModelParams& params) {
  const Complex I(0.0, 1.0);
  const double r = xi_norm;
  const double r2 = r * r;
  const Complex m00 = lambda;
  const Complex m01 = I * k.gamma2 * r;
  const Complex m10 = I * (k.gamma1 + params.kappa_star() * k.gamma2 * r2) * r;
  const Complex m11 = k.gamma0 * lambda + (params.mu_star() + params.nu_star()) * r2;
  const Complex det = m00 * m11 - m01 * m10;
  const Complex sol_den = k.gamma0 * lambda + params.mu_star() * r2;

  // Closed-form 2x2 singular values: s1 s2 = |det|, s1^2 + s2^2 = ||M||_F^2.
  const double frob = std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11);
  const double adet = std::abs(det);
  const double big = 0.5 * (frob + std::sqrt(std::max(0.0, frob * frob - 4.0 * adet * adet)));
  ResolventModeInverse out;
  out.condition = adet > 0.0 ? big / adet : INFINITY;
  if (det == 0.0 || sol_den == 0.0 || !(out.condition <= 1e12))
    throw Error(ErrorCode::SingularSystem, "resolvent mode system is singular at |xi| = " + std::to_string(r));
  out.r00 = m11 / det;
  out.r01 = -m01 / det;
  out.r10 = -m10 / det;
  out.r11 = m00 / det;
  out.sol = 1.0 / sol_den;
  return out;
}

}  // namespace kspec
