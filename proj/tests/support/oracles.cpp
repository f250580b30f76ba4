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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kspec::testing {

Eigen::VectorXcd dp45(const OdeRhs& rhs, Eigen::VectorXcd y, double t0, double t1, const Dp45Options& opts) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  double t = t0;
  double h = std::min(opts.initial_step, t1 - t0);
  if (t1 <= t0) return y;
  Eigen::VectorXcd k1 = rhs(t, y);
  for (long step = 0; step < opts.max_steps; ++step) {
    if (t >= t1) return y;
    if (t + h > t1) h = t1 - t;
    const Eigen::VectorXcd k2 = rhs(t + c2 * h, y + h * (a21 * k1));
    const Eigen::VectorXcd k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXcd k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXcd k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXcd k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXcd y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXcd k7 = rhs(t + h, y5);
    const Eigen::VectorXcd err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double en = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      en = std::max(en, std::abs(err[i]) / sc);
    }
    if (en <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;
    }
    const double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    h *= factor;
  }
  throw std::runtime_error("dp45 exceeded its step budget");
}

Eigen::MatrixXcd mode_generator(const Vec3& xi, int dim, const ModelParams& params) {
  // theta_t = -rho div u
  // u_t = (mu/rho) Lap u + (nu/rho) grad div u + kappa grad Lap theta - (P'(rho)/rho) grad theta
  const std::complex<double> I(0.0, 1.0);
  const double rho = params.rho_star();
  const double mu = params.mu_star() / rho;
  const double nu = params.nu_star() / rho;
  const double kappa = params.kappa_star();
  const double press = params.pressure().d1(rho) / rho;
  double r2 = 0.0;
  for (int j = 0; j < dim; ++j) r2 += xi[j] * xi[j];
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim + 1, dim + 1);
  for (int j = 0; j < dim; ++j) {
    a(0, 1 + j) = -rho * I * xi[j];
    // kappa grad Lap theta -> kappa (i xi_j)(-r2) ; -press grad theta -> -press i xi_j
    a(1 + j, 0) = kappa * I * xi[j] * (-r2) - press * I * xi[j];
    for (int l = 0; l < dim; ++l) a(1 + j, 1 + l) = -nu * xi[j] * xi[l];
    a(1 + j, 1 + j) += -mu * r2;
  }
  return a;
}

SpectralField direct_dft(const Grid& grid, const RealField& field) {
  const std::size_t n = grid.size();
  SpectralField out(n);
  const double m = grid.modes();
  for (std::size_t k = 0; k < n; ++k) {
    const auto ki = grid.unflatten(k);
    std::complex<double> sum(0.0);
    for (std::size_t x = 0; x < n; ++x) {
      const auto xi = grid.unflatten(x);
      double phase = 0.0;
      for (int d = 0; d < grid.dim(); ++d) phase += static_cast<double>(ki[d]) * xi[d];
      const double angle = -2.0 * std::numbers::pi * std::fmod(phase, m) / m;
      sum += field[x] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = sum;
  }
  return out;
}

namespace {

SpectralField band_limited_spectrum(const Grid& grid, std::mt19937_64& rng, int kmax, double amplitude) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealField noise(grid.size());
  for (double& v : noise) v = normal(rng);
  SpectralField spec = forward_field(grid, noise);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto idx = grid.unflatten(i);
    bool keep = i != 0;
    for (int d = 0; d < grid.dim(); ++d) {
      const int s = grid.signed_index(idx[d]);
      keep = keep && std::abs(s) <= kmax && !grid.is_nyquist(idx[d]);
    }
    if (!keep) spec[i] = 0.0;
  }
  const double peak = max_abs(inverse_field(grid, spec));
  if (peak > 0.0)
    for (auto& c : spec) c *= amplitude / peak;
  // exact conjugate symmetry, so that masks and cutoffs see clean zeros
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t j = grid.conjugate(i);
    if (j > i) spec[j] = std::conj(spec[i]);
    if (j == i) spec[i] = spec[i].real();
  }
  return spec;
}

}  // namespace

RealField random_band_limited(const Grid& grid, std::mt19937_64& rng, int kmax, double amplitude) {
  return inverse_field(grid, band_limited_spectrum(grid, rng, kmax, amplitude));
}

SpectralState random_state(const Grid& grid, std::mt19937_64& rng, int kmax, double theta_amp, double u_amp) {
  SpectralState s;
  s.theta = band_limited_spectrum(grid, rng, kmax, theta_amp);
  for (int k = 0; k < grid.dim(); ++k) s.u.push_back(band_limited_spectrum(grid, rng, kmax, u_amp));
  return s;
}

RealField refine(const Grid& coarse, const SpectralField& spectrum, int factor) {
  const Grid fine(coarse.dim(), coarse.box_length(), coarse.modes() * factor);
  SpectralField padded(fine.size(), 0.0);
  const double scale = static_cast<double>(fine.size()) / static_cast<double>(coarse.size());
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    const auto idx = coarse.unflatten(i);
    std::array<int, 3> target{0, 0, 0};
    bool nyquist = false;
    for (int d = 0; d < coarse.dim(); ++d) {
      nyquist = nyquist || coarse.is_nyquist(idx[d]);
      const int s = coarse.signed_index(idx[d]);
      target[d] = s >= 0 ? s : s + fine.modes();
    }
    if (nyquist) continue;
    padded[fine.flatten(target)] = scale * spectrum[i];
  }
  return inverse_field(fine, padded);
}

RealField fd8(const Grid& grid, const RealField& field, int axis) {
  static constexpr double w[4] = {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
  const double h = grid.spacing();
  const int m = grid.modes();
  RealField out(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    auto idx = grid.unflatten(i);
    double acc = 0.0;
    for (int s = 1; s <= 4; ++s) {
      auto plus = idx;
      auto minus = idx;
      plus[axis] = (idx[axis] + s) % m;
      minus[axis] = (idx[axis] - s + m) % m;
      acc += w[s - 1] * (field[grid.flatten(plus)] - field[grid.flatten(minus)]);
    }
    out[i] = acc / h;
  }
  return out;
}

RealField restrict_to(const Grid& coarse, const RealField& fine_field, int factor) {
  const Grid fine(coarse.dim(), coarse.box_length(), coarse.modes() * factor);
  RealField out(coarse.size());
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    auto idx = coarse.unflatten(i);
    for (int d = 0; d < coarse.dim(); ++d) idx[d] *= factor;
    out[i] = fine_field[fine.flatten(idx)];
  }
  return out;
}

double max_abs(const RealField& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double rel_l2_diff(const SpectralState& a, const SpectralState& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.theta.size(); ++i) {
    num += std::norm(a.theta[i] - b.theta[i]);
    den += std::norm(b.theta[i]);
  }
  for (std::size_t k = 0; k < a.u.size(); ++k)
    for (std::size_t i = 0; i < a.u[k].size(); ++i) {
      num += std::norm(a.u[k][i] - b.u[k][i]);
      den += std::norm(b.u[k][i]);
    }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

ModelParams polytropic_model(double mu, double nu, double kappa, double rho, double a, double gamma_exp) {
  RawModelParams raw;
  raw.mu_star = mu;
  raw.nu_star = nu;
  raw.kappa_star = kappa;
  raw.rho_star = rho;
  raw.pressure = PressureLaw::polytropic(a, gamma_exp);
  return validate_params(raw);
}

}  // namespace kspec::testing
