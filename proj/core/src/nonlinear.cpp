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

#include "kspec/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>

#include "kspec/error.hpp"

namespace kspec {
namespace {

using Vector = std::vector<RealField>;

struct PhysicalFields {
  RealField theta;
  Vector grad_theta;          // d_k theta
  Vector u;                   // u_j
  std::vector<Vector> grad_u;  // grad_u[j][k] = d_k u_j
};

PhysicalFields to_physical(const SpectralState& state, const Grid& grid, bool need_velocity_gradient) {
  const int dim = grid.dim();
  PhysicalFields p;
  p.theta = inverse_field(grid, state.theta);
  for (int k = 0; k < dim; ++k) p.grad_theta.push_back(inverse_field(grid, derivative(grid, state.theta, k)));
  for (int j = 0; j < dim; ++j) {
    const auto& uj = state.u[static_cast<std::size_t>(j)];
    p.u.push_back(inverse_field(grid, uj));
    if (!need_velocity_gradient) continue;
    Vector row;
    for (int k = 0; k < dim; ++k) row.push_back(inverse_field(grid, derivative(grid, uj, k)));
    p.grad_u.push_back(std::move(row));
  }
  return p;
}

SpectralField masked_forward(const Grid& grid, const std::vector<bool>& mask, const RealField& field) {
  SpectralField out = forward_field(grid, field);
  apply_mask(mask, out);
  return out;
}

template <class F>
RealField pointwise(std::size_t n, F&& f) {
  RealField out(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  return out;
}

SpectralField f_from_physical(const PhysicalFields& p, const Grid& grid, const std::vector<bool>& mask) {
  const std::size_t dim = p.u.size();
  const RealField value = pointwise(grid.size(), [&](std::size_t i) {
    double div = 0.0;
    double advect = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      div += p.grad_u[k][k][i];
      advect += p.u[k][i] * p.grad_theta[k][i];
    }
    return -(p.theta[i] * div + advect);
  });
  return masked_forward(grid, mask, value);
}

// Physical-space bracket components, each product chain dealiased.
Vector bracket_physical(const SpectralField& theta_hat, const Grid& grid, const std::vector<bool>& mask) {
  const auto dim = static_cast<std::size_t>(grid.dim());
  const std::size_t n = grid.size();
  Vector grad;
  for (std::size_t k = 0; k < dim; ++k)
    grad.push_back(inverse_field(grid, derivative(grid, theta_hat, static_cast<int>(k))));
  const RealField lap = inverse_field(grid, laplacian(grid, theta_hat));

  const SpectralField grad_sq_hat = masked_forward(grid, mask, pointwise(n, [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += grad[k][i] * grad[k][i];
    return s;
  }));

  Vector out;
  for (std::size_t j = 0; j < dim; ++j) {
    SpectralField b_hat =
        masked_forward(grid, mask, pointwise(n, [&](std::size_t i) { return grad[j][i] * lap[i]; }));
    const SpectralField half_grad = derivative(grid, grad_sq_hat, static_cast<int>(j));
    for (std::size_t i = 0; i < n; ++i) b_hat[i] += 0.5 * half_grad[i];
    for (std::size_t k = 0; k < dim; ++k) {
      const SpectralField tensor_hat =
          masked_forward(grid, mask, pointwise(n, [&](std::size_t i) { return grad[k][i] * grad[j][i]; }));
      const SpectralField div_part = derivative(grid, tensor_hat, static_cast<int>(k));
      for (std::size_t i = 0; i < n; ++i) b_hat[i] -= div_part[i];
    }
    apply_mask(mask, b_hat);
    out.push_back(inverse_field(grid, b_hat));
  }
  return out;
}

std::vector<SpectralField> g_from_physical(const SpectralState& state, const PhysicalFields& p,
                                           const ModelParams& params, const Grid& grid,
                                           const std::vector<bool>& mask, GForm form) {
  const auto dim = static_cast<std::size_t>(grid.dim());
  const std::size_t n = grid.size();
  Vector div_stress;
  for (auto& s : stress_divergence(state.u, params, grid, StressRoute::Direct))
    div_stress.push_back(inverse_field(grid, s));
  Vector bracket;
  if (form == GForm::Divided) bracket = bracket_physical(state.theta, grid, mask);

  const double rho = params.rho_star();
  const double slope = params.pressure_slope();
  const double kappa = params.kappa_star();
  const PressureLaw& law = params.pressure();
  const RealField slope_now = pointwise(n, [&](std::size_t i) { return law.d1(rho + p.theta[i]); });

  std::vector<SpectralField> out;
  for (std::size_t j = 0; j < dim; ++j) {
    const RealField value = pointwise(n, [&](std::size_t i) {
      const double inv = 1.0 / (rho + p.theta[i]);
      double advect = 0.0;
      for (std::size_t k = 0; k < dim; ++k) advect += p.u[k][i] * p.grad_u[j][k][i];
      const double dtheta = p.grad_theta[j][i];
      double g = -advect + (inv - 1.0 / rho) * div_stress[j][i] - (slope * inv - slope / rho) * dtheta -
                 (slope_now[i] - slope) * inv * dtheta;
      if (form == GForm::Divided) g += kappa * inv * bracket[j][i];
      return g;
    });
    out.push_back(masked_forward(grid, mask, value));
  }
  return out;
}

}  // namespace

void check_range(const RealField& theta, const ModelParams& params) {
  if (theta.empty()) return;
  const double rho = params.rho_star();
  double min_rho = std::numeric_limits<double>::infinity();
  double max_rho = -min_rho;
  bool finite = true;
  for (double v : theta) {
    finite = finite && std::isfinite(v);
    min_rho = std::min(min_rho, rho + v);
    max_rho = std::max(max_rho, rho + v);
  }
  if (!finite || !(min_rho >= 0.25 * rho && max_rho <= 4.0 * rho)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density left [rho_*/4, 4 rho_*]: min(rho_* + theta) = " << min_rho << ", max = " << max_rho;
    throw Error(ErrorCode::RangeViolation, msg.str());
  }
}

SpectralField compute_f(const SpectralState& state, const Grid& grid, const ModelParams& params) {
  check_shape(grid, state);
  const PhysicalFields p = to_physical(state, grid, true);
  check_range(p.theta, params);
  return f_from_physical(p, grid, dealias_mask(grid));
}

std::vector<SpectralField> compute_g(const SpectralState& state, const ModelParams& params, const Grid& grid,
                                     GForm form) {
  check_shape(grid, state);
  const PhysicalFields p = to_physical(state, grid, true);
  check_range(p.theta, params);
  return g_from_physical(state, p, params, grid, dealias_mask(grid), form);
}

RhsFields compute_rhs(const SpectralState& state, const ModelParams& params, const Grid& grid, GForm form) {
  check_shape(grid, state);
  const PhysicalFields p = to_physical(state, grid, true);
  check_range(p.theta, params);
  const auto mask = dealias_mask(grid);
  RhsFields out;
  out.f_hat = f_from_physical(p, grid, mask);
  out.g_hat = g_from_physical(state, p, params, grid, mask, form);
  out.dealiased = true;
  return out;
}

std::vector<SpectralField> korteweg_remainder(const SpectralField& theta_hat, const Grid& grid) {
  if (theta_hat.size() != grid.size()) throw Error(ErrorCode::ShapeMismatch, "theta spectrum does not match the grid");
  const auto mask = dealias_mask(grid);
  std::vector<SpectralField> out;
  for (const auto& b : bracket_physical(theta_hat, grid, mask)) out.push_back(masked_forward(grid, mask, b));
  return out;
}

std::vector<SpectralField> stress_divergence(const std::vector<SpectralField>& u_hat, const ModelParams& params,
                                             const Grid& grid, StressRoute route) {
  const auto dim = static_cast<std::size_t>(grid.dim());
  if (u_hat.size() != dim) throw Error(ErrorCode::ShapeMismatch, "velocity has the wrong number of components");
  for (const auto& c : u_hat)
    if (c.size() != grid.size()) throw Error(ErrorCode::ShapeMismatch, "velocity spectrum does not match the grid");
  const std::size_t n = grid.size();
  const double mu = params.mu_star();
  const double nu = params.nu_star();

  SpectralField div(n, Complex(0.0));
  for (std::size_t k = 0; k < dim; ++k) {
    const SpectralField d = derivative(grid, u_hat[k], static_cast<int>(k));
    for (std::size_t i = 0; i < n; ++i) div[i] += d[i];
  }

  std::vector<SpectralField> out(dim, SpectralField(n, Complex(0.0)));
  if (route == StressRoute::Direct) {
    for (std::size_t j = 0; j < dim; ++j) {
      const SpectralField lap = laplacian(grid, u_hat[j]);
      const SpectralField grad_div = derivative(grid, div, static_cast<int>(j));
      for (std::size_t i = 0; i < n; ++i) out[j][i] = mu * lap[i] + nu * grad_div[i];
    }
    return out;
  }

  // Assemble S_jk explicitly, then take its row divergence.
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < dim; ++k) {
      const SpectralField djuk = derivative(grid, u_hat[k], static_cast<int>(j));
      const SpectralField dkuj = derivative(grid, u_hat[j], static_cast<int>(k));
      SpectralField s(n);
      for (std::size_t i = 0; i < n; ++i) {
        s[i] = mu * (djuk[i] + dkuj[i]);
        if (j == k) s[i] += (nu - mu) * div[i];
      }
      const SpectralField ds = derivative(grid, s, static_cast<int>(k));
      for (std::size_t i = 0; i < n; ++i) out[j][i] += ds[i];
    }
  }
  return out;
}

}  // namespace kspec
