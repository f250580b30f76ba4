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

#include "kspec/propagator.hpp"

#include <bit>
#include <cmath>
#include <mutex>

#include "kspec/error.hpp"

namespace kspec {
namespace {

std::uint64_t bits_of(double x) { return std::bit_cast<std::uint64_t>(x); }

void require_hermitian(const Grid& grid, const SpectralState& state) {
  check_shape(grid, state);
  if (!is_hermitian(grid, state, 1e-10))
    throw Error(ErrorCode::NotHermitian, "input spectrum is not the transform of a real field");
}

}  // namespace

std::shared_ptr<const SymbolTable> SymbolCache::get(const Grid& grid, SymbolKind kind, double h,
                                                    const ModelParams& params) {
  Key key;
  key.bits = {static_cast<std::uint64_t>(kind),
              bits_of(h),
              static_cast<std::uint64_t>(grid.dim()),
              static_cast<std::uint64_t>(grid.modes()),
              bits_of(grid.box_length()),
              bits_of(params.mu_star()),
              bits_of(params.nu_star()),
              bits_of(params.kappa_star()),
              bits_of(params.rho_star()),
              bits_of(params.pressure_slope())};
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  auto table = std::make_shared<const SymbolTable>(build_symbol_table(grid, kind, h, params));
  std::unique_lock lock(mutex_);
  if (entries_.size() >= capacity_) entries_.clear();
  auto [it, inserted] = entries_.emplace(std::move(key), table);
  return it->second;
}

std::size_t SymbolCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void SymbolCache::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

SymbolCache& default_symbol_cache() {
  static SymbolCache cache;
  return cache;
}

SymbolTable build_symbol_table(const Grid& grid, SymbolKind kind, double h, const ModelParams& params) {
  SymbolTable table(grid.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t f = 0; f < n; ++f) {
    const auto i = static_cast<std::size_t>(f);
    table[i] = mode_function(kind, h, grid.xi_norm_sq(i), params);
  }
  return table;
}

void apply_symbol(const Grid& grid, const SymbolTable& table, const SpectralState& in, SpectralState& out,
                  bool accumulate) {
  check_shape(grid, in);
  if (table.size() != grid.size()) throw Error(ErrorCode::ShapeMismatch, "symbol table does not match the grid");
  if (!accumulate) {
    out = SpectralState::zeros(grid);
    out.time = in.time;
  } else {
    check_shape(grid, out);
  }
  const int dim = grid.dim();
  const Complex I(0.0, 1.0);
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t f = 0; f < n; ++f) {
    const auto i = static_cast<std::size_t>(f);
    const ModeCoefficients& c = table[i];
    const double r2 = grid.xi_norm_sq(i);
    Vec3 unit{0.0, 0.0, 0.0};
    if (r2 > 0.0) {
      const Vec3 xi = grid.xi(i);
      const double r = std::sqrt(r2);
      for (int k = 0; k < dim; ++k) unit[static_cast<std::size_t>(k)] = xi[static_cast<std::size_t>(k)] / r;
    }
    Complex v(0.0);
    for (int k = 0; k < dim; ++k) v += unit[static_cast<std::size_t>(k)] * in.u[static_cast<std::size_t>(k)][i];
    const Complex theta = in.theta[i];
    const Complex theta_out = c.a * theta + I * c.b * v;
    const Complex v_out = I * c.c * theta + c.d * v;
    if (accumulate) {
      out.theta[i] += theta_out;
    } else {
      out.theta[i] = theta_out;
    }
    for (int k = 0; k < dim; ++k) {
      const double nk = unit[static_cast<std::size_t>(k)];
      const Complex uk = in.u[static_cast<std::size_t>(k)][i];
      const Complex u_out = c.sol * (uk - nk * v) + nk * v_out;
      if (accumulate) {
        out.u[static_cast<std::size_t>(k)][i] += u_out;
      } else {
        out.u[static_cast<std::size_t>(k)][i] = u_out;
      }
    }
  }
}

SpectralState apply_semigroup(double t, const SpectralState& state, const Grid& grid, const ModelParams& params) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::ValidationError, "semigroup time must be >= 0");
  require_hermitian(grid, state);
  if (t == 0.0) return state;
  SpectralState out;
  apply_symbol(grid, *default_symbol_cache().get(grid, SymbolKind::Exponential, t, params), state, out);
  out.time = state.time + t;
  return out;
}

std::pair<SpectralState, SpectralState> apply_split_semigroup(double t, const SpectralState& state,
                                                              const CutoffProfile& cutoff, const Grid& grid,
                                                              const ModelParams& params) {
  require_hermitian(grid, state);
  auto [low, high] = low_high_split(grid, state, cutoff);
  return {apply_semigroup(t, low, grid, params), apply_semigroup(t, high, grid, params)};
}

SpectralState apply_generator(const Grid& grid, const SpectralState& state, const ModelParams& params) {
  check_shape(grid, state);
  SpectralState out = SpectralState::zeros(grid);
  out.time = state.time;
  const int dim = grid.dim();
  const Complex I(0.0, 1.0);
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t f = 0; f < n; ++f) {
    const auto i = static_cast<std::size_t>(f);
    const Vec3 xi = grid.xi(i);
    const double r2 = grid.xi_norm_sq(i);
    Complex div(0.0);
    for (int k = 0; k < dim; ++k) div += xi[static_cast<std::size_t>(k)] * state.u[static_cast<std::size_t>(k)][i];
    out.theta[i] = -I * params.rho_star() * div;
    const Complex coupling = -I * (params.gamma_star() + params.kappa_star() * r2) * state.theta[i];
    for (int k = 0; k < dim; ++k) {
      const double xk = xi[static_cast<std::size_t>(k)];
      out.u[static_cast<std::size_t>(k)][i] = -params.alpha_star() * r2 * state.u[static_cast<std::size_t>(k)][i] -
                                              params.beta_star() * xk * div + coupling * xk;
    }
  }
  return out;
}

}  // namespace kspec
