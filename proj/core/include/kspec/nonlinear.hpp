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

#include <vector>

#include "kspec/grid.hpp"
#include "kspec/model.hpp"

namespace kspec {

/// Spectra of the perturbation nonlinearities (f, g).
struct RhsFields {
  SpectralField f_hat;
  std::vector<SpectralField> g_hat;
  bool dealiased = false;
};

/// How the capillarity contribution to g is written. Divided carries the
/// bracket  grad(theta) Lap(theta) + 1/2 grad|grad theta|^2 - Div(grad theta (x) grad theta),
/// scaled by kappa/(rho_* + theta); Conservative uses Div K(rho) = kappa rho grad Lap rho,
/// which leaves no nonlinear capillarity term at all.
enum class GForm { Divided, Conservative };

enum class StressRoute { Tensor, Direct };

/// Throws RangeViolation unless rho_*/4 <= rho_* + theta <= 4 rho_* at every lattice point.
void check_range(const RealField& theta, const ModelParams& params);

/// -(theta div u + u . grad theta), dealiased.
SpectralField compute_f(const SpectralState& state, const Grid& grid, const ModelParams& params);

std::vector<SpectralField> compute_g(const SpectralState& state, const ModelParams& params, const Grid& grid,
                                     GForm form = GForm::Conservative);

/// f and g together, sharing the physical-space fields.
RhsFields compute_rhs(const SpectralState& state, const ModelParams& params, const Grid& grid,
                      GForm form = GForm::Conservative);

/// The capillarity bracket on its own, dealiased. Identically zero in exact arithmetic.
std::vector<SpectralField> korteweg_remainder(const SpectralField& theta_hat, const Grid& grid);

/// Div S(u) with S(u) = mu_* D(u) + (nu_* - mu_*) div u I, D_jk = d_j u_k + d_k u_j.
std::vector<SpectralField> stress_divergence(const std::vector<SpectralField>& u_hat, const ModelParams& params,
                                             const Grid& grid, StressRoute route = StressRoute::Direct);

}  // namespace kspec
