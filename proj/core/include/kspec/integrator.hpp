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

#include <optional>
#include <string>
#include <vector>

#include "kspec/error.hpp"
#include "kspec/grid.hpp"
#include "kspec/model.hpp"
#include "kspec/nonlinear.hpp"
#include "kspec/norms.hpp"

namespace kspec {

enum class Scheme { Etd1, Etd2rk };

struct PicardConfig {
  bool enabled = false;
  int max_iters = 20;
  double contraction_tol = 1e-10;
};

struct IntegratorConfig {
  double dt = 0.01;
  double t_end = 1.0;
  Scheme scheme = Scheme::Etd2rk;
  PicardConfig picard;
  GForm form = GForm::Conservative;
  /// Drop the nonlinearity, leaving the exact linear flow.
  bool linear_only = false;
  /// Keep every output_stride-th state (the first and last are always kept).
  int output_stride = 1;
  /// Record the constituents of script_N at every step.
  bool record_script_N = false;

  /// Throws ConfigError on dt <= 0, t_end <= 0, dt > t_end, stride < 1 or max_iters < 1.
  void validate() const;
};

struct Trajectory {
  std::vector<SpectralState> snapshots;
  NormTimeline norms;
  /// Spatial mean of theta after each step, starting with the initial state.
  std::vector<double> mean_theta;
  bool completed = false;
  std::optional<ErrorCode> halt_code;
  std::string halt_message;
};

/// N(X) = (f, g) as a spectral state; zero when linear_only is set.
SpectralState nonlinearity(const SpectralState& state, const ModelParams& params, const Grid& grid, GForm form,
                           bool linear_only = false);

/// One exponential step. etd1: G X + Phi1 N(X). etd2rk: a = G X + Phi1 N(X),
/// then a + Phi2 (N(a) - N(X)). G = exp(dt A), Phi_k = dt phi_k(dt A).
SpectralState duhamel_step(const SpectralState& state, double dt, const ModelParams& params, const Grid& grid,
                           Scheme scheme, GForm form = GForm::Conservative, bool linear_only = false);

/// Fixed-step integration to t_end. Range and finiteness failures stop the
/// run; the trajectory up to the last valid state is returned with halt_code set.
/// Throws RangeViolation if the initial state is outside rho_*/2 < rho_* + theta < 2 rho_*.
Trajectory run_simulation(const SpectralState& initial, const ModelParams& params, const ExponentSet& exps,
                          const Grid& grid, const IntegratorConfig& config);

struct PicardResult {
  Trajectory trajectory;
  std::vector<double> residuals;
  bool converged = false;
};

/// Fixed-point iteration of X(t) = S(t) X0 + int_0^t S(t - s) N(X(s)) ds on the
/// path t_k = k dt, with N interpolated linearly between nodes. The first
/// iterate is the linear flow. The path is held in memory in full.
/// Throws NoContraction when the residual fails to decrease three times in a row.
PicardResult picard_iterate(const SpectralState& initial, double horizon, const ModelParams& params,
                            const ExponentSet& exps, const Grid& grid, const IntegratorConfig& config);

/// sqrt(sum |X_hat|^2) over theta and u.
double spectral_l2(const SpectralState& state);

}  // namespace kspec
