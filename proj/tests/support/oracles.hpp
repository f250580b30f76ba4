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

#include <functional>
#include <random>

#include <Eigen/Dense>

#include "kspec/grid.hpp"
#include "kspec/model.hpp"

namespace kspec::testing {

// Independent reference computations used by the test suites. None of them
// share code with the library routines they check beyond the lattice and FFT
// plumbing needed to move data around.

struct Dp45Options {
  double rtol = 1e-12;
  double atol = 1e-15;
  double initial_step = 1e-6;
  long max_steps = 50'000'000;
};

using OdeRhs = std::function<Eigen::VectorXcd(double, const Eigen::VectorXcd&)>;

/// Adaptive Dormand-Prince 5(4) with standard step control.
Eigen::VectorXcd dp45(const OdeRhs& rhs, Eigen::VectorXcd y, double t0, double t1, const Dp45Options& opts = {});

/// Linearised mode generator assembled entry by entry from the PDE.
Eigen::MatrixXcd mode_generator(const Vec3& xi, int dim, const ModelParams& params);

/// Naive O(n^2) DFT with the unnormalised forward sign convention e^{-i k.x}.
SpectralField direct_dft(const Grid& grid, const RealField& field);

/// White noise truncated to max |k_axis| <= kmax (zero mean), scaled to peak `amplitude`.
RealField random_band_limited(const Grid& grid, std::mt19937_64& rng, int kmax, double amplitude);
SpectralState random_state(const Grid& grid, std::mt19937_64& rng, int kmax, double theta_amp, double u_amp);

/// Evaluates the trigonometric polynomial with coefficients `spectrum` on the
/// lattice refined `factor` times per axis.
RealField refine(const Grid& coarse, const SpectralField& spectrum, int factor);

/// Eighth-order central difference along `axis` on a periodic lattice.
RealField fd8(const Grid& grid, const RealField& field, int axis);

/// Every `factor`-th point of a refined lattice, back on the coarse lattice.
RealField restrict_to(const Grid& coarse, const RealField& fine, int factor);

double max_abs(const RealField& f);
double max_abs_diff(const RealField& a, const RealField& b);
double rel_l2_diff(const SpectralState& a, const SpectralState& b);

/// Polytropic test model with the given primaries.
ModelParams polytropic_model(double mu, double nu, double kappa, double rho, double a, double gamma_exp);

}  // namespace kspec::testing
