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

#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "kspec/grid.hpp"
#include "kspec/linear_symbol.hpp"
#include "kspec/model.hpp"

namespace kspec {

// ---- data generators --------------------------------------------------------

/// Periodised Gaussian exp(-|x - c|^2 / (2 w^2)) centred in the box, using the
/// minimum-image distance. theta = theta_amp G, u = u_amp G e_1.
SpectralState gaussian_data(const Grid& grid, double width, double theta_amp, double u_amp);

/// theta = 0 and u_hat = |xi|^{-N(1 - 1/q)} e_1 on the non-zero dealiased
/// modes, normalised to max |u| = 1. This sits at the L_q scaling threshold,
/// so the large-time decay of S(t) is governed by the L_q data class.
SpectralState critical_power_law_data(const Grid& grid, double q);

/// Multiplies every field by `factor`.
SpectralState scaled(const SpectralState& state, double factor);

/// L / sqrt(rho_* gamma_*), when periodic images of a sound pulse begin to interact.
double wrap_around_time(const Grid& grid, const ModelParams& params);

/// S(t) X built without the shared symbol cache (suits one-off times).
SpectralState propagate_uncached(double t, const SpectralState& state, const Grid& grid, const ModelParams& params);

// ---- slope fits --------------------------------------------------------------

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of the log-space fit errors
  std::size_t count = 0;
};

/// Least squares on (log t, log v) for samples with t in [t_min, t_max].
/// Throws WindowTooShort with fewer than 8 usable (positive) samples.
SlopeFit slope_fit(const std::vector<double>& times, const std::vector<double>& values, double t_min = 0.0,
                   double t_max = std::numeric_limits<double>::infinity());

/// Least squares on (t, log v); the returned slope is -c for v ~ C e^{-ct}.
SlopeFit exponential_fit(const std::vector<double>& times, const std::vector<double>& values);

// ---- decay ------------------------------------------------------------------

enum class DecayData { Gaussian, CriticalPowerLaw };

struct DecaySpec {
  DecayData data = DecayData::Gaussian;
  double p = 2.0;
  double q = 2.0;
  int j = 0;
  std::vector<double> times;
  double t_min = 1.0;
  double t_max = std::numeric_limits<double>::infinity();
};

struct DecayReport {
  double p = 0.0;
  double q = 0.0;
  int j = 0;
  std::vector<double> times;
  /// sum over |alpha| = j of ||d^alpha S(t)(f, g)||_{W^{1,0}_p}
  std::vector<double> values;
  SlopeFit fit;
  double predicted_exponent = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  double wrap_time = 0.0;

  /// |slope - predicted| / |predicted|
  double relative_error() const;
};

/// -(N/2)(1/q - 1/p) - j/2.
double predicted_decay_exponent(int dim, double q, double p, int j);

/// Throws InadmissiblePQ unless 1 < q <= 2 <= p <= inf.
void check_admissible_pq(double p, double q);

/// The spatial W^{1,0}_p norm of the j-th derivatives of a state.
double derivative_pair_norm(const Grid& grid, const SpectralState& state, int j, double p);

DecayReport decay_experiment(const DecaySpec& spec, const Grid& grid, const ModelParams& params);

struct HighFrequencyReport {
  double epsilon = 0.0;
  std::vector<double> times;
  std::vector<double> values;  // ||S(t) Phi_inf X||_{L_q}
  SlopeFit fit;                // rate = -fit.slope
  double rate() const { return -fit.slope; }
};

HighFrequencyReport high_frequency_decay(const SpectralState& data, double epsilon, double q,
                                         const std::vector<double>& times, const Grid& grid,
                                         const ModelParams& params);

// ---- eigenvalue asymptotics ----------------------------------------------------

struct AsymptoticsRow {
  double xi = 0.0;
  double rel_dev_low = std::numeric_limits<double>::quiet_NaN();
  double rel_dev_high = std::numeric_limits<double>::quiet_NaN();
  Regime regime = Regime::RealDistinct;
};

struct AsymptoticsTable {
  std::vector<AsymptoticsRow> rows;
  bool low_monotone = false;   // deviation shrinks as |xi| -> 0
  bool high_monotone = false;  // deviation shrinks as |xi| -> infinity
};

/// max over the two roots of |exact - asymptotic| / |exact|.
double asymptotic_deviation(double xi, AsymptoticRegime regime, const ModelParams& params);

/// Geometric sweeps |xi| = 10^{low_from} ... 10^{low_to} and 10^{high_from} ... 10^{high_to}.
AsymptoticsTable asymptotics_experiment(const ModelParams& params, double low_from, double low_to, double high_from,
                                        double high_to, int points_per_decade = 4);

// ---- resolvent ----------------------------------------------------------------

struct ResolventSweepSpec {
  double epsilon_angle = 0.7853981633974483;
  double lambda0 = 1.0;
  double lambda_max = 1e6;
  int angles = 16;
  int radii_per_decade = 25;
  double q = 2.0;
};

struct ResolventSample {
  Complex lambda;
  double quantity = 0.0;
};

struct ResolventReport {
  std::vector<ResolventSample> samples;
  double sup = 0.0;
  double inf = 0.0;
  double flatness() const { return inf > 0.0 ? sup / inf : std::numeric_limits<double>::infinity(); }
};

/// Midpoint angles in (-(pi - eps), pi - eps) times log-spaced radii in [lambda0, lambda_max].
std::vector<Complex> resolvent_lambda_grid(const ResolventSweepSpec& spec);

/// Solves the constant-coefficient resolvent problem for the probe data (f, g) at one lambda.
SpectralState resolvent_solve(Complex lambda, const SpectralState& probe, const ResolventConstants& constants,
                              const Grid& grid, const ModelParams& params);

/// (|lambda| ||(rho,u)||_{W^{1,0}_q} + ||(rho,u)||_{W^{3,2}_q}) / ||(f,g)||_{W^{1,0}_q} at each sample.
ResolventReport resolvent_sweep(const ResolventSweepSpec& spec, const ResolventConstants& constants,
                                const ModelParams& params, const Grid& grid, const SpectralState& probe);

// ---- CSV ----------------------------------------------------------------------

void write_decay_csv(std::ostream& os, const DecayReport& report);
void write_resolvent_csv(std::ostream& os, const ResolventReport& report);
void write_asymptotics_csv(std::ostream& os, const AsymptoticsTable& table);

}  // namespace kspec
