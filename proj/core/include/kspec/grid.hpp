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

#include <array>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace kspec {

using Complex = std::complex<double>;
using RealField = std::vector<double>;
using SpectralField = std::vector<Complex>;
using Vec3 = std::array<double, 3>;

/// Periodic cubic lattice: `dim` axes, `modes` points per axis (even), box
/// side `box_length`. Flat indices are row-major with the last axis fastest.
///
/// Axis index i maps to the signed wavenumber k = i for i < M/2 and k = i - M
/// otherwise, so k ranges over [-M/2, M/2). The Nyquist entry k = -M/2 is its
/// own conjugate partner; its angular wavenumber is taken as 0 so that every
/// Fourier multiplier built from xi maps Hermitian spectra to Hermitian
/// spectra.
class Grid {
 public:
  Grid(int dim, double box_length, int modes);

  int dim() const noexcept { return dim_; }
  double box_length() const noexcept { return length_; }
  int modes() const noexcept { return modes_; }
  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept { return length_ / modes_; }
  /// (L/M)^N, the lattice quadrature weight.
  double cell_volume() const noexcept { return cell_volume_; }

  int signed_index(int i) const noexcept { return i < modes_ / 2 ? i : i - modes_; }
  bool is_nyquist(int i) const noexcept { return i == modes_ / 2; }
  /// 2 pi k / L with the Nyquist convention above.
  double axis_wavenumber(int i) const noexcept { return axis_xi_[static_cast<std::size_t>(i)]; }

  std::array<int, 3> unflatten(std::size_t flat) const noexcept;
  std::size_t flatten(const std::array<int, 3>& idx) const noexcept;
  /// Index of the mode at -k.
  std::size_t conjugate(std::size_t flat) const noexcept { return conj_[flat]; }

  Vec3 xi(std::size_t flat) const noexcept;
  double xi_norm_sq(std::size_t flat) const noexcept { return xi2_[flat]; }
  /// |k| in lattice units, i.e. |xi| L / (2 pi), computed from signed indices.
  double lattice_radius(std::size_t flat) const noexcept;
  /// Physical coordinate of lattice point `flat` along each axis, in [0, L).
  Vec3 position(std::size_t flat) const noexcept;

 private:
  int dim_;
  double length_;
  int modes_;
  std::size_t size_;
  double cell_volume_;
  std::vector<double> axis_xi_;
  std::vector<double> xi2_;
  std::vector<std::size_t> conj_;
};

struct PhysicalState {
  RealField theta;
  std::vector<RealField> u;
};

/// Fourier coefficients of (theta, u) at one instant.
struct SpectralState {
  SpectralField theta;
  std::vector<SpectralField> u;
  double time = 0.0;

  static SpectralState zeros(const Grid& grid);
};

void check_shape(const Grid& grid, const SpectralState& state);
void check_shape(const Grid& grid, const PhysicalState& state);

// Transforms: the forward transform is unnormalised, the inverse carries 1/M^N.
SpectralField forward_field(const Grid& grid, const RealField& field);
/// Throws NotHermitian when the imaginary residue exceeds 1e-12 of the
/// largest magnitude.
RealField inverse_field(const Grid& grid, const SpectralField& spectrum);
SpectralState forward(const Grid& grid, const PhysicalState& fields, double time = 0.0);
PhysicalState inverse(const Grid& grid, const SpectralState& state);

/// Relative Hermitian defect max_k |c(-k) - conj c(k)| / max_k |c(k)|.
double hermitian_defect(const Grid& grid, const SpectralField& spectrum);
bool is_hermitian(const Grid& grid, const SpectralState& state, double tol = 1e-12);
bool all_finite(const SpectralState& state);

/// i xi_axis * f.
SpectralField derivative(const Grid& grid, const SpectralField& f, int axis);
/// Mixed derivative with the given per-axis orders.
SpectralField derivative(const Grid& grid, const SpectralField& f, const std::array<int, 3>& orders);
SpectralField laplacian(const Grid& grid, const SpectralField& f);

/// 2/3 rule: true iff |k_axis| < M/3 on every axis. Nyquist is always false.
std::vector<bool> dealias_mask(const Grid& grid);
void apply_mask(const std::vector<bool>& mask, SpectralField& f);

/// Smooth radial cutoff: 1 for |xi| <= eps, 0 for |xi| >= 2 eps, with a
/// C-infinity monotone bridge in between.
class CutoffProfile {
 public:
  explicit CutoffProfile(double epsilon);
  double epsilon() const noexcept { return epsilon_; }
  double operator()(double radius) const noexcept;

 private:
  double epsilon_;
};

/// The bridge shape on s in [0, 1]: 1 at s = 0 and 0 at s = 1.
double smooth_step_down(double s) noexcept;

/// low = phi * state, high = state - low, with phi evaluated once per mode.
std::pair<SpectralState, SpectralState> low_high_split(const Grid& grid, const SpectralState& state,
                                                       const CutoffProfile& cutoff);

}  // namespace kspec
