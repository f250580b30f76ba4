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

#include "kspec/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kspec/error.hpp"
#include "kspec/fft.hpp"

namespace kspec {

Grid::Grid(int dim, double box_length, int modes) : dim_(dim), length_(box_length), modes_(modes) {
  if (dim < 1 || dim > 3) throw Error(ErrorCode::InvalidGrid, "grid dimension must be 1, 2 or 3");
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw Error(ErrorCode::InvalidGrid, "box length must be positive");
  }
  if (modes < 2 || modes % 2 != 0) throw Error(ErrorCode::InvalidGrid, "modes per axis must be even and >= 2");
  size_ = 1;
  for (int d = 0; d < dim; ++d) size_ *= static_cast<std::size_t>(modes);
  cell_volume_ = std::pow(length_ / modes_, dim_);

  axis_xi_.resize(static_cast<std::size_t>(modes));
  for (int i = 0; i < modes; ++i) {
    axis_xi_[static_cast<std::size_t>(i)] =
        is_nyquist(i) ? 0.0 : 2.0 * std::numbers::pi * signed_index(i) / length_;
  }
  xi2_.resize(size_);
  conj_.resize(size_);
  for (std::size_t f = 0; f < size_; ++f) {
    const auto idx = unflatten(f);
    double s = 0.0;
    std::array<int, 3> c{0, 0, 0};
    for (int d = 0; d < dim_; ++d) {
      const double x = axis_xi_[static_cast<std::size_t>(idx[d])];
      s += x * x;
      c[d] = (modes_ - idx[d]) % modes_;
    }
    xi2_[f] = s;
    conj_[f] = flatten(c);
  }
}

std::array<int, 3> Grid::unflatten(std::size_t flat) const noexcept {
  std::array<int, 3> idx{0, 0, 0};
  for (int d = dim_ - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % static_cast<std::size_t>(modes_));
    flat /= static_cast<std::size_t>(modes_);
  }
  return idx;
}

std::size_t Grid::flatten(const std::array<int, 3>& idx) const noexcept {
  std::size_t f = 0;
  for (int d = 0; d < dim_; ++d) f = f * static_cast<std::size_t>(modes_) + static_cast<std::size_t>(idx[d]);
  return f;
}

Vec3 Grid::xi(std::size_t flat) const noexcept {
  const auto idx = unflatten(flat);
  Vec3 out{0.0, 0.0, 0.0};
  for (int d = 0; d < dim_; ++d) out[d] = axis_xi_[static_cast<std::size_t>(idx[d])];
  return out;
}

double Grid::lattice_radius(std::size_t flat) const noexcept {
  const auto idx = unflatten(flat);
  double s = 0.0;
  for (int d = 0; d < dim_; ++d) {
    const double k = signed_index(idx[d]);
    s += k * k;
  }
  return std::sqrt(s);
}

Vec3 Grid::position(std::size_t flat) const noexcept {
  const auto idx = unflatten(flat);
  Vec3 out{0.0, 0.0, 0.0};
  for (int d = 0; d < dim_; ++d) out[d] = idx[d] * spacing();
  return out;
}

SpectralState SpectralState::zeros(const Grid& grid) {
  SpectralState s;
  s.theta.assign(grid.size(), Complex{});
  s.u.assign(static_cast<std::size_t>(grid.dim()), SpectralField(grid.size(), Complex{}));
  return s;
}

void check_shape(const Grid& grid, const SpectralState& state) {
  bool ok = state.theta.size() == grid.size() && state.u.size() == static_cast<std::size_t>(grid.dim());
  for (const auto& c : state.u) ok = ok && c.size() == grid.size();
  if (!ok) {
    throw Error(ErrorCode::ShapeMismatch, "spectral state does not match a grid of " + std::to_string(grid.size()) +
                                              " modes in " + std::to_string(grid.dim()) + " dimensions");
  }
}

void check_shape(const Grid& grid, const PhysicalState& state) {
  bool ok = state.theta.size() == grid.size() && state.u.size() == static_cast<std::size_t>(grid.dim());
  for (const auto& c : state.u) ok = ok && c.size() == grid.size();
  if (!ok) {
    throw Error(ErrorCode::ShapeMismatch, "physical fields do not match a grid of " + std::to_string(grid.size()) +
                                              " points in " + std::to_string(grid.dim()) + " dimensions");
  }
}

SpectralField forward_field(const Grid& grid, const RealField& field) {
  if (field.size() != grid.size()) throw Error(ErrorCode::ShapeMismatch, "field size does not match the grid");
  SpectralField buf(field.begin(), field.end());
  SpectralField out(grid.size());
  fft(grid.dim(), grid.modes(), FftDirection::Forward, buf, out);
  // Exact conjugate symmetry: sums of transforms then cancel to a symmetric residue.
  for (std::size_t f = 0; f < out.size(); ++f) {
    const std::size_t c = grid.conjugate(f);
    if (c < f) continue;
    if (c == f) {
      out[f] = out[f].real();
      continue;
    }
    const Complex avg = 0.5 * (out[f] + std::conj(out[c]));
    out[f] = avg;
    out[c] = std::conj(avg);
  }
  return out;
}

RealField inverse_field(const Grid& grid, const SpectralField& spectrum) {
  if (spectrum.size() != grid.size()) throw Error(ErrorCode::ShapeMismatch, "spectrum size does not match the grid");
  SpectralField out(grid.size());
  fft(grid.dim(), grid.modes(), FftDirection::Backward, spectrum, out);
  const double scale = 1.0 / static_cast<double>(grid.size());
  RealField real(grid.size());
  double max_abs = 0.0;
  double max_imag = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    real[i] = out[i].real() * scale;
    max_abs = std::max(max_abs, std::abs(out[i]));
    max_imag = std::max(max_imag, std::abs(out[i].imag()));
  }
  // sum |c_k| bounds every output value, so it sets the roundoff floor even
  // when the field itself cancels to nearly zero
  double l1 = 0.0;
  for (const auto& c : spectrum) l1 += std::abs(c);
  max_abs = std::max(max_abs, 1e-2 * l1);
  if (max_imag > 1e-12 * max_abs) {
    throw Error(ErrorCode::NotHermitian, "inverse transform left an imaginary residue of " +
                                             std::to_string(max_imag / max_abs) + " relative");
  }
  return real;
}

SpectralState forward(const Grid& grid, const PhysicalState& fields, double time) {
  check_shape(grid, fields);
  SpectralState s;
  s.theta = forward_field(grid, fields.theta);
  for (const auto& c : fields.u) s.u.push_back(forward_field(grid, c));
  s.time = time;
  return s;
}

PhysicalState inverse(const Grid& grid, const SpectralState& state) {
  check_shape(grid, state);
  PhysicalState p;
  p.theta = inverse_field(grid, state.theta);
  for (const auto& c : state.u) p.u.push_back(inverse_field(grid, c));
  return p;
}

double hermitian_defect(const Grid& grid, const SpectralField& spectrum) {
  double max_abs = 0.0;
  double defect = 0.0;
  for (std::size_t f = 0; f < spectrum.size(); ++f) {
    max_abs = std::max(max_abs, std::abs(spectrum[f]));
    defect = std::max(defect, std::abs(spectrum[grid.conjugate(f)] - std::conj(spectrum[f])));
  }
  return max_abs > 0.0 ? defect / max_abs : 0.0;
}

bool is_hermitian(const Grid& grid, const SpectralState& state, double tol) {
  if (hermitian_defect(grid, state.theta) > tol) return false;
  return std::all_of(state.u.begin(), state.u.end(),
                     [&](const SpectralField& c) { return hermitian_defect(grid, c) <= tol; });
}

bool all_finite(const SpectralState& state) {
  auto finite = [](const SpectralField& f) {
    return std::all_of(f.begin(), f.end(),
                       [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
  };
  return finite(state.theta) && std::all_of(state.u.begin(), state.u.end(), finite);
}

SpectralField derivative(const Grid& grid, const SpectralField& f, int axis) {
  std::array<int, 3> orders{0, 0, 0};
  orders[axis] = 1;
  return derivative(grid, f, orders);
}

SpectralField derivative(const Grid& grid, const SpectralField& f, const std::array<int, 3>& orders) {
  SpectralField out(f.size());
  const auto n = static_cast<std::ptrdiff_t>(f.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto flat = static_cast<std::size_t>(i);
    const auto idx = grid.unflatten(flat);
    Complex factor{1.0, 0.0};
    for (int d = 0; d < grid.dim(); ++d) {
      const Complex ik{0.0, grid.axis_wavenumber(idx[d])};
      for (int o = 0; o < orders[d]; ++o) factor *= ik;
    }
    out[flat] = factor * f[flat];
  }
  return out;
}

SpectralField laplacian(const Grid& grid, const SpectralField& f) {
  SpectralField out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = -grid.xi_norm_sq(i) * f[i];
  return out;
}

std::vector<bool> dealias_mask(const Grid& grid) {
  std::vector<bool> mask(grid.size(), true);
  const int m = grid.modes();
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const auto idx = grid.unflatten(f);
    for (int d = 0; d < grid.dim(); ++d) {
      // |k| < M/3  <=>  3|k| < M, kept in integers.
      if (3 * std::abs(grid.signed_index(idx[d])) >= m) {
        mask[f] = false;
        break;
      }
    }
  }
  return mask;
}

void apply_mask(const std::vector<bool>& mask, SpectralField& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!mask[i]) f[i] = Complex{};
  }
}

double smooth_step_down(double s) noexcept {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  return 1.0 / (1.0 + std::exp(s / (1.0 - s) - (1.0 - s) / s));
}

CutoffProfile::CutoffProfile(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::ValidationError, "cutoff epsilon must be positive");
  }
}

double CutoffProfile::operator()(double radius) const noexcept {
  return smooth_step_down((radius - epsilon_) / epsilon_);
}

std::pair<SpectralState, SpectralState> low_high_split(const Grid& grid, const SpectralState& state,
                                                       const CutoffProfile& cutoff) {
  check_shape(grid, state);
  SpectralState low = state;
  SpectralState high = state;
  auto split = [&](const SpectralField& in, SpectralField& lo, SpectralField& hi) {
    for (std::size_t i = 0; i < in.size(); ++i) {
      const double phi = cutoff(std::sqrt(grid.xi_norm_sq(i)));
      // recomputing lo from hi makes lo + hi == in exactly (Sterbenz)
      hi[i] = in[i] - phi * in[i];
      lo[i] = in[i] - hi[i];
    }
  };
  split(state.theta, low.theta, high.theta);
  for (std::size_t c = 0; c < state.u.size(); ++c) split(state.u[c], low.u[c], high.u[c]);
  return {std::move(low), std::move(high)};
}

}  // namespace kspec
