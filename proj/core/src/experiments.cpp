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

#include "kspec/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "kspec/error.hpp"
#include "kspec/format.hpp"
#include "kspec/norms.hpp"
#include "kspec/propagator.hpp"

namespace kspec {
namespace {

std::vector<std::array<int, 3>> orders_of_degree(int dim, int degree) {
  std::vector<std::array<int, 3>> out;
  for (int a = degree; a >= 0; --a) {
    if (dim == 1) {
      if (a == degree) out.push_back({a, 0, 0});
      continue;
    }
    for (int b = degree - a; b >= 0; --b) {
      const int c = degree - a - b;
      if (dim == 2 && c != 0) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

SpectralState differentiate(const Grid& grid, const SpectralState& s, const std::array<int, 3>& alpha) {
  SpectralState out;
  out.time = s.time;
  out.theta = derivative(grid, s.theta, alpha);
  for (const auto& c : s.u) out.u.push_back(derivative(grid, c, alpha));
  return out;
}

SlopeFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  SlopeFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  fit.count = x.size();
  return fit;
}

}  // namespace

SpectralState gaussian_data(const Grid& grid, double width, double theta_amp, double u_amp) {
  if (!(width > 0.0)) throw Error(ErrorCode::ValidationError, "Gaussian width must be positive");
  const double length = grid.box_length();
  PhysicalState phys;
  phys.theta.resize(grid.size());
  phys.u.assign(static_cast<std::size_t>(grid.dim()), RealField(grid.size(), 0.0));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 x = grid.position(i);
    double r2 = 0.0;
    for (int d = 0; d < grid.dim(); ++d) {
      double dx = x[static_cast<std::size_t>(d)] - 0.5 * length;
      dx -= length * std::round(dx / length);
      r2 += dx * dx;
    }
    const double g = std::exp(-r2 / (2.0 * width * width));
    phys.theta[i] = theta_amp * g;
    phys.u[0][i] = u_amp * g;
  }
  return forward(grid, phys);
}

SpectralState critical_power_law_data(const Grid& grid, double q) {
  if (!(q > 1.0)) throw Error(ErrorCode::ValidationError, "critical data needs q > 1");
  const double power = -0.5 * grid.dim() * (1.0 - 1.0 / q);
  const auto mask = dealias_mask(grid);
  SpectralState s = SpectralState::zeros(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r2 = grid.xi_norm_sq(i);
    if (mask[i] && r2 > 0.0) s.u[0][i] = std::pow(r2, power);
  }
  const PhysicalState phys = inverse(grid, s);
  double peak = 0.0;
  for (double v : phys.u[0]) peak = std::max(peak, std::abs(v));
  return peak > 0.0 ? scaled(s, 1.0 / peak) : s;
}

SpectralState scaled(const SpectralState& state, double factor) {
  SpectralState out = state;
  for (auto& v : out.theta) v *= factor;
  for (auto& c : out.u)
    for (auto& v : c) v *= factor;
  return out;
}

double wrap_around_time(const Grid& grid, const ModelParams& params) {
  return grid.box_length() / params.sound_speed();
}

SpectralState propagate_uncached(double t, const SpectralState& state, const Grid& grid, const ModelParams& params) {
  if (t == 0.0) return state;
  SpectralState out;
  apply_symbol(grid, build_symbol_table(grid, SymbolKind::Exponential, t, params), state, out);
  out.time = state.time + t;
  return out;
}

SlopeFit slope_fit(const std::vector<double>& times, const std::vector<double>& values, double t_min, double t_max) {
  if (times.size() != values.size()) throw Error(ErrorCode::ShapeMismatch, "times and values differ in length");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_min || times[i] > t_max || !(times[i] > 0.0) || !(values[i] > 0.0)) continue;
    x.push_back(std::log(times[i]));
    y.push_back(std::log(values[i]));
  }
  if (x.size() < 8)
    throw Error(ErrorCode::WindowTooShort,
                "slope fit needs at least 8 positive samples in the window, got " + std::to_string(x.size()));
  return least_squares(x, y);
}

SlopeFit exponential_fit(const std::vector<double>& times, const std::vector<double>& values) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(values[i] > 0.0)) continue;
    x.push_back(times[i]);
    y.push_back(std::log(values[i]));
  }
  if (x.size() < 2) throw Error(ErrorCode::WindowTooShort, "exponential fit needs at least 2 positive samples");
  return least_squares(x, y);
}

double DecayReport::relative_error() const {
  return std::abs(fit.slope - predicted_exponent) / std::abs(predicted_exponent);
}

double predicted_decay_exponent(int dim, double q, double p, int j) {
  return -0.5 * dim * (1.0 / q - 1.0 / p) - 0.5 * j;
}

void check_admissible_pq(double p, double q) {
  if (!(q > 1.0 && q <= 2.0 && p >= 2.0))
    throw Error(ErrorCode::InadmissiblePQ, "large-time decay needs 1 < q <= 2 <= p <= inf, got p = " +
                                               format_double(p) + ", q = " + format_double(q));
}

double derivative_pair_norm(const Grid& grid, const SpectralState& state, int j, double p) {
  if (j == 0) return sobolev_pair_norm(grid, state, 1, 0, p);
  double total = 0.0;
  for (const auto& alpha : orders_of_degree(grid.dim(), j))
    total += sobolev_pair_norm(grid, differentiate(grid, state, alpha), 1, 0, p);
  return total;
}

DecayReport decay_experiment(const DecaySpec& spec, const Grid& grid, const ModelParams& params) {
  check_admissible_pq(spec.p, spec.q);
  if (spec.j < 0) throw Error(ErrorCode::ValidationError, "derivative order j must be >= 0");

  DecayReport report;
  report.p = spec.p;
  report.q = spec.q;
  report.j = spec.j;
  report.predicted_exponent = predicted_decay_exponent(grid.dim(), spec.q, spec.p, spec.j);
  report.wrap_time = wrap_around_time(grid, params);
  report.t_min = std::max(spec.t_min, 1.0);
  report.t_max = std::min(spec.t_max, 0.2 * report.wrap_time);

  std::size_t in_window = 0;
  for (double t : spec.times)
    if (t >= report.t_min && t <= report.t_max) ++in_window;
  if (in_window < 8)
    throw Error(ErrorCode::WindowTooShort, "decay window [" + format_double(report.t_min) + ", " +
                                               format_double(report.t_max) + "] holds " +
                                               std::to_string(in_window) + " samples, need 8");

  const SpectralState data = spec.data == DecayData::Gaussian
                                 ? gaussian_data(grid, grid.box_length() / 20.0, 1.0, 1.0)
                                 : critical_power_law_data(grid, spec.q);
  for (double t : spec.times) {
    const SpectralState s = propagate_uncached(t, data, grid, params);
    report.times.push_back(t);
    report.values.push_back(derivative_pair_norm(grid, s, spec.j, spec.p));
  }
  report.fit = slope_fit(report.times, report.values, report.t_min, report.t_max);
  return report;
}

HighFrequencyReport high_frequency_decay(const SpectralState& data, double epsilon, double q,
                                         const std::vector<double>& times, const Grid& grid,
                                         const ModelParams& params) {
  HighFrequencyReport report;
  report.epsilon = epsilon;
  const CutoffProfile cutoff(epsilon);
  const SpectralState high = low_high_split(grid, data, cutoff).second;
  for (double t : times) {
    const PhysicalState phys = inverse(grid, propagate_uncached(t, high, grid, params));
    report.times.push_back(t);
    report.values.push_back(lebesgue_norm(grid, phys.theta, q) + lebesgue_norm(grid, phys.u, q));
  }
  report.fit = exponential_fit(report.times, report.values);
  return report;
}

double asymptotic_deviation(double xi, AsymptoticRegime regime, const ModelParams& params) {
  const EigenPair exact = eigenpair(xi * xi, params);
  const auto [plus, minus] = asymptotic_lambda(xi, regime, params);
  return std::max(std::abs(exact.lambda_plus - plus) / std::abs(exact.lambda_plus),
                  std::abs(exact.lambda_minus - minus) / std::abs(exact.lambda_minus));
}

AsymptoticsTable asymptotics_experiment(const ModelParams& params, double low_from, double low_to, double high_from,
                                        double high_to, int points_per_decade) {
  if (params.delta_star() == 0.0) throw Error(ErrorCode::DegenerateDiscriminant, "asymptotics need delta_* != 0");
  if (points_per_decade < 1) throw Error(ErrorCode::ValidationError, "points_per_decade must be >= 1");
  AsymptoticsTable table;
  auto sweep = [&](double from, double to, AsymptoticRegime regime) {
    const int count = static_cast<int>(std::lround(std::abs(to - from) * points_per_decade));
    std::vector<double> devs;
    for (int k = 0; k <= count; ++k) {
      const double e = from + (to - from) * k / std::max(count, 1);
      const double xi = std::pow(10.0, e);
      AsymptoticsRow row;
      row.xi = xi;
      row.regime = eigenpair(xi * xi, params).regime;
      const double dev = asymptotic_deviation(xi, regime, params);
      (regime == AsymptoticRegime::Low ? row.rel_dev_low : row.rel_dev_high) = dev;
      devs.push_back(dev);
      table.rows.push_back(row);
    }
    for (std::size_t k = 1; k < devs.size(); ++k)
      if (!(devs[k] < devs[k - 1])) return false;
    return true;
  };
  // Each sweep runs toward its limit: low from larger to smaller |xi|, high the reverse.
  table.low_monotone = sweep(std::max(low_from, low_to), std::min(low_from, low_to), AsymptoticRegime::Low);
  table.high_monotone = sweep(std::min(high_from, high_to), std::max(high_from, high_to), AsymptoticRegime::High);
  return table;
}

std::vector<Complex> resolvent_lambda_grid(const ResolventSweepSpec& spec) {
  const Sector sector(spec.epsilon_angle, spec.lambda0);
  if (spec.angles < 1 || spec.radii_per_decade < 1 || !(spec.lambda_max >= spec.lambda0))
    throw Error(ErrorCode::ValidationError, "resolvent grid needs angles >= 1, radii >= 1, lambda_max >= lambda0");
  const double half = std::numbers::pi - spec.epsilon_angle;
  const double decades = std::log10(spec.lambda_max / spec.lambda0);
  const int radii = static_cast<int>(std::lround(decades * spec.radii_per_decade)) + 1;
  std::vector<Complex> out;
  for (int a = 0; a < spec.angles; ++a) {
    const double arg = -half + (a + 0.5) * 2.0 * half / spec.angles;
    for (int k = 0; k < radii; ++k) {
      const double r = radii == 1 ? spec.lambda0 : spec.lambda0 * std::pow(10.0, decades * k / (radii - 1));
      out.push_back(std::polar(r, arg));
    }
  }
  for (const Complex& l : out)
    if (!sector.contains(l)) throw Error(ErrorCode::OutsideSector, "lambda grid left the sector");
  return out;
}

SpectralState resolvent_solve(Complex lambda, const SpectralState& probe, const ResolventConstants& constants,
                              const Grid& grid, const ModelParams& params) {
  check_shape(grid, probe);
  SpectralState out = SpectralState::zeros(grid);
  const int dim = grid.dim();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = std::sqrt(grid.xi_norm_sq(i));
    ResolventModeInverse inv;
    try {
      inv = resolvent_mode_inverse(lambda, r, constants, params);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " at lambda = (" + format_double(lambda.real()) + ", " +
                                format_double(lambda.imag()) + ")");
    }
    Vec3 n{0.0, 0.0, 0.0};
    if (r > 0.0) {
      const Vec3 xi = grid.xi(i);
      for (int k = 0; k < dim; ++k) n[static_cast<std::size_t>(k)] = xi[static_cast<std::size_t>(k)] / r;
    }
    Complex gn(0.0);
    for (int k = 0; k < dim; ++k) gn += n[static_cast<std::size_t>(k)] * probe.u[static_cast<std::size_t>(k)][i];
    const Complex f = probe.theta[i];
    out.theta[i] = inv.r00 * f + inv.r01 * gn;
    const Complex v = inv.r10 * f + inv.r11 * gn;
    for (int k = 0; k < dim; ++k) {
      const double nk = n[static_cast<std::size_t>(k)];
      out.u[static_cast<std::size_t>(k)][i] = inv.sol * (probe.u[static_cast<std::size_t>(k)][i] - nk * gn) + nk * v;
    }
  }
  return out;
}

namespace {

// Real and imaginary parts of a complex-valued field, each as a Hermitian spectrum.
std::pair<SpectralField, SpectralField> split_complex(const Grid& grid, const SpectralField& f) {
  SpectralField re(f.size()), im(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Complex partner = std::conj(f[grid.conjugate(i)]);
    re[i] = 0.5 * (f[i] + partner);
    im[i] = Complex(0.0, -0.5) * (f[i] - partner);
  }
  return {std::move(re), std::move(im)};
}

// W^{m,l}_q pair norm with the pointwise complex modulus.
double complex_pair_norm(const Grid& grid, const SpectralState& s, int m, int l, double q) {
  auto [tr, ti] = split_complex(grid, s.theta);
  std::vector<SpectralField> u;
  for (const auto& c : s.u) {
    auto [ur, ui] = split_complex(grid, c);
    u.push_back(std::move(ur));
    u.push_back(std::move(ui));
  }
  return sobolev_norm(grid, std::vector<SpectralField>{std::move(tr), std::move(ti)}, m, q) +
         sobolev_norm(grid, u, l, q);
}

}  // namespace

ResolventReport resolvent_sweep(const ResolventSweepSpec& spec, const ResolventConstants& constants,
                                const ModelParams& params, const Grid& grid, const SpectralState& probe) {
  const double denom = sobolev_pair_norm(grid, probe, 1, 0, spec.q);
  if (!(denom > 0.0)) throw Error(ErrorCode::ValidationError, "resolvent probe data must be nonzero");
  ResolventReport report;
  for (const Complex& lambda : resolvent_lambda_grid(spec)) {
    const SpectralState sol = resolvent_solve(lambda, probe, constants, grid, params);
    const double quantity =
        (std::abs(lambda) * complex_pair_norm(grid, sol, 1, 0, spec.q) + complex_pair_norm(grid, sol, 3, 2, spec.q)) /
        denom;
    if (!std::isfinite(quantity))
      throw Error(ErrorCode::NonFinite, "resolvent quantity is not finite at lambda = (" +
                                            format_double(lambda.real()) + ", " + format_double(lambda.imag()) + ")");
    report.samples.push_back({lambda, quantity});
  }
  report.sup = 0.0;
  report.inf = std::numeric_limits<double>::infinity();
  for (const auto& s : report.samples) {
    report.sup = std::max(report.sup, s.quantity);
    report.inf = std::min(report.inf, s.quantity);
  }
  return report;
}

void write_decay_csv(std::ostream& os, const DecayReport& report) {
  os << "t,norm,j,p,q,predicted_exponent\n";
  for (std::size_t i = 0; i < report.times.size(); ++i)
    os << format_double(report.times[i]) << ',' << format_double(report.values[i]) << ',' << report.j << ','
       << format_double(report.p) << ',' << format_double(report.q) << ','
       << format_double(report.predicted_exponent) << '\n';
}

void write_resolvent_csv(std::ostream& os, const ResolventReport& report) {
  os << "re_lambda,im_lambda,quantity\n";
  for (const auto& s : report.samples)
    os << format_double(s.lambda.real()) << ',' << format_double(s.lambda.imag()) << ','
       << format_double(s.quantity) << '\n';
}

void write_asymptotics_csv(std::ostream& os, const AsymptoticsTable& table) {
  os << "xi,rel_dev_low,rel_dev_high\n";
  for (const auto& r : table.rows)
    os << format_double(r.xi) << ',' << format_double(r.rel_dev_low) << ',' << format_double(r.rel_dev_high) << '\n';
}

}  // namespace kspec
