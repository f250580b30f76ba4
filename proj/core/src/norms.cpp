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

#include "kspec/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>

#include "kspec/error.hpp"
#include "kspec/format.hpp"
#include "kspec/parallel.hpp"

namespace kspec {
namespace {

using Orders = std::array<int, 3>;

std::vector<Orders> multi_indices(int dim, int max_order) {
  std::vector<Orders> out;
  for (int total = 0; total <= max_order; ++total) {
    for (int a = total; a >= 0; --a) {
      if (dim == 1) {
        if (a == total) out.push_back({a, 0, 0});
        continue;
      }
      for (int b = total - a; b >= 0; --b) {
        const int c = total - a - b;
        if (dim == 2 && c != 0) continue;
        out.push_back({a, b, c});
      }
    }
  }
  return out;
}

double max_abs(const RealField& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

double lq_of_nonnegative(const Grid& grid, const RealField& magnitude, double q) {
  const double peak = max_abs(magnitude);
  if (std::isinf(q) || peak == 0.0) return peak;
  const double inv = 1.0 / peak;
  double sum;
  if (q == 2.0) {
    sum = deterministic_sum_of(magnitude.size(), [&](std::size_t i) {
      const double x = magnitude[i] * inv;
      return x * x;
    });
  } else {
    sum = deterministic_sum_of(magnitude.size(), [&](std::size_t i) { return std::pow(magnitude[i] * inv, q); });
  }
  return peak * std::pow(sum * grid.cell_volume(), 1.0 / q);
}

RealField magnitude_of(const std::vector<const RealField*>& components) {
  if (components.empty()) return {};
  const std::size_t n = components.front()->size();
  RealField out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (const RealField* c : components) s += (*c)[i] * (*c)[i];
    out[i] = std::sqrt(s);
  }
  return out;
}

void check_q(double q) {
  if (!(q >= 1.0)) throw Error(ErrorCode::ValidationError, "Lebesgue exponent must be >= 1");
}

// Physical derivatives d^alpha of a set of spectral components.
class DerivativeBank {
 public:
  DerivativeBank(const Grid& grid, const std::vector<const SpectralField*>& components)
      : grid_(grid), components_(components) {}

  const std::vector<RealField>& get(const Orders& alpha) {
    for (auto& [key, fields] : cache_)
      if (key == alpha) return fields;
    std::vector<RealField> fields;
    for (const SpectralField* c : components_) fields.push_back(inverse_field(grid_, derivative(grid_, *c, alpha)));
    cache_.emplace_back(alpha, std::move(fields));
    return cache_.back().second;
  }

  double lq(const Orders& alpha, double q) {
    const auto& fields = get(alpha);
    std::vector<const RealField*> ptrs;
    for (const auto& f : fields) ptrs.push_back(&f);
    return lq_of_nonnegative(grid_, magnitude_of(ptrs), q);
  }

  double sobolev(int m, double q) {
    double total = 0.0;
    for (const auto& alpha : multi_indices(grid_.dim(), m)) total += lq(alpha, q);
    return total;
  }

  /// || grad^j F ||_q with the Euclidean magnitude over components and first derivatives.
  double gradient(int j, double q) {
    if (j == 0) return lq({0, 0, 0}, q);
    std::vector<const RealField*> ptrs;
    for (int k = 0; k < grid_.dim(); ++k) {
      Orders alpha{0, 0, 0};
      alpha[static_cast<std::size_t>(k)] = 1;
      for (const auto& f : get(alpha)) ptrs.push_back(&f);
    }
    return lq_of_nonnegative(grid_, magnitude_of(ptrs), q);
  }

 private:
  const Grid& grid_;
  std::vector<const SpectralField*> components_;
  std::deque<std::pair<Orders, std::vector<RealField>>> cache_;
};

std::vector<const SpectralField*> pointers(const std::vector<SpectralField>& v) {
  std::vector<const SpectralField*> out;
  for (const auto& f : v) out.push_back(&f);
  return out;
}

const NormTimeline::Sample* find_missing(const NormTimeline& timeline, const std::string& name) {
  for (const auto& s : timeline.samples())
    if (!s.values.count(name)) return &s;
  return nullptr;
}

void require_constituent(const NormTimeline& timeline, const std::string& name) {
  if (timeline.empty()) throw Error(ErrorCode::MissingConstituent, "timeline is empty; need " + name);
  if (const auto* s = find_missing(timeline, name))
    throw Error(ErrorCode::MissingConstituent, "norm " + name + " missing at t = " + format_double(s->t));
}

}  // namespace

double lebesgue_norm(const Grid& grid, const RealField& field, double q) {
  check_q(q);
  if (field.size() != grid.size()) throw Error(ErrorCode::ShapeMismatch, "field size does not match the grid");
  RealField mag(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) mag[i] = std::abs(field[i]);
  return lq_of_nonnegative(grid, mag, q);
}

double lebesgue_norm(const Grid& grid, const std::vector<RealField>& components, double q) {
  check_q(q);
  std::vector<const RealField*> ptrs;
  for (const auto& c : components) {
    if (c.size() != grid.size()) throw Error(ErrorCode::ShapeMismatch, "field size does not match the grid");
    ptrs.push_back(&c);
  }
  return lq_of_nonnegative(grid, magnitude_of(ptrs), q);
}

double sobolev_norm(const Grid& grid, const SpectralField& spectrum, int m, double q) {
  check_q(q);
  DerivativeBank bank(grid, {&spectrum});
  return bank.sobolev(m, q);
}

double sobolev_norm(const Grid& grid, const std::vector<SpectralField>& components, int m, double q) {
  check_q(q);
  DerivativeBank bank(grid, pointers(components));
  return bank.sobolev(m, q);
}

double sobolev_pair_norm(const Grid& grid, const SpectralState& state, int m, int l, double q) {
  check_shape(grid, state);
  return sobolev_norm(grid, state.theta, m, q) + sobolev_norm(grid, state.u, l, q);
}

int besov_block_count(const Grid& grid) {
  const double rmax = std::sqrt(static_cast<double>(grid.dim())) * 0.5 * grid.modes();
  int top = 1;
  while (std::ldexp(1.0, top - 1) < rmax) ++top;
  return top + 1;
}

double besov_block_weight(int j, double radius) {
  if (j == 0) return CutoffProfile(0.5)(radius);
  return CutoffProfile(std::ldexp(1.0, j - 1))(radius) - CutoffProfile(std::ldexp(1.0, j - 2))(radius);
}

BesovEvaluation besov_evaluate(const Grid& grid, const std::vector<SpectralField>& components, const BesovSpec& spec) {
  check_q(spec.q);
  if (!(spec.p >= 1.0)) throw Error(ErrorCode::ValidationError, "Besov summability exponent must be >= 1");
  for (const auto& c : components)
    if (c.size() != grid.size()) throw Error(ErrorCode::ShapeMismatch, "spectrum size does not match the grid");

  const std::size_t n = grid.size();
  std::vector<double> radius(n);
  for (std::size_t i = 0; i < n; ++i) radius[i] = grid.lattice_radius(i);

  const int blocks = besov_block_count(grid);
  BesovEvaluation out;
  out.weighted_blocks.assign(static_cast<std::size_t>(blocks), 0.0);
  for (int j = 0; j < blocks; ++j) {
    std::vector<double> w(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = besov_block_weight(j, radius[i]);
      any = any || w[i] != 0.0;
    }
    if (!any) continue;
    std::vector<RealField> pieces;
    for (const auto& c : components) {
      SpectralField block(n);
      for (std::size_t i = 0; i < n; ++i) block[i] = w[i] * c[i];
      pieces.push_back(inverse_field(grid, block));
    }
    out.weighted_blocks[static_cast<std::size_t>(j)] = std::exp2(j * spec.s) *
                                                       lebesgue_norm(grid, pieces, spec.q);
  }

  const double top = out.weighted_blocks.back();
  if (std::isinf(spec.p)) {
    out.value = *std::max_element(out.weighted_blocks.begin(), out.weighted_blocks.end());
    out.top_fraction = out.value > 0.0 ? top / out.value : 0.0;
  } else {
    const double peak = *std::max_element(out.weighted_blocks.begin(), out.weighted_blocks.end());
    if (peak > 0.0) {
      double sum = 0.0;
      for (double b : out.weighted_blocks) sum += std::pow(b / peak, spec.p);
      out.value = peak * std::pow(sum, 1.0 / spec.p);
      out.top_fraction = std::pow(top / peak, spec.p) / sum;
    }
  }
  out.resolution_warning = out.top_fraction > 0.01;
  return out;
}

double besov_norm(const Grid& grid, const SpectralField& spectrum, const BesovSpec& spec, bool strict) {
  return besov_norm(grid, std::vector<SpectralField>{spectrum}, spec, strict);
}

double besov_norm(const Grid& grid, const std::vector<SpectralField>& components, const BesovSpec& spec,
                  bool strict) {
  const BesovEvaluation e = besov_evaluate(grid, components, spec);
  if (strict && e.resolution_warning)
    throw Error(ErrorCode::ResolutionWarning,
                "top dyadic block carries " + format_double(100.0 * e.top_fraction) + "% of the Besov norm");
  return e.value;
}

double data_norm_I(const SpectralState& data, const ExponentSet& exps, const Grid& grid) {
  check_shape(grid, data);
  const double p = exps.p.value;
  double total = 0.0;
  for (double q : {exps.q1.value, exps.q2.value}) {
    total += besov_norm(grid, data.theta, BesovSpec{3.0 - 2.0 / p, q, p});
    total += besov_norm(grid, data.u, BesovSpec{2.0 * (1.0 - 1.0 / p), q, p});
  }
  const PhysicalState phys = inverse(grid, data);
  const double half = 0.5 * exps.q1.value;
  total += lebesgue_norm(grid, phys.theta, half) + lebesgue_norm(grid, phys.u, half);
  return total;
}

void NormTimeline::add(double t, std::map<std::string, double> values) {
  if (!std::isfinite(t)) throw Error(ErrorCode::NonFinite, "timeline sample time is not finite");
  if (!samples_.empty() && !(t > samples_.back().t))
    throw Error(ErrorCode::ValidationError, "timeline times must increase strictly");
  for (const auto& [name, v] : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "norm " + name + " is not finite");
    if (v < 0.0) throw Error(ErrorCode::ValidationError, "norm " + name + " is negative");
  }
  samples_.push_back({t, std::move(values)});
}

bool NormTimeline::has(const std::string& name) const {
  return !samples_.empty() && find_missing(*this, name) == nullptr;
}

void NormTimeline::write_csv(std::ostream& os) const {
  os << "t,name,value\n";
  for (const auto& s : samples_)
    for (const auto& [name, v] : s.values) os << format_double(s.t) << ",\"" << name << "\"," << format_double(v) << '\n';
}

std::string exponent_label(double q) {
  if (std::isinf(q)) return "inf";
  for (int den = 1; den <= 64; ++den) {
    const double num = std::round(q * den);
    if (std::abs(q * den - num) < 1e-9 * den) {
      const auto ni = static_cast<long long>(num);
      return den == 1 ? std::to_string(ni) : std::to_string(ni) + "/" + std::to_string(den);
    }
  }
  return format_double(q);
}

std::string gradient_pair_name(int j, double q) {
  return "L" + exponent_label(q) + "(D^" + std::to_string(j) + "(theta,u))";
}

std::string sobolev_pair_name(int m, int l, double q) {
  return "W^{" + std::to_string(m) + "," + std::to_string(l) + "}_" + exponent_label(q) + "(theta,u)";
}

std::string time_derivative_name(double q) { return "W^{1,0}_" + exponent_label(q) + "(dt theta,dt u)"; }

double gradient_pair_norm(const Grid& grid, const SpectralState& state, int j, double q) {
  check_shape(grid, state);
  DerivativeBank theta(grid, {&state.theta});
  DerivativeBank u(grid, pointers(state.u));
  return theta.gradient(j, q) + u.gradient(j, q);
}

std::map<std::string, double> script_N_constituents(const Grid& grid, const SpectralState& state,
                                                    const SpectralState& time_derivative, const ExponentSet& exps) {
  check_shape(grid, state);
  check_shape(grid, time_derivative);
  DerivativeBank theta(grid, {&state.theta});
  DerivativeBank u(grid, pointers(state.u));
  DerivativeBank dtheta(grid, {&time_derivative.theta});
  DerivativeBank du(grid, pointers(time_derivative.u));
  const double inf = std::numeric_limits<double>::infinity();
  std::map<std::string, double> out;
  for (int j = 0; j <= 1; ++j)
    for (double q : {inf, exps.q1.value, exps.q2.value})
      out[gradient_pair_name(j, q)] = theta.gradient(j, q) + u.gradient(j, q);
  for (double q : {exps.q1.value, exps.q2.value}) {
    out[sobolev_pair_name(3, 2, q)] = theta.sobolev(3, q) + u.sobolev(2, q);
    out[time_derivative_name(q)] = dtheta.sobolev(1, q) + du.sobolev(0, q);
  }
  return out;
}

std::map<std::string, double> standard_norms(const Grid& grid, const SpectralState& state, const ExponentSet& exps) {
  check_shape(grid, state);
  DerivativeBank theta(grid, {&state.theta});
  DerivativeBank u(grid, pointers(state.u));
  std::map<std::string, double> out;
  for (double q : {0.5 * exps.q1.value, exps.q1.value, exps.q2.value, 2.0, std::numeric_limits<double>::infinity()}) {
    const std::string ql = exponent_label(q);
    out["L" + ql + "(theta)"] = theta.gradient(0, q);
    out["L" + ql + "(u)"] = u.gradient(0, q);
    out["L" + ql + "(grad theta)"] = theta.gradient(1, q);
    out["L" + ql + "(grad u)"] = u.gradient(1, q);
    for (int m = 0; m <= 3; ++m) {
      out["W^" + std::to_string(m) + "_" + ql + "(theta)"] = theta.sobolev(m, q);
      out["W^" + std::to_string(m) + "_" + ql + "(u)"] = u.sobolev(m, q);
    }
  }
  return out;
}

double weighted_sup(const NormTimeline& timeline, const std::string& name, double ell, double t) {
  require_constituent(timeline, name);
  double best = 0.0;
  for (const auto& s : timeline.samples()) {
    if (s.t > t) break;
    best = std::max(best, std::pow(1.0 + s.t, ell) * s.values.at(name));
  }
  return best;
}

double weighted_time_lp(const NormTimeline& timeline, const std::string& name, double ell, double p, double t) {
  require_constituent(timeline, name);
  const auto& samples = timeline.samples();
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    if (samples[k + 1].t > t) break;
    const double a = std::pow(std::pow(1.0 + samples[k].t, ell) * samples[k].values.at(name), p);
    const double b = std::pow(std::pow(1.0 + samples[k + 1].t, ell) * samples[k + 1].values.at(name), p);
    integral += 0.5 * (samples[k + 1].t - samples[k].t) * (a + b);
  }
  return std::pow(integral, 1.0 / p);
}

double script_N(const NormTimeline& timeline, const ExponentSet& exps, double t) {
  const double n = exps.dim;
  const double q1 = exps.q1.value;
  const double q2 = exps.q2.value;
  const double p = exps.p.value;
  const double inf = std::numeric_limits<double>::infinity();
  const std::array<double, 2> ells = {exps.ell1, exps.ell2};
  const std::array<double, 2> qs = {q1, q2};
  double total = 0.0;
  for (int j = 0; j <= 1; ++j) {
    for (std::size_t i = 0; i < 2; ++i) {
      total += weighted_sup(timeline, gradient_pair_name(j, inf), n / q1 + 0.5 * j, t);
      total += weighted_sup(timeline, gradient_pair_name(j, q1), n / (2.0 * q1) + 0.5 * j, t);
      total += weighted_sup(timeline, gradient_pair_name(j, q2), n / (2.0 * q2) + 1.0 + 0.5 * j, t);
      total += weighted_time_lp(timeline, sobolev_pair_name(3, 2, qs[i]), ells[i], p, t);
      total += weighted_time_lp(timeline, time_derivative_name(qs[i]), ells[i], p, t);
    }
  }
  return total;
}

}  // namespace kspec
