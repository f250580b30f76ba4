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

#include "kspec/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kspec/error.hpp"

namespace kspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- pressure

PressureLaw PressureLaw::polytropic(double coefficient, double exponent) {
  if (!(coefficient > 0.0) || !std::isfinite(coefficient)) {
    throw Error(ErrorCode::InvalidPressureLaw, "polytropic coefficient A must be positive, got " + fmt(coefficient));
  }
  if (!(exponent >= 1.0) || !std::isfinite(exponent)) {
    throw Error(ErrorCode::InvalidPressureLaw, "polytropic exponent must be >= 1, got " + fmt(exponent));
  }
  PressureLaw law;
  law.family_ = Family::Polytropic;
  law.coefficient_ = coefficient;
  law.exponent_ = exponent;
  return law;
}

PressureLaw PressureLaw::tabulated(std::vector<std::pair<double, double>> table) {
  if (table.size() < 4) {
    throw Error(ErrorCode::InvalidPressureLaw, "pressure table needs at least 4 samples");
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto [r, p] = table[i];
    if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(p)) {
      throw Error(ErrorCode::InvalidPressureLaw, "pressure table entries must be finite with r > 0");
    }
    if (i > 0 && !(r > table[i - 1].first)) {
      throw Error(ErrorCode::InvalidPressureLaw, "pressure table densities must be strictly increasing");
    }
  }
  PressureLaw law;
  law.family_ = Family::Tabulated;
  law.table_ = std::move(table);
  const double lo = law.table_.front().first;
  const double hi = law.table_.back().first;
  law.center_ = 0.5 * (lo + hi);
  law.scale_ = 0.5 * (hi - lo);

  const auto n = static_cast<Eigen::Index>(law.table_.size());
  const Eigen::Index degree = std::min<Eigen::Index>(n - 1, 8);
  Eigen::MatrixXd vander(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = (law.table_[i].first - law.center_) / law.scale_;
    double xp = 1.0;
    for (Eigen::Index k = 0; k <= degree; ++k) {
      vander(i, k) = xp;
      xp *= x;
    }
    rhs(i) = law.table_[i].second;
  }
  const Eigen::VectorXd coef = vander.colPivHouseholderQr().solve(rhs);
  law.fit_.assign(coef.data(), coef.data() + coef.size());
  return law;
}

double PressureLaw::evaluate(double r, int order) const {
  if (family_ == Family::Polytropic) {
    double falling = 1.0;
    for (int k = 0; k < order; ++k) falling *= (exponent_ - k);
    if (falling == 0.0) return 0.0;
    return coefficient_ * falling * std::pow(r, exponent_ - order);
  }
  // Horner on the order-th derivative of the fitted polynomial.
  const double x = (r - center_) / scale_;
  const int degree = static_cast<int>(fit_.size()) - 1;
  double acc = 0.0;
  for (int k = degree; k >= order; --k) {
    double falling = 1.0;
    for (int j = 0; j < order; ++j) falling *= (k - j);
    acc = acc * x + falling * fit_[k];
  }
  return acc / std::pow(scale_, order);
}

double PressureLaw::value(double r) const { return evaluate(r, 0); }
double PressureLaw::d1(double r) const { return evaluate(r, 1); }
double PressureLaw::d2(double r) const { return evaluate(r, 2); }
double PressureLaw::d3(double r) const { return evaluate(r, 3); }

// ------------------------------------------------------------------ params

ModelParams::ModelParams(const RawModelParams& raw, double slope)
    : mu_(raw.mu_star),
      nu_(raw.nu_star),
      kappa_(raw.kappa_star),
      rho_(raw.rho_star),
      pressure_(raw.pressure),
      alpha_(raw.mu_star / raw.rho_star),
      beta_(raw.nu_star / raw.rho_star),
      gamma_(slope / raw.rho_star),
      delta_(0.25 * (alpha_ + beta_) * (alpha_ + beta_) - raw.rho_star * raw.kappa_star),
      slope_(slope) {}

double ModelParams::sound_speed() const noexcept { return std::sqrt(rho_ * gamma_); }

ModelParams validate_params(const RawModelParams& raw) {
  for (const auto& [name, v] : {std::pair{"mu_star", raw.mu_star}, std::pair{"nu_star", raw.nu_star},
                                std::pair{"kappa_star", raw.kappa_star}, std::pair{"rho_star", raw.rho_star}}) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::ValidationError, std::string(name) + " must be finite");
    }
  }
  if (!(raw.rho_star > 0.0)) {
    throw Error(ErrorCode::ValidationError, "rho_star must be positive, got " + fmt(raw.rho_star));
  }
  if (!(raw.mu_star > 0.0) || !(raw.mu_star + raw.nu_star > 0.0)) {
    throw Error(ErrorCode::ViolatesViscosity,
                "viscosity condition mu_* > 0 and mu_* + nu_* > 0 violated (mu_*=" + fmt(raw.mu_star) +
                    ", nu_*=" + fmt(raw.nu_star) + ")");
  }
  if (!(raw.kappa_star > 0.0)) {
    throw Error(ErrorCode::ViolatesCapillarity,
                "capillarity condition kappa_* > 0 violated (kappa_*=" + fmt(raw.kappa_star) + ")");
  }
  const double slope = raw.pressure.d1(raw.rho_star);
  if (!(slope > 0.0) || !std::isfinite(slope)) {
    throw Error(ErrorCode::ViolatesPressure, "pressure condition P'(rho_*) > 0 violated (P'(rho_*)=" + fmt(slope) + ")");
  }
  ModelParams params(raw, slope);
  const double ab = params.alpha_star() + params.beta_star();
  const double scale = 0.25 * ab * ab + raw.rho_star * raw.kappa_star;
  if (std::abs(params.delta_star()) < 1e-12 * scale) {
    throw Error(ErrorCode::DegenerateDiscriminant,
                "discriminant condition (1/4)((mu_*+nu_*)/rho_*)^2 != rho_* kappa_* violated (delta_*=" +
                    fmt(params.delta_star()) + ")");
  }
  return params;
}

double taylor_pressure_coefficient(double theta, const ModelParams& params) {
  const double rho = params.rho_star();
  if (!std::isfinite(theta) || rho + theta < 0.25 * rho) {
    throw Error(ErrorCode::RangeViolation,
                "range condition rho_* + theta >= rho_*/4 violated (rho_*+theta=" + fmt(rho + theta) + ")");
  }
  const auto& law = params.pressure();
  auto integrand = [&](double s) { return law.d2(rho + s * theta) * (1.0 - s); };
  double error = 0.0;
  const double q = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(integrand, 0.0, 1.0, 15, 1e-15, &error);
  return q;
}

// ---------------------------------------------------------------- exponents

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::ValidationError, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return Rational{num / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};
}

__extension__ typedef __int128 Wide;

Rational operator+(const Rational& a, const Rational& b) {
  const Wide num = static_cast<Wide>(a.num) * b.den + static_cast<Wide>(b.num) * a.den;
  const Wide den = static_cast<Wide>(a.den) * b.den;
  Wide x = num < 0 ? -num : num;
  Wide y = den;
  while (y != 0) {
    const Wide t = x % y;
    x = y;
    y = t;
  }
  const Wide g = x == 0 ? 1 : x;
  const Wide rn = num / g;
  const Wide rd = den / g;
  constexpr Wide lim = std::numeric_limits<std::int64_t>::max();
  if (rn > lim || rn < -lim || rd > lim) {
    throw Error(ErrorCode::ValidationError, "rational overflow");
  }
  return Rational{static_cast<std::int64_t>(rn), static_cast<std::int64_t>(rd)};
}

Rational reciprocal(const Rational& a) { return Rational::make(a.den, a.num); }

Exponent Exponent::ratio(std::int64_t num, std::int64_t den) {
  const Rational r = Rational::make(num, den);
  return Exponent{r.value(), r};
}

Exponent Exponent::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "inf" || text == "infinity") return Exponent::real(kInf);
  auto parse_int = [&](std::string_view s, std::int64_t& out) {
    s = trim(s);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = 0;
    std::int64_t den = 0;
    if (!parse_int(text.substr(0, slash), num) || !parse_int(text.substr(slash + 1), den) || den == 0) {
      throw Error(ErrorCode::ParseError, "malformed rational exponent '" + std::string(text) + "'");
    }
    return Exponent::ratio(num, den);
  }
  std::int64_t whole = 0;
  if (parse_int(text, whole)) return Exponent::ratio(whole, 1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError, "malformed exponent '" + std::string(text) + "'");
  }
  return Exponent::real(v);
}

std::string Exponent::to_string() const {
  if (exact) {
    if (exact->den == 1) return std::to_string(exact->num);
    return std::to_string(exact->num) + "/" + std::to_string(exact->den);
  }
  if (std::isinf(value)) return "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

ExponentSet validate_exponents(const Exponent& p, const Exponent& q1, const Exponent& q2, double tau, int dim) {
  if (dim < 3) {
    throw Error(ErrorCode::DimensionTooSmall,
                "dimension N=" + std::to_string(dim) + " < 3: q1 < N forces q1/2 < 1 and the data norm degenerates");
  }
  const double n = dim;
  for (const auto* e : {&p, &q1, &q2}) {
    if (!(e->value > 1.0) || std::isnan(e->value)) {
      throw Error(ErrorCode::ValidationError, "exponents must lie in (1, inf], got " + e->to_string());
    }
  }
  if (!std::isfinite(tau)) throw Error(ErrorCode::ValidationError, "tau must be finite");
  if (!(p.value > 2.0) || !std::isfinite(p.value)) {
    throw Error(ErrorCode::ExponentPRange, "condition 2 < p < inf violated (p=" + p.to_string() + ")");
  }
  if (!(q1.value < n)) {
    throw Error(ErrorCode::ExponentQ1BelowDimension, "condition q1 < N violated (q1=" + q1.to_string() + ")");
  }
  if (!(q2.value > n)) {
    throw Error(ErrorCode::ExponentQ2AboveDimension, "condition q2 > N violated (q2=" + q2.to_string() + ")");
  }
  bool holder = false;
  if (q1.exact && q2.exact) {
    holder = reciprocal(*q1.exact) == reciprocal(*q2.exact) + Rational::make(1, dim);
  } else {
    holder = std::abs(1.0 / q1.value - (1.0 / q2.value + 1.0 / n)) <= 1e-12;
  }
  if (!holder) {
    throw Error(ErrorCode::ExponentHolderRelation, "relation 1/q1 = 1/q2 + 1/N violated (1/q1=" + fmt(1.0 / q1.value) +
                                                       ", 1/q2+1/N=" + fmt(1.0 / q2.value + 1.0 / n) + ")");
  }
  if (!(2.0 / p.value + n / q2.value < 1.0)) {
    throw Error(ErrorCode::ExponentScaling, "condition 2/p + N/q2 < 1 violated (value " +
                                                fmt(2.0 / p.value + n / q2.value) + ")");
  }
  if (!(1.0 / p.value < tau) || !(tau < n / q2.value + 1.0 / p.value)) {
    throw Error(ErrorCode::ExponentTauRange, "condition 1/p < tau < N/q2 + 1/p violated (tau=" + fmt(tau) + ")");
  }
  if (!(q1.value / 2.0 > 1.0)) {
    throw Error(ErrorCode::ExponentQ1HalfNotNorm, "condition q1/2 > 1 violated (q1=" + q1.to_string() + ")");
  }
  ExponentSet set;
  set.dim = dim;
  set.p = p;
  set.q1 = q1;
  set.q2 = q2;
  set.tau = tau;
  set.ell1 = n / (2.0 * q1.value) - tau;
  set.ell2 = n / (2.0 * q2.value) + 1.0 - tau;
  return set;
}

}  // namespace kspec
