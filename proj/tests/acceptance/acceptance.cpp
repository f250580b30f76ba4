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

// Acceptance runner: one pass/fail line per criterion, with the measured
// values that decided it. `--only N` restricts the run to criterion N.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kspec/error.hpp"
#include "kspec/experiments.hpp"
#include "kspec/integrator.hpp"
#include "kspec/linear_symbol.hpp"
#include "kspec/nonlinear.hpp"
#include "kspec/norms.hpp"
#include "kspec/parallel.hpp"
#include "kspec/propagator.hpp"
#include "kspec_cli/cli.hpp"
#include "oracles.hpp"

using namespace kspec;
using namespace kspec::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> log_times(double a, double b, int n) {
  std::vector<double> t;
  for (int k = 0; k < n; ++k) t.push_back(a * std::pow(b / a, static_cast<double>(k) / (n - 1)));
  return t;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::log(x[i]), b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SpectralState combine(const SpectralState& a, double ca, const SpectralState& b, double cb) {
  SpectralState out = a;
  for (std::size_t i = 0; i < a.theta.size(); ++i) out.theta[i] = ca * a.theta[i] + cb * b.theta[i];
  for (std::size_t k = 0; k < a.u.size(); ++k)
    for (std::size_t i = 0; i < a.theta.size(); ++i) out.u[k][i] = ca * a.u[k][i] + cb * b.u[k][i];
  return out;
}

Eigen::VectorXcd pack(const SpectralState& s) {
  const auto n = static_cast<Eigen::Index>(s.theta.size());
  Eigen::VectorXcd v(n * static_cast<Eigen::Index>(1 + s.u.size()));
  for (Eigen::Index i = 0; i < n; ++i) v[i] = s.theta[static_cast<std::size_t>(i)];
  for (std::size_t k = 0; k < s.u.size(); ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      v[n * static_cast<Eigen::Index>(k + 1) + i] = s.u[k][static_cast<std::size_t>(i)];
  return v;
}

SpectralState unpack(const Grid& g, const Eigen::VectorXcd& v) {
  SpectralState s = SpectralState::zeros(g);
  const auto n = static_cast<Eigen::Index>(g.size());
  for (Eigen::Index i = 0; i < n; ++i) s.theta[static_cast<std::size_t>(i)] = v[i];
  for (std::size_t k = 0; k < s.u.size(); ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      s.u[k][static_cast<std::size_t>(i)] = v[n * static_cast<Eigen::Index>(k + 1) + i];
  return s;
}

double sup_of(const Grid& g, const std::vector<SpectralField>& f) {
  double m = 0.0;
  for (const auto& c : f) m = std::max(m, max_abs(inverse_field(g, c)));
  return m;
}

double sup_diff(const Grid& g, const std::vector<SpectralField>& a, const std::vector<SpectralField>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, max_abs_diff(inverse_field(g, a[k]), inverse_field(g, b[k])));
  return m;
}

std::map<std::string, std::string> read_manifest(const fs::path& p) {
  std::map<std::string, std::string> out;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("kspec_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ModelParams random_model(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double mu = 0.05 + 3.0 * u(rng);
  return polytropic_model(mu, -0.3 * mu + 3.0 * u(rng), 0.05 + 3.0 * u(rng), 0.2 + 2.0 * u(rng), 0.1 + 2.0 * u(rng),
                          1.0 + 2.0 * u(rng));
}

// ---------------------------------------------------------------------------

Outcome eigen_identities() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> lx(-12.0, 12.0);
  double worst_sum = 0.0, worst_prod = 0.0;
  for (int m = 0; m < 1000; ++m) {
    const ModelParams p = random_model(rng);
    for (int n = 0; n < 1000; ++n) {
      const double r2 = std::pow(10.0, lx(rng));
      const EigenPair e = eigenpair(r2, p);
      const double b = (p.alpha_star() + p.beta_star()) * r2;
      const double c = p.rho_star() * p.kappa_star() * r2 * r2 + p.rho_star() * p.gamma_star() * r2;
      worst_sum = std::max(worst_sum, std::abs(e.lambda_plus + e.lambda_minus + b) / b);
      worst_prod = std::max(worst_prod, std::abs(e.lambda_plus * e.lambda_minus - c) / c);
    }
  }

  double max_re = -std::numeric_limits<double>::infinity();
  for (int m = 0; m < 20; ++m) {
    const ModelParams p = random_model(rng);
    for (int k = 0; k <= 1200; ++k) {
      const double xi = std::pow(10.0, -6.0 + 12.0 * k / 1200.0);
      const EigenPair e = eigenpair(xi * xi, p);
      max_re = std::max({max_re, e.lambda_plus.real() / (xi * xi), e.lambda_minus.real() / (xi * xi)});
    }
  }
  Outcome o;
  o.pass = worst_sum < 1e-10 && worst_prod < 1e-10 && max_re < 0.0;
  o.detail = "10^6 draws: max rel sum err " + fmt(worst_sum) + ", max rel product err " + fmt(worst_prod) +
             "; max Re(lambda)/|xi|^2 over [1e-6, 1e6] = " + fmt(max_re);
  return o;
}

Outcome asymptotics() {
  const ModelParams pos = polytropic_model(4.0, 0.0, 1.0, 1.0, 0.5, 2.0);
  const ModelParams neg = polytropic_model(2.0, 0.0, 2.0, 1.0, 0.5, 2.0);
  Outcome o;
  o.pass = true;
  for (const ModelParams* p : {&pos, &neg}) {
    const AsymptoticsTable t = asymptotics_experiment(*p, -1.0, -4.0, 1.0, 4.0);
    const double lo = asymptotic_deviation(1e-3, AsymptoticRegime::Low, *p);
    const double hi = asymptotic_deviation(1e3, AsymptoticRegime::High, *p);
    o.pass = o.pass && t.low_monotone && t.high_monotone && lo < 1e-2 && hi < 1e-2;
    o.detail += std::string(o.detail.empty() ? "" : "; ") + "delta " + fmt(p->delta_star()) + ": dev(1e-3) " +
                fmt(lo) + ", dev(1e3) " + fmt(hi) + ", monotone " + (t.low_monotone && t.high_monotone ? "yes" : "no");
  }
  return o;
}

Outcome propagator() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Dp45Options opts;
  opts.atol = 1e-30;
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const ModelParams p = random_model(rng);
    const int dim = 1 + n % 3;
    const double r = std::pow(10.0, -1.5 + 2.2 * u(rng));
    Vec3 xi{0, 0, 0};
    double s = 0.0;
    for (int d = 0; d < dim; ++d) s += (xi[d] = u(rng) - 0.5) * xi[d];
    for (int d = 0; d < dim; ++d) xi[d] *= r / std::sqrt(s);
    const double t = 0.05 + 2.0 * u(rng);
    const Eigen::MatrixXcd a = mode_generator(xi, dim, p);
    Eigen::MatrixXcd ref(dim + 1, dim + 1);
    for (int c = 0; c <= dim; ++c) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim + 1);
      e[c] = 1.0;
      ref.col(c) = dp45([&](double, const Eigen::VectorXcd& y) { return Eigen::VectorXcd(a * y); }, e, 0.0, t, opts);
    }
    const Eigen::MatrixXcd g = propagator_symbol(t, xi, dim, p);
    worst = std::max(worst, (g - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff());
  }

  const ModelParams p = polytropic_model(1.0, 0.5, 0.6, 1.0, 0.5, 2.0);
  const Grid g(3, 12.0, 16);
  const SpectralState s = random_state(g, rng, 6, 0.2, 0.2);
  const double semigroup =
      rel_l2_diff(apply_semigroup(0.3, apply_semigroup(0.45, s, g, p), g, p), apply_semigroup(0.75, s, g, p));

  bool identity = true;
  for (int n = 0; n < 100; ++n) {
    const Vec3 xi{u(rng) - 0.5, u(rng) - 0.5, u(rng) - 0.5};
    identity = identity && propagator_symbol(0.0, xi, 3, p) == Eigen::MatrixXcd::Identity(4, 4);
  }
  const SpectralState same = apply_semigroup(0.0, s, g, p);
  identity = identity && same.theta == s.theta && same.u == s.u;

  Outcome o;
  o.pass = worst < 1e-8 && semigroup < 1e-12 && identity;
  o.detail = "10^3 mode draws: max rel err vs ODE " + fmt(worst) + "; semigroup defect " + fmt(semigroup) +
             "; G(0) = I exactly: " + (identity ? "yes" : "no");
  return o;
}

Outcome decay_rates() {
  const ModelParams p = polytropic_model(2.0, 2.0, 6.0, 1.0, 0.5, 2.0);
  const Grid g(3, 200.0, 64);
  const double inf = std::numeric_limits<double>::infinity();
  const double cases[3][3] = {{4.0 / 3.0, 2.0, 0.0}, {4.0 / 3.0, 2.0, 1.0}, {2.0, inf, 0.0}};

  auto sweep = [&](DecayData data, bool& ok) {
    std::string line;
    ok = true;
    for (const auto& c : cases) {
      DecaySpec spec;
      spec.data = data;
      spec.q = c[0];
      spec.p = c[1];
      spec.j = static_cast<int>(c[2]);
      spec.times = log_times(1.0, 40.0, 16);
      spec.t_min = 1.0;
      spec.t_max = 40.0;
      const DecayReport r = decay_experiment(spec, g, p);
      ok = ok && r.relative_error() <= 0.15;
      line += std::string(line.empty() ? "" : ", ") + "(" + fmt(c[0]) + "," + fmt(c[1]) + "," + fmt(c[2]) +
              ") slope " + fmt(r.fit.slope) + " vs " + fmt(r.predicted_exponent) + " [" +
              fmt(100.0 * r.relative_error()) + "%]";
    }
    return line;
  };

  bool gaussian_ok = false, critical_ok = false;
  const std::string gaussian = sweep(DecayData::Gaussian, gaussian_ok);
  const std::string critical = sweep(DecayData::CriticalPowerLaw, critical_ok);

  const SpectralState data = gaussian_data(g, g.box_length() / 20.0, 1.0, 1.0);
  std::vector<double> times;
  for (int k = 0; k < 16; ++k) times.push_back(40.0 * k / 15.0);
  const HighFrequencyReport hf = high_frequency_decay(data, 0.1, 2.0, times, g, p);

  Outcome o;
  o.pass = gaussian_ok && hf.rate() > 0.0;
  o.detail = "Gaussian data: " + gaussian + "; high-frequency rate " + fmt(hf.rate());
  o.notes.push_back(std::string("critical power-law data (supplementary, ") + (critical_ok ? "within" : "outside") +
                    " 15%): " + critical);
  return o;
}

// Modulus at which the damped sound branch of the spectrum leaves the sector
// |arg lambda| <= pi - pi/4; the sweep needs lambda0 above it.
double spectrum_entry_radius(const ModelParams& p) {
  const double s = p.alpha_star() + p.beta_star();
  const double r2 = p.rho_star() * p.gamma_star() / (0.5 * s * s - p.rho_star() * p.kappa_star());
  return r2 > 0.0 ? s * r2 / std::sqrt(2.0) : std::numeric_limits<double>::infinity();
}

Outcome resolvent() {
  const ModelParams p = polytropic_model(3.0, 1.0, 1.0, 1.0, 0.5, 2.0);
  const Grid g(3, 20.0, 16);
  const SpectralState probe = gaussian_data(g, g.box_length() / 20.0, 0.1, 0.1);
  const ResolventSweepSpec spec;
  const ResolventReport r = resolvent_sweep(spec, ResolventConstants::linearised(p), p, g, probe);
  bool finite = !r.samples.empty();
  for (const auto& s : r.samples) finite = finite && std::isfinite(s.quantity);
  Outcome o;
  o.pass = finite && r.flatness() < 10.0;
  o.detail = std::to_string(r.samples.size()) + " samples, |lambda| in [1, 1e6]: sup " + fmt(r.sup) + ", inf " +
             fmt(r.inf) + ", max/min " + fmt(r.flatness()) + "; spectrum leaves the sector at |lambda| " +
             fmt(spectrum_entry_radius(p));
  return o;
}

Outcome korteweg() {
  const ModelParams p = polytropic_model(1.0, 0.5, 0.6, 1.0, 0.5, 2.0);
  std::mt19937_64 rng(606);
  double worst_bracket = 0.0, worst_forms = 0.0;
  for (int n = 0; n < 6; ++n) {
    const int dim = 2 + n % 2;
    const Grid g(dim, 8.0 + n, dim == 3 ? 24 : 48);
    const SpectralState s = random_state(g, rng, 2 + n, 0.05, 0.1);
    const RealField lap = inverse_field(g, laplacian(g, s.theta));
    double ref = 0.0;
    for (int j = 0; j < dim; ++j) {
      const RealField d = inverse_field(g, derivative(g, s.theta, j));
      for (std::size_t i = 0; i < g.size(); ++i) ref = std::max(ref, std::abs(d[i] * lap[i]));
    }
    worst_bracket = std::max(worst_bracket, sup_of(g, korteweg_remainder(s.theta, g)) / ref);
    const auto div = compute_g(s, p, g, GForm::Divided);
    const auto con = compute_g(s, p, g, GForm::Conservative);
    worst_forms = std::max(worst_forms, sup_diff(g, div, con) / sup_of(g, con));
  }
  Outcome o;
  o.pass = worst_bracket < 1e-10 && worst_forms < 1e-10;
  o.detail = "bracket rel sup " + fmt(worst_bracket) + "; divided vs conservative rel sup " + fmt(worst_forms);
  return o;
}

Outcome integrator() {
  const ModelParams p = polytropic_model(1.0, 0.5, 0.6, 1.0, 0.5, 2.0);
  const ExponentSet exps =
      validate_exponents(Exponent::ratio(4, 1), Exponent::ratio(24, 11), Exponent::ratio(8, 1), 0.5, 3);

  const Grid g1(1, 16.0, 32);
  std::mt19937_64 rng(707);
  const SpectralState x0 = random_state(g1, rng, 6, 0.2, 0.2);
  auto rhs = [&](double, const Eigen::VectorXcd& y) {
    const SpectralState s = unpack(g1, y);
    return pack(combine(apply_generator(g1, s, p), 1.0, nonlinearity(s, p, g1, GForm::Conservative), 1.0));
  };
  const SpectralState ref = unpack(g1, dp45(rhs, pack(x0), 0.0, 1.0));
  std::vector<double> hs, errs;
  for (double h : {0.1, 0.05, 0.025, 0.0125}) {
    IntegratorConfig c;
    c.dt = h;
    c.t_end = 1.0;
    const Trajectory t = run_simulation(x0, p, exps, g1, c);
    hs.push_back(h);
    errs.push_back(t.completed ? rel_l2_diff(t.snapshots.back(), ref) : std::numeric_limits<double>::quiet_NaN());
  }
  const double order = loglog_slope(hs, errs);

  const Grid g3(3, 12.0, 16);
  const SpectralState s0 = gaussian_data(g3, 1.5, 0.05, 0.02);
  IntegratorConfig lin;
  lin.dt = 0.1;
  lin.t_end = 1.0;
  lin.linear_only = true;
  double exact = 0.0;
  for (const auto& s : run_simulation(s0, p, exps, g3, lin).snapshots)
    exact = std::max(exact, rel_l2_diff(s, apply_semigroup(s.time, s0, g3, p)));

  const Grid gm(3, 10.0, 16);
  IntegratorConfig mc;
  mc.dt = 0.05;
  mc.t_end = 1.0;
  const Trajectory tm = run_simulation(random_state(gm, rng, 4, 0.1, 0.1), p, exps, gm, mc);
  double drift = 0.0;
  for (double m : tm.mean_theta) drift = std::max(drift, std::abs(m - tm.mean_theta.front()));
  drift /= mc.t_end;

  Outcome o;
  o.pass = std::abs(order - 2.0) <= 0.3 && exact < 1e-11 && tm.completed && drift < 1e-13;
  o.detail = "ETD2RK order " + fmt(order) + " (errors " + fmt(errs.front()) + " .. " + fmt(errs.back()) +
             "); linear-only defect " + fmt(exact) + "; mean drift per unit time " + fmt(drift);
  return o;
}

const char* kModel = R"("model": {"mu_star": 1, "nu_star": 0, "kappa_star": 1, "rho_star": 1,
                                 "pressure": {"family": "polytropic", "A": 0.5, "gamma_exp": 2}},
                       "exponents": {"p": 4, "q1": "24/11", "q2": 8, "tau": 0.5})";

Outcome small_data() {
  const fs::path dir = scratch("small_data");
  const double dt = 0.05, box = 50.0;
  const double t_end = std::min(100 * dt, 0.2 * box);
  std::ofstream(dir / "config.json") << "{" << kModel << R"(,
    "grid": {"dim": 3, "modes": 32, "box_length": )" << box << R"(},
    "integrator": {"dt": )" << dt << R"(, "t_end": )" << t_end << R"(, "record_script_N": true},
    "initial": {"kind": "gaussian", "data_norm": 0.001}})";
  cli::CommandOptions opts;
  opts.config_path = (dir / "config.json").string();
  opts.out_dir = (dir / "out").string();
  const int status = cli::run_command("simulate", opts);
  auto m = read_manifest(dir / "out" / "manifest.txt");
  const double ratio = m.count("bound_ratio") ? std::stod(m["bound_ratio"]) : std::numeric_limits<double>::infinity();
  Outcome o;
  o.pass = status == 0 && m["completed"] == "true" && m["check.range_condition"] == "pass" && ratio <= 10.0 &&
           m.count("script_N_measured");
  o.detail = "I = " + m["data_norm_I"] + ", steps " + m["steps"] + ", range " + m["check.range_condition"] +
             ", sup W10 / I = " + fmt(ratio) + ", measured N = " + m["script_N_measured"];
  return o;
}

Outcome norms_engine() {
  std::mt19937_64 rng(909);
  std::normal_distribution<double> normal;
  double parseval = 0.0;
  for (int dim = 1; dim <= 3; ++dim) {
    const Grid g(dim, 3.0, dim == 3 ? 16 : 64);
    RealField f(g.size());
    for (double& v : f) v = normal(rng);
    const SpectralField s = forward_field(g, f);
    double phys = 0.0, spec = 0.0;
    for (double v : f) phys += v * v;
    for (const auto& c : s) spec += std::norm(c);
    parseval = std::max(parseval, std::abs(phys - spec / static_cast<double>(g.size())) / phys);
  }

  const Grid gb(3, 2 * std::numbers::pi, 16);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int n = 0; n < 50; ++n) {
    const SpectralField r = random_state(gb, rng, 1 + n % 5, 1.0, 0.0).theta;
    const double ratio = besov_norm(gb, r, BesovSpec{1.0, 2.0, 2.0}) / sobolev_norm(gb, r, 1, 2.0);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }

  const Grid gp(3, 1.0, 64);
  double unity = 0.0;
  for (double r = 0.0; r <= std::sqrt(3.0) * 32; r += 0.01) {
    double s = 0.0;
    for (int j = 0; j < besov_block_count(gp); ++j) s += besov_block_weight(j, r);
    unity = std::max(unity, std::abs(s - 1.0));
  }

  const ExponentSet exps =
      validate_exponents(Exponent::ratio(4, 1), Exponent::ratio(24, 11), Exponent::ratio(8, 1), 0.5, 3);
  const Grid gi(3, 20.0, 16);
  const SpectralState d = gaussian_data(gi, 1.0, 1e-3, 2e-3);
  const double base = data_norm_I(d, exps, gi);
  double homog = 0.0;
  for (double c : {-3.0, 0.25, 7.0})
    homog = std::max(homog, std::abs(data_norm_I(scaled(d, c), exps, gi) - std::abs(c) * base) / (std::abs(c) * base));

  Outcome o;
  o.pass = parseval < 1e-12 && lo >= 0.25 && hi <= 4.0 && unity < 1e-14 && homog < 1e-12;
  o.detail = "Parseval " + fmt(parseval) + "; Besov/Sobolev ratio [" + fmt(lo) + ", " + fmt(hi) +
             "]; partition residual " + fmt(unity) + "; I homogeneity " + fmt(homog);
  return o;
}

Outcome determinism() {
  const fs::path dir = scratch("determinism");
  std::ofstream(dir / "config.json") << "{" << kModel << R"(,
    "grid": {"dim": 3, "modes": 16, "box_length": 20},
    "integrator": {"dt": 0.05, "t_end": 1.0},
    "initial": {"kind": "random", "theta_amp": 0.001, "u_amp": 0.001}})";
  cli::CommandOptions opts;
  opts.config_path = (dir / "config.json").string();
  opts.seed = 42;
  const std::vector<std::pair<std::string, int>> runs = {{"a", 1}, {"b", 1}, {"c", 2}, {"d", 4}};
  bool ok = true;
  for (const auto& [name, threads] : runs) {
    opts.out_dir = (dir / name).string();
    opts.threads = threads;
    ok = ok && cli::run_command("simulate", opts) == 0;
  }
  set_thread_count(1);
  std::string detail;
  for (const char* f : {"norms.csv", "mean_theta.csv"}) {
    const std::string a = slurp(dir / "a" / f);
    const bool repeat = !a.empty() && a == slurp(dir / "b" / f);
    const bool threads = a == slurp(dir / "c" / f) && a == slurp(dir / "d" / f);
    ok = ok && repeat && threads;
    detail += std::string(detail.empty() ? "" : "; ") + f + ": repeat " + (repeat ? "identical" : "differs") +
              ", 1/2/4 threads " + (threads ? "identical" : "differ");
  }
  Outcome o;
  o.pass = ok;
  o.detail = detail;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("kspec acceptance runner");
  int only = 0;
  app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "eigenvalue identities", 10.0, eigen_identities},
      {2, "asymptotic regimes", 5.0, asymptotics},
      {3, "propagator", 60.0, propagator},
      {4, "decay rates", 900.0, decay_rates},
      {5, "resolvent uniformity", 300.0, resolvent},
      {6, "Korteweg remainder", 30.0, korteweg},
      {7, "integrator", 300.0, integrator},
      {8, "small-data boundedness", 1200.0, small_data},
      {9, "norms engine", 30.0, norms_engine},
      {10, "determinism", 120.0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("criterion %2d %-24s %s  %s  [%.1f s of %.0f s%s]\n", c.id, c.title.c_str(), pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
    for (const auto& n : o.notes) std::printf("             note: %s\n", n.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
