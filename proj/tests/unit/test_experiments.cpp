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

#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "kspec/error.hpp"
#include "kspec/experiments.hpp"
#include "kspec/integrator.hpp"
#include "oracles.hpp"

using namespace kspec;
using namespace kspec::testing;
using C = std::complex<double>;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ValidationError;
}

std::vector<double> log_times(double a, double b, int n) {
  std::vector<double> t;
  for (int k = 0; k < n; ++k) t.push_back(a * std::pow(b / a, k / (n - 1.0)));
  return t;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("predicted exponents") {
    CHECK(predicted_decay_exponent(3, 2.0, INFINITY, 0) == doctest::Approx(-0.75));
    CHECK(predicted_decay_exponent(3, 4.0 / 3.0, 2.0, 1) == doctest::Approx(-7.0 / 8.0));
    CHECK(predicted_decay_exponent(3, 4.0 / 3.0, 2.0, 0) == doctest::Approx(-3.0 / 8.0));
  }

  TEST_CASE("admissible exponent pairs") {
    CHECK(code_of([] { check_admissible_pq(1.5, 3.0); }) == ErrorCode::InadmissiblePQ);
    CHECK(code_of([] { check_admissible_pq(2.0, 1.0); }) == ErrorCode::InadmissiblePQ);
    CHECK_NOTHROW(check_admissible_pq(INFINITY, 2.0));
    CHECK_NOTHROW(check_admissible_pq(2.0, 4.0 / 3.0));
  }

  TEST_CASE("slope fits") {
    const auto t = log_times(1.0, 40.0, 16);
    std::vector<double> pw, flat, wob;
    for (double x : t) {
      pw.push_back(2.5 * std::pow(x, -1.3));
      flat.push_back(4.0);
      wob.push_back(std::pow(x, -0.75) * (1.0 + 0.01 * std::sin(std::log(x))));
    }
    const SlopeFit a = slope_fit(t, pw);
    CHECK(a.slope == doctest::Approx(-1.3).epsilon(1e-12));
    CHECK(a.residual < 1e-12);
    CHECK(std::abs(slope_fit(t, flat).slope) < 1e-14);
    CHECK(std::abs(slope_fit(t, wob).slope + 0.75) < 0.01);
    CHECK(code_of([&] { slope_fit(t, pw, 20.0, 40.0); }) == ErrorCode::WindowTooShort);

    std::vector<double> ex;
    const auto lin = log_times(0.5, 5.0, 10);
    for (double x : lin) ex.push_back(3.0 * std::exp(-0.7 * x));
    CHECK(exponential_fit(lin, ex).slope == doctest::Approx(-0.7).epsilon(1e-12));
  }

  TEST_CASE("initial data generators") {
    const Grid g(3, 20.0, 16);
    const SpectralState gs = gaussian_data(g, 2.0, 0.3, 0.1);
    CHECK(is_hermitian(g, gs));
    const PhysicalState ph = inverse(g, gs);
    CHECK(max_abs(ph.theta) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(max_abs(ph.u[0]) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(max_abs(ph.u[1]) == 0.0);

    const SpectralState cr = critical_power_law_data(g, 4.0 / 3.0);
    CHECK(is_hermitian(g, cr));
    CHECK(max_abs(inverse(g, cr).u[0]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectral_l2(scaled(cr, -2.0)) == doctest::Approx(2.0 * spectral_l2(cr)));

    const ModelParams p = polytropic_model(1.0, 0.0, 1.0, 1.0, 2.0, 2.0);
    CHECK(wrap_around_time(g, p) == doctest::Approx(10.0));
  }

  TEST_CASE("decay experiment on a small grid") {
    const Grid g(3, 200.0, 32);
    const ModelParams p = polytropic_model(2.0, 2.0, 6.0, 1.0, 0.5, 2.0);
    DecaySpec spec;
    spec.data = DecayData::CriticalPowerLaw;
    spec.p = 2.0;
    spec.q = 4.0 / 3.0;
    spec.times = log_times(1.0, 40.0, 16);
    const DecayReport r = decay_experiment(spec, g, p);
    CHECK(r.values.size() == 16);
    CHECK(r.fit.slope < 0.0);
    CHECK(r.t_max <= 0.2 * r.wrap_time);
    std::ostringstream os;
    write_decay_csv(os, r);
    CHECK(os.str().find("t,") == 0);

    spec.p = 1.5;
    spec.q = 3.0;
    CHECK(code_of([&] { decay_experiment(spec, g, p); }) == ErrorCode::InadmissiblePQ);
  }

  TEST_CASE("asymptotics sweeps") {
    const ModelParams pos = polytropic_model(4.0, 0.0, 1.0, 1.0, 0.5, 2.0);
    const ModelParams neg = polytropic_model(2.0, 0.0, 2.0, 1.0, 0.5, 2.0);
    for (const ModelParams& p : {pos, neg}) {
      const AsymptoticsTable t = asymptotics_experiment(p, -1.0, -4.0, 1.0, 4.0);
      CHECK(t.low_monotone);
      CHECK(t.high_monotone);
      CHECK(asymptotic_deviation(1e-4, AsymptoticRegime::Low, p) < asymptotic_deviation(1e-1, AsymptoticRegime::Low, p));
      CHECK(asymptotic_deviation(1e4, AsymptoticRegime::High, p) < asymptotic_deviation(1e1, AsymptoticRegime::High, p));
    }
    for (double xi : {10.0, 1e2, 1e3, 1e5}) CHECK(eigenpair(xi * xi, neg).regime == Regime::ComplexPair);
  }

  TEST_CASE("resolvent sweep") {
    const Grid g(3, 20.0, 16);
    const ModelParams p = polytropic_model(1.0, 0.5, 0.6, 1.0, 0.5, 2.0);
    const ResolventConstants k = ResolventConstants::linearised(p);
    const SpectralState probe = gaussian_data(g, 2.0, 0.1, 0.1);

    ResolventSweepSpec spec;
    spec.lambda_max = 1e3;
    spec.radii_per_decade = 4;
    spec.angles = 8;
    const auto grid_l = resolvent_lambda_grid(spec);
    const Sector sector(spec.epsilon_angle, spec.lambda0);
    for (C l : grid_l) CHECK(sector.contains(l));

    const ResolventReport r = resolvent_sweep(spec, k, p, g, probe);
    for (const auto& s : r.samples) CHECK(std::isfinite(s.quantity));
    CHECK(r.flatness() >= 1.0);

    const ResolventReport r2 = resolvent_sweep(spec, k, p, g, scaled(probe, 3.0));
    CHECK(r2.sup == doctest::Approx(r.sup).epsilon(1e-12));
    CHECK(r2.inf == doctest::Approx(r.inf).epsilon(1e-12));

    const SpectralState s1 = resolvent_solve(C(2.0, 1.0), probe, k, g, p);
    const SpectralState s3 = resolvent_solve(C(2.0, 1.0), scaled(probe, 3.0), k, g, p);
    CHECK(rel_l2_diff(s3, scaled(s1, 3.0)) < 1e-14);

    // large real lambda: the |lambda| term dominates and stays below the sweep sup
    ResolventSweepSpec big = spec;
    big.lambda0 = 1e6;
    big.lambda_max = 1e6;
    big.angles = 1;
    const ResolventReport rb = resolvent_sweep(big, k, p, g, probe);
    REQUIRE(rb.samples.size() == 1);
    CHECK(std::abs(rb.samples[0].lambda.imag()) < 1e-6);

    ResolventSweepSpec ring = spec;
    ring.lambda_max = ring.lambda0;
    ring.angles = 32;
    for (const auto& s : resolvent_sweep(ring, k, p, g, probe).samples) CHECK(std::isfinite(s.quantity));

    CHECK_THROWS_AS(resolvent_sweep(spec, k, p, g, SpectralState::zeros(g)), Error);
  }
}
