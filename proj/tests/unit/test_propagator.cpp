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
#include <random>

#include "doctest.h"
#include "kspec/error.hpp"
#include "kspec/experiments.hpp"
#include "kspec/integrator.hpp"
#include "kspec/propagator.hpp"
#include "oracles.hpp"

using namespace kspec;
using namespace kspec::testing;
using C = std::complex<double>;

namespace {

const ModelParams& params() {
  static const ModelParams p = polytropic_model(1.0, 0.5, 0.6, 1.0, 0.5, 2.0);
  return p;
}

}  // namespace

TEST_SUITE("propagator") {
  TEST_CASE("t = 0 leaves the state untouched") {
    const Grid g(3, 10.0, 8);
    std::mt19937_64 rng(1);
    const SpectralState s = random_state(g, rng, 3, 0.1, 0.1);
    const SpectralState out = apply_semigroup(0.0, s, g, params());
    CHECK(out.theta == s.theta);
    CHECK(out.u == s.u);
  }

  TEST_CASE("a pure mean state is stationary") {
    const Grid g(2, 5.0, 8);
    SpectralState s = SpectralState::zeros(g);
    s.theta[0] = 3.0;
    s.u[0][0] = -1.0;
    s.u[1][0] = 2.0;
    const SpectralState out = apply_semigroup(7.5, s, g, params());
    CHECK(out.theta == s.theta);
    CHECK(out.u == s.u);
    CHECK(out.time == 7.5);
  }

  TEST_CASE("1-D Gaussian matches the closed-form multiplier") {
    const Grid g(1, 20.0, 64);
    const SpectralState s0 = gaussian_data(g, 1.0, 0.1, 0.0);
    const ModelParams& p = params();
    for (double t : {0.1, 0.7, 3.0}) {
      const SpectralState s = apply_semigroup(t, s0, g, p);
      double expect = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double xi = g.xi(i)[0];
        const double r2 = xi * xi;
        if (r2 == 0.0) {
          expect += std::norm(s0.theta[i]);
          continue;
        }
        // roots of z^2 + (alpha+beta) r2 z + rho kappa r2^2 + rho gamma r2
        const double b = (p.alpha_star() + p.beta_star()) * r2;
        const double c = p.rho_star() * p.kappa_star() * r2 * r2 + p.rho_star() * p.gamma_star() * r2;
        const C disc = std::sqrt(C(b * b - 4.0 * c));
        const C lp = 0.5 * (-b + disc), lm = 0.5 * (-b - disc);
        const C ep = std::exp(lp * t), em = std::exp(lm * t);
        const C th = -(lm * ep - lp * em) / (lp - lm) * s0.theta[i];
        const C u = -C(0, 1) * (p.gamma_star() + p.kappa_star() * r2) * (ep - em) / (lp - lm) * xi * s0.theta[i];
        expect += std::norm(th) + std::norm(u);
      }
      const double got = spectral_l2(s);
      CHECK(std::abs(got - std::sqrt(expect)) < 1e-10 * std::sqrt(expect));
    }
  }

  TEST_CASE("semigroup property") {
    const Grid g(3, 12.0, 16);
    std::mt19937_64 rng(2);
    const SpectralState s = random_state(g, rng, 6, 0.2, 0.2);
    const SpectralState a = apply_semigroup(0.3, apply_semigroup(0.45, s, g, params()), g, params());
    const SpectralState b = apply_semigroup(0.75, s, g, params());
    CHECK(rel_l2_diff(a, b) < 1e-12);
    CHECK(a.time == doctest::Approx(0.75));
  }

  TEST_CASE("non-Hermitian input is rejected") {
    const Grid g(1, 1.0, 8);
    SpectralState s = SpectralState::zeros(g);
    s.theta[1] = C(0.0, 1.0);
    CHECK_THROWS_AS(apply_semigroup(1.0, s, g, params()), Error);
  }

  TEST_CASE("generator matches the derivative of the flow") {
    const Grid g(2, 8.0, 16);
    std::mt19937_64 rng(4);
    const SpectralState s = random_state(g, rng, 4, 0.1, 0.1);
    const SpectralState a = apply_generator(g, s, params());
    const double h = 1e-6;
    const SpectralState fwd = apply_semigroup(h, s, g, params());
    const SpectralState& bwd = s;
    SpectralState diff = s;
    for (std::size_t i = 0; i < g.size(); ++i) {
      diff.theta[i] = (fwd.theta[i] - bwd.theta[i]) / h;
      for (int k = 0; k < 2; ++k) diff.u[k][i] = (fwd.u[k][i] - bwd.u[k][i]) / h;
    }
    CHECK(rel_l2_diff(diff, a) < 1e-3);
  }

  TEST_CASE("split semigroup") {
    const Grid g(3, 10.0, 16);
    std::mt19937_64 rng(9);
    const SpectralState s = random_state(g, rng, 6, 0.1, 0.1);
    const CutoffProfile phi(1.0);
    const auto [lo, hi] = apply_split_semigroup(0.4, s, phi, g, params());
    const SpectralState full = apply_semigroup(0.4, s, g, params());
    SpectralState sum = lo;
    for (std::size_t i = 0; i < g.size(); ++i) {
      sum.theta[i] += hi.theta[i];
      for (int k = 0; k < 3; ++k) sum.u[k][i] += hi.u[k][i];
    }
    CHECK(rel_l2_diff(sum, full) < 1e-14);

    // band-limited below eps: nothing at high frequency
    const SpectralState narrow = random_state(g, rng, 1, 0.1, 0.1);
    // lattice |k| <= sqrt(3) keeps |xi| below 1.09
    const auto [lo2, hi2] = apply_split_semigroup(0.4, narrow, CutoffProfile(1.1), g, params());
    CHECK(spectral_l2(hi2) == 0.0);
    (void)lo2;
  }

  TEST_CASE("high-frequency part decays exponentially") {
    const Grid g(3, 10.0, 16);
    std::mt19937_64 rng(10);
    SpectralState s = random_state(g, rng, 7, 0.1, 0.1);
    const double eps = 0.5;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (std::sqrt(g.xi_norm_sq(i)) < 2 * eps) {
        s.theta[i] = 0.0;
        for (auto& c : s.u) c[i] = 0.0;
      }
    std::vector<double> ts, vs;
    for (int n = 1; n <= 10; ++n) {
      ts.push_back(0.5 * n);
      vs.push_back(spectral_l2(apply_split_semigroup(0.5 * n, s, CutoffProfile(eps), g, params()).second));
    }
    const SlopeFit fit = exponential_fit(ts, vs);
    // the slowest mode on the support bounds the rate from below
    double slowest = 1e300;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (std::sqrt(g.xi_norm_sq(i)) >= 2 * eps) {
        const EigenPair e = eigenpair(g.xi_norm_sq(i), params());
        slowest = std::min({slowest, -e.lambda_plus.real(), -e.lambda_minus.real(),
                            params().alpha_star() * g.xi_norm_sq(i)});
      }
    CHECK(-fit.slope > 0.0);
    CHECK(-fit.slope >= 0.9 * slowest);
  }

  TEST_CASE("symbol cache reuses tables") {
    SymbolCache cache(4);
    const Grid g(2, 6.0, 8);
    const auto a = cache.get(g, SymbolKind::Exponential, 0.1, params());
    const auto b = cache.get(g, SymbolKind::Exponential, 0.1, params());
    const auto c = cache.get(g, SymbolKind::Phi1, 0.1, params());
    CHECK(a == b);
    CHECK(a != c);
    CHECK(cache.size() == 2);
    for (int n = 0; n < 6; ++n) cache.get(g, SymbolKind::Exponential, 0.2 + n, params());
    CHECK(cache.size() <= 4);
    const SymbolTable fresh = build_symbol_table(g, SymbolKind::Exponential, 0.1, params());
    REQUIRE(fresh.size() == a->size());
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      CHECK(fresh[i].a == (*a)[i].a);
      CHECK(fresh[i].c == (*a)[i].c);
      CHECK(fresh[i].sol == (*a)[i].sol);
    }
  }
}
